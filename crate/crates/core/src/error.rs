use thiserror::Error;

/// Errors produced by every fallible operation in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid vertex set: {0}")]
    InvalidVertexSet(String),

    #[error("vertex set has {0} labels, at most 64 are supported")]
    TooManyVertices(usize),

    #[error("invalid hyperedge: {0}")]
    InvalidEdge(String),

    #[error("vertex sets differ: [{left}] vs [{right}]")]
    VertexSetMismatch { left: String, right: String },

    #[error("vertex sets share label `{0}`")]
    OverlappingLabels(String),

    #[error("hypergraph is not {expected}")]
    WrongClass { expected: &'static str },

    #[error("probability {0} outside [0, 1]")]
    ProbabilityOutOfRange(f64),

    #[error("probability table has no entry for edge {0}")]
    MapNotTotal(String),

    #[error("invalid probability spec `{spec}`: {reason}")]
    InvalidMapSpec { spec: String, reason: String },

    #[error("parse error at offset {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown operator `{0}`")]
    UnknownOperator(String),

    #[error("expression slots must be exactly $0..${}, {msg}", .expected.saturating_sub(1))]
    SlotNumbering { expected: usize, msg: String },

    #[error("expected {expected} inputs, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("format error on line {line}: {msg}")]
    Format { line: usize, msg: String },

    #[error("enumeration bound exceeded: |Δ[V]| = {edges} > {limit}")]
    BoundExceeded { edges: u64, limit: u32 },

    #[error("refusing to materialize all subsets of a {0}-vertex set")]
    TooLargeToMaterialize(usize),

    #[error("malformed pipeline: {0}")]
    Pipeline(String),

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
