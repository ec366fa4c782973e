pub mod algebra;
pub mod cli;
pub mod error;
pub mod hypergraph;
pub mod prob;
pub mod sampler;
pub mod verify;

pub use error::{Error, Result};
pub use hypergraph::{Edge, Hypergraph, HypergraphClass, VertexSet};
