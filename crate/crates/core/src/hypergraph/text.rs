//! Canonical text form:
//!
//! ```text
//! # vertices: a b c
//! a
//! a,b
//!
//! ```
//!
//! Edges are listed one per line in canonical order with members in vertex
//! order; a blank line ends the record.

use std::fmt;

use super::{split_top_level, Edge, Hypergraph, VertexSet};
use crate::error::{Error, Result};

const HEADER: &str = "# vertices:";

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{HEADER}")?;
        for label in self.vertices().labels() {
            write!(f, " {label}")?;
        }
        writeln!(f)?;
        for e in self.edges() {
            writeln!(f, "{}", e.render(self.vertices()))?;
        }
        writeln!(f)
    }
}

impl Hypergraph {
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// Parses exactly one record; comment lines before the header are
    /// ignored.
    pub fn parse(text: &str) -> Result<Hypergraph> {
        let mut records = parse_records(text)?;
        match records.len() {
            1 => Ok(records.pop().expect("one record").hypergraph),
            n => Err(Error::Format { line: 0, msg: format!("expected one hypergraph, found {n}") }),
        }
    }
}

/// One hypergraph plus the `#` comment lines that preceded its header,
/// such as sampler manifest lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Record {
    pub comments: Vec<String>,
    pub hypergraph: Hypergraph,
}

/// Parses a stream of serialized hypergraphs.
pub fn parse_records(text: &str) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    let mut comments = Vec::new();
    let mut current: Option<(VertexSet, Vec<Edge>)> = None;
    let mut finish = |current: &mut Option<(VertexSet, Vec<Edge>)>, comments: &mut Vec<String>| {
        if let Some((vertices, edges)) = current.take() {
            let hypergraph = Hypergraph::new(vertices, edges)?;
            out.push(Record { comments: std::mem::take(comments), hypergraph });
        }
        Ok::<(), Error>(())
    };
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if let Some(rest) = line.strip_prefix(HEADER) {
            finish(&mut current, &mut comments)?;
            let vertices = VertexSet::new(rest.split_whitespace())
                .map_err(|e| Error::Format { line: line_no, msg: e.to_string() })?;
            current = Some((vertices, Vec::new()));
        } else if line.starts_with('#') {
            finish(&mut current, &mut comments)?;
            comments.push(line.to_string());
        } else if line.is_empty() {
            finish(&mut current, &mut comments)?;
        } else if let Some((vertices, edges)) = current.as_mut() {
            edges.push(parse_edge(vertices, line).map_err(|msg| Error::Format { line: line_no, msg })?);
        } else {
            return Err(Error::Format {
                line: line_no,
                msg: "edge line outside a record (missing `# vertices:` header)".into(),
            });
        }
    }
    finish(&mut current, &mut comments)?;
    Ok(out)
}

pub(crate) fn parse_edge(vertices: &VertexSet, text: &str) -> std::result::Result<Edge, String> {
    let parts = split_top_level(text, ',').map_err(str::to_string)?;
    let mut bits = 0u64;
    for part in parts {
        let label = part.trim();
        let p = vertices
            .position(label)
            .ok_or_else(|| format!("unknown vertex `{label}`"))?;
        if bits & 1 << p != 0 {
            return Err(format!("vertex `{label}` repeated in edge"));
        }
        bits |= 1 << p;
    }
    Ok(Edge::from_bits_unchecked(bits))
}
