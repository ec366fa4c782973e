//! Hypergraphs on a finite ordered vertex set and the deterministic operators
//! acting on them: complement, the four closure operators, external faces,
//! extremal edges, set combination, join, box product and vertex maps.
//!
//! A [`Hypergraph`] is a value: every operator returns a new one and never
//! mutates its inputs.

mod binary;
mod morphism;
mod ops;
mod text;
mod vertex;

use std::collections::HashSet;

pub use binary::{box_product, combine, join, SetOp};
pub use morphism::{apply_vertex_map, VertexMap};
pub use ops::{
    assoc_complex, assoc_indep, co_external_faces, complement, external_faces, extremal_edges,
    lower_complex, lower_indep, Extremal, UnaryOp,
};
pub use text::{parse_records, Record};
pub use vertex::{canonical_edges, Edge, VertexSet, MAX_VERTICES};

pub(crate) use text::parse_edge;
pub(crate) use vertex::{low_bits, split_top_level};

use crate::error::{Error, Result};

/// Operators that enumerate `Δ[V]` refuse vertex sets larger than this.
pub const MATERIALIZE_LIMIT: usize = 24;

/// A set of hyperedges over a [`VertexSet`], kept in canonical edge order.
#[derive(Clone, PartialEq, Eq)]
pub struct Hypergraph {
    vertices: VertexSet,
    edges: Vec<Edge>,
}

/// Closure class of a hypergraph. `∅` and `Δ[V]` are `Both`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HypergraphClass {
    Complex,
    Independence,
    Both,
    Neither,
}

impl HypergraphClass {
    pub fn is_complex(self) -> bool {
        matches!(self, HypergraphClass::Complex | HypergraphClass::Both)
    }

    pub fn is_independence(self) -> bool {
        matches!(self, HypergraphClass::Independence | HypergraphClass::Both)
    }

    pub fn name(self) -> &'static str {
        match self {
            HypergraphClass::Complex => "complex",
            HypergraphClass::Independence => "independence",
            HypergraphClass::Both => "both",
            HypergraphClass::Neither => "neither",
        }
    }
}

impl Hypergraph {
    /// Builds a hypergraph from arbitrary edges; duplicates collapse.
    pub fn new<I: IntoIterator<Item = Edge>>(vertices: VertexSet, edges: I) -> Result<Self> {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        if let Some(bad) = edges.iter().find(|e| !e.fits(&vertices)) {
            return Err(Error::InvalidEdge(format!(
                "{bad:?} does not fit a {}-vertex set",
                vertices.len()
            )));
        }
        edges.sort_unstable();
        edges.dedup();
        Ok(Self { vertices, edges })
    }

    /// Caller guarantees the edges fit, are sorted canonically and distinct.
    pub(crate) fn from_sorted_unchecked(vertices: VertexSet, edges: Vec<Edge>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(edges.iter().all(|e| e.fits(&vertices)));
        Self { vertices, edges }
    }

    pub(crate) fn from_unsorted_unchecked(vertices: VertexSet, mut edges: Vec<Edge>) -> Self {
        edges.sort_unstable();
        edges.dedup();
        Self::from_sorted_unchecked(vertices, edges)
    }

    /// Builds a hypergraph from edges given as label lists.
    pub fn from_labels<I, J, S>(vertices: &VertexSet, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = J>,
        J: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut out = Vec::new();
        for edge in edges {
            let mut bits = 0u64;
            for label in edge {
                let label = label.as_ref();
                let p = vertices
                    .position(label)
                    .ok_or_else(|| Error::InvalidEdge(format!("unknown vertex `{label}`")))?;
                bits |= 1 << p;
            }
            out.push(Edge::new(bits)?);
        }
        Self::new(vertices.clone(), out)
    }

    pub fn empty(vertices: VertexSet) -> Self {
        Self { vertices, edges: Vec::new() }
    }

    /// `Δ[V]`, every nonempty subset of the vertex set.
    ///
    /// # Panics
    /// If the vertex set has more than [`MATERIALIZE_LIMIT`] vertices.
    pub fn full(vertices: VertexSet) -> Self {
        let edges = materialize(&vertices);
        Self { vertices, edges }
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, edge: Edge) -> bool {
        self.edges.binary_search(&edge).is_ok()
    }

    /// Edge-set inclusion; vertex sets must also match.
    pub fn is_subset_of(&self, other: &Hypergraph) -> bool {
        self.vertices == other.vertices && self.edges.iter().all(|&e| other.contains(e))
    }

    pub fn is_complex(&self) -> bool {
        let set = self.edge_set();
        self.edges
            .iter()
            .all(|e| e.facets().all(|f| set.contains(&f.bits())))
    }

    pub fn is_independence(&self) -> bool {
        let set = self.edge_set();
        self.edges
            .iter()
            .all(|e| e.cofacets(&self.vertices).all(|f| set.contains(&f.bits())))
    }

    pub fn classify(&self) -> HypergraphClass {
        match (self.is_complex(), self.is_independence()) {
            (true, true) => HypergraphClass::Both,
            (true, false) => HypergraphClass::Complex,
            (false, true) => HypergraphClass::Independence,
            (false, false) => HypergraphClass::Neither,
        }
    }

    /// Same edges with every label replaced according to `vertices`, which
    /// must have the same length.
    pub fn relabel(&self, vertices: VertexSet) -> Result<Hypergraph> {
        if vertices.len() != self.vertices.len() {
            return Err(Error::VertexSetMismatch {
                left: self.vertices.to_string(),
                right: vertices.to_string(),
            });
        }
        Ok(Self { vertices, edges: self.edges.clone() })
    }

    /// Edges as sorted label sets, independent of vertex order. Used to
    /// compare hypergraphs whose vertex sets hold the same labels in
    /// different orders.
    pub fn label_sets(&self) -> Vec<Vec<String>> {
        let mut out: Vec<Vec<String>> = self
            .edges
            .iter()
            .map(|e| {
                let mut labels: Vec<String> =
                    e.positions().map(|p| self.vertices.label(p).to_string()).collect();
                labels.sort();
                labels
            })
            .collect();
        out.sort();
        out
    }

    pub(crate) fn edge_set(&self) -> HashSet<u64> {
        self.edges.iter().map(|e| e.bits()).collect()
    }
}

impl std::fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rendered: Vec<String> = self
            .edges
            .iter()
            .map(|e| format!("{{{}}}", e.render(&self.vertices)))
            .collect();
        write!(f, "{{{}}} on {:?}", rendered.join(", "), self.vertices)
    }
}

pub(crate) fn materialize(vertices: &VertexSet) -> Vec<Edge> {
    assert!(
        vertices.len() <= MATERIALIZE_LIMIT,
        "cannot materialize Δ[V] for {} vertices",
        vertices.len()
    );
    canonical_edges(vertices.len()).expect("within limit")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> VertexSet {
        VertexSet::new(["a", "b"]).unwrap()
    }

    #[test]
    fn classify_examples() {
        let full = Hypergraph::from_labels(&ab(), [vec!["a"], vec!["b"], vec!["a", "b"]]).unwrap();
        assert_eq!(full.classify(), HypergraphClass::Both);
        let indep = Hypergraph::from_labels(&ab(), [vec!["a"], vec!["a", "b"]]).unwrap();
        assert_eq!(indep.classify(), HypergraphClass::Independence);
        let complex = Hypergraph::from_labels(&ab(), [vec!["a"], vec!["b"]]).unwrap();
        assert_eq!(complex.classify(), HypergraphClass::Complex);
        assert_eq!(Hypergraph::empty(ab()).classify(), HypergraphClass::Both);
        let top = Hypergraph::from_labels(&ab(), [vec!["a", "b"]]).unwrap();
        assert_eq!(top.classify(), HypergraphClass::Independence);
        let vs = VertexSet::new(["a", "b", "c"]).unwrap();
        let neither = Hypergraph::from_labels(&vs, [vec!["a", "b"]]).unwrap();
        assert_eq!(neither.classify(), HypergraphClass::Neither);
    }

    #[test]
    fn new_dedups_and_sorts() {
        let vs = ab();
        let h = Hypergraph::new(
            vs.clone(),
            [Edge::new(0b11).unwrap(), Edge::new(0b01).unwrap(), Edge::new(0b11).unwrap()],
        )
        .unwrap();
        assert_eq!(h.edges(), &[Edge::new(0b01).unwrap(), Edge::new(0b11).unwrap()]);
        assert!(Hypergraph::new(vs, [Edge::new(0b100).unwrap()]).is_err());
        assert!(Hypergraph::from_labels(&ab(), [vec!["z"]]).is_err());
    }

    #[test]
    fn full_has_all_subsets() {
        let h = Hypergraph::full(VertexSet::numbered("v", 4).unwrap());
        assert_eq!(h.len(), 15);
    }
}
