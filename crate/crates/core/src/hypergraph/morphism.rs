use super::{Edge, Hypergraph, VertexSet};
use crate::error::{Error, Result};

/// A total map between vertex sets, given position-wise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexMap {
    domain: VertexSet,
    codomain: VertexSet,
    mapping: Vec<usize>,
}

impl VertexMap {
    pub fn new(domain: VertexSet, codomain: VertexSet, mapping: Vec<usize>) -> Result<Self> {
        if mapping.len() != domain.len() {
            return Err(Error::InvalidEdge(format!(
                "vertex map covers {} of {} domain vertices",
                mapping.len(),
                domain.len()
            )));
        }
        if let Some(&p) = mapping.iter().find(|&&p| p >= codomain.len()) {
            return Err(Error::InvalidEdge(format!(
                "vertex map image {p} outside a {}-vertex codomain",
                codomain.len()
            )));
        }
        Ok(Self { domain, codomain, mapping })
    }

    /// Builds a map from `(domain label, codomain label)` pairs.
    pub fn from_labels<'a, I>(domain: VertexSet, codomain: VertexSet, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut mapping = vec![usize::MAX; domain.len()];
        for (from, to) in pairs {
            let unknown = |l: &str| Error::InvalidEdge(format!("unknown vertex `{l}`"));
            let i = domain.position(from).ok_or_else(|| unknown(from))?;
            mapping[i] = codomain.position(to).ok_or_else(|| unknown(to))?;
        }
        Self::new(domain, codomain, mapping)
    }

    pub fn identity(vertices: VertexSet) -> Self {
        let mapping = (0..vertices.len()).collect();
        Self { domain: vertices.clone(), codomain: vertices, mapping }
    }

    pub fn domain(&self) -> &VertexSet {
        &self.domain
    }

    pub fn codomain(&self) -> &VertexSet {
        &self.codomain
    }

    pub fn image(&self, position: usize) -> usize {
        self.mapping[position]
    }

    pub fn apply_edge(&self, edge: Edge) -> Edge {
        let bits = edge.positions().fold(0u64, |acc, p| acc | 1 << self.mapping[p]);
        Edge::from_bits_unchecked(bits)
    }
}

/// `f(H) = { f(σ) | σ ∈ H }` on the codomain.
pub fn apply_vertex_map(f: &VertexMap, h: &Hypergraph) -> Result<Hypergraph> {
    f.domain.ensure_same(h.vertices())?;
    let images = h.edges().iter().map(|&e| f.apply_edge(e)).collect();
    Ok(Hypergraph::from_unsorted_unchecked(f.codomain.clone(), images))
}
