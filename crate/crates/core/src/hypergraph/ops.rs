use std::collections::HashSet;
use std::fmt;

use super::{materialize, Edge, Hypergraph};
use crate::error::{Error, Result};

/// The five unary operators of the map algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnaryOp {
    /// `γ`: complement in `Δ[V]`.
    Complement,
    /// `Δ`: smallest simplicial complex containing the hypergraph.
    AssocComplex,
    /// `δ`: largest simplicial complex contained in the hypergraph.
    LowerComplex,
    /// `Δ̄`: smallest independence hypergraph containing the hypergraph.
    AssocIndep,
    /// `δ̄`: largest independence hypergraph contained in the hypergraph.
    LowerIndep,
}

impl UnaryOp {
    pub const ALL: [UnaryOp; 5] = [
        UnaryOp::Complement,
        UnaryOp::AssocComplex,
        UnaryOp::LowerComplex,
        UnaryOp::AssocIndep,
        UnaryOp::LowerIndep,
    ];

    pub fn apply(self, h: &Hypergraph) -> Hypergraph {
        match self {
            UnaryOp::Complement => complement(h),
            UnaryOp::AssocComplex => assoc_complex(h),
            UnaryOp::LowerComplex => lower_complex(h),
            UnaryOp::AssocIndep => assoc_indep(h),
            UnaryOp::LowerIndep => lower_indep(h),
        }
    }

    /// Name in the expression language.
    pub fn keyword(self) -> &'static str {
        match self {
            UnaryOp::Complement => "comp",
            UnaryOp::AssocComplex => "up",
            UnaryOp::LowerComplex => "down",
            UnaryOp::AssocIndep => "iup",
            UnaryOp::LowerIndep => "idown",
        }
    }

    pub fn from_keyword(word: &str) -> Option<UnaryOp> {
        UnaryOp::ALL.into_iter().find(|op| op.keyword() == word)
    }

    /// Whether the output may have as many as `2^|V|` edges regardless of
    /// the input size.
    pub fn materializes(self) -> bool {
        matches!(
            self,
            UnaryOp::Complement | UnaryOp::AssocComplex | UnaryOp::AssocIndep
        )
    }
}

impl fmt::Display for UnaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnaryOp::Complement => "γ",
            UnaryOp::AssocComplex => "Δ",
            UnaryOp::LowerComplex => "δ",
            UnaryOp::AssocIndep => "Δ̄",
            UnaryOp::LowerIndep => "δ̄",
        })
    }
}

/// `Δ[V] ∖ H`.
///
/// # Panics
/// If the vertex set exceeds [`super::MATERIALIZE_LIMIT`].
pub fn complement(h: &Hypergraph) -> Hypergraph {
    let mut present = h.edges().iter().peekable();
    let mut out = Vec::new();
    for e in materialize(h.vertices()) {
        if present.peek() == Some(&&e) {
            present.next();
        } else {
            out.push(e);
        }
    }
    Hypergraph::from_sorted_unchecked(h.vertices().clone(), out)
}

/// All nonempty subsets of edges of `h`.
pub fn assoc_complex(h: &Hypergraph) -> Hypergraph {
    let mut seen: HashSet<u64> = h.edges().iter().map(|e| e.bits()).collect();
    let mut stack: Vec<Edge> = h.edges().to_vec();
    while let Some(e) = stack.pop() {
        for f in e.facets() {
            if seen.insert(f.bits()) {
                stack.push(f);
            }
        }
    }
    Hypergraph::from_unsorted_unchecked(
        h.vertices().clone(),
        seen.into_iter().map(Edge::from_bits_unchecked).collect(),
    )
}

/// Edges of `h` all of whose nonempty subsets lie in `h`.
pub fn lower_complex(h: &Hypergraph) -> Hypergraph {
    // Ascending cardinality: each facet has been decided before its cofaces.
    let mut kept: HashSet<u64> = HashSet::new();
    let mut out = Vec::new();
    for &e in h.edges() {
        if e.facets().all(|f| kept.contains(&f.bits())) {
            kept.insert(e.bits());
            out.push(e);
        }
    }
    Hypergraph::from_sorted_unchecked(h.vertices().clone(), out)
}

/// All supersets (within `V`) of edges of `h`.
pub fn assoc_indep(h: &Hypergraph) -> Hypergraph {
    let vertices = h.vertices();
    let mut seen: HashSet<u64> = h.edges().iter().map(|e| e.bits()).collect();
    let mut stack: Vec<Edge> = h.edges().to_vec();
    while let Some(e) = stack.pop() {
        for f in e.cofacets(vertices) {
            if seen.insert(f.bits()) {
                stack.push(f);
            }
        }
    }
    Hypergraph::from_unsorted_unchecked(
        vertices.clone(),
        seen.into_iter().map(Edge::from_bits_unchecked).collect(),
    )
}

/// Edges of `h` all of whose supersets within `V` lie in `h`.
pub fn lower_indep(h: &Hypergraph) -> Hypergraph {
    let vertices = h.vertices();
    let mut kept: HashSet<u64> = HashSet::new();
    let mut out = Vec::new();
    for &e in h.edges().iter().rev() {
        if e.cofacets(vertices).all(|f| kept.contains(&f.bits())) {
            kept.insert(e.bits());
            out.push(e);
        }
    }
    out.reverse();
    Hypergraph::from_sorted_unchecked(vertices.clone(), out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Extremal {
    Maximal,
    Minimal,
}

/// `max(H)` or `min(H)`: edges with no strict superset (subset) in `h`.
pub fn extremal_edges(h: &Hypergraph, mode: Extremal) -> Vec<Edge> {
    let edges = h.edges();
    edges
        .iter()
        .copied()
        .filter(|&e| match mode {
            Extremal::Maximal => !edges.iter().any(|&t| e.is_strict_subset_of(t)),
            Extremal::Minimal => !edges.iter().any(|&t| t.is_strict_subset_of(e)),
        })
        .collect()
}

/// `E(K)`: missing edges all of whose nonempty proper subsets lie in `k`.
pub fn external_faces(k: &Hypergraph) -> Result<Vec<Edge>> {
    if !k.is_complex() {
        return Err(Error::WrongClass { expected: "a simplicial complex" });
    }
    let set = k.edge_set();
    let is_external = |e: Edge| !set.contains(&e.bits()) && e.facets().all(|f| set.contains(&f.bits()));
    let mut out: Vec<Edge> = (0..k.vertices().len())
        .map(|p| Edge::from_bits_unchecked(1 << p))
        .filter(|&e| is_external(e))
        .collect();
    for &e in k.edges() {
        out.extend(e.cofacets(k.vertices()).filter(|&c| is_external(c)));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// `Ē(L)`: missing edges all of whose proper supersets within `V` lie in `l`.
pub fn co_external_faces(l: &Hypergraph) -> Result<Vec<Edge>> {
    if !l.is_independence() {
        return Err(Error::WrongClass { expected: "an independence hypergraph" });
    }
    let vertices = l.vertices();
    let set = l.edge_set();
    let is_co_external =
        |e: Edge| !set.contains(&e.bits()) && e.cofacets(vertices).all(|f| set.contains(&f.bits()));
    let top = Edge::from_bits_unchecked(vertices.full_mask());
    let mut out: Vec<Edge> = Some(top).filter(|&e| is_co_external(e)).into_iter().collect();
    for &e in l.edges() {
        out.extend(e.facets().filter(|&f| is_co_external(f)));
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::VertexSet;

    fn vs(labels: &[&str]) -> VertexSet {
        VertexSet::new(labels.iter().copied()).unwrap()
    }

    fn hg(v: &VertexSet, edges: &[&[&str]]) -> Hypergraph {
        Hypergraph::from_labels(v, edges.iter().map(|e| e.iter().copied())).unwrap()
    }

    fn edges(v: &VertexSet, edges: &[&[&str]]) -> Vec<Edge> {
        hg(v, edges).edges().to_vec()
    }

    #[test]
    fn complement_examples() {
        let v = vs(&["a", "b"]);
        assert_eq!(
            complement(&Hypergraph::empty(v.clone())),
            hg(&v, &[&["a"], &["b"], &["a", "b"]])
        );
        assert_eq!(complement(&hg(&v, &[&["a"], &["a", "b"]])), hg(&v, &[&["b"]]));
        let h = hg(&v, &[&["a"], &["a", "b"]]);
        assert_eq!(complement(&complement(&h)), h);
    }

    #[test]
    fn closures_on_full_and_empty() {
        let v = vs(&["a", "b", "c"]);
        let full = Hypergraph::full(v.clone());
        let empty = Hypergraph::empty(v);
        for op in UnaryOp::ALL.into_iter().filter(|&op| op != UnaryOp::Complement) {
            assert_eq!(op.apply(&full), full, "{op}");
            assert_eq!(op.apply(&empty), empty, "{op}");
        }
    }

    #[test]
    fn extremal_examples() {
        let v = vs(&["a", "b"]);
        let h = hg(&v, &[&["a"], &["a", "b"]]);
        assert_eq!(extremal_edges(&h, Extremal::Maximal), edges(&v, &[&["a", "b"]]));
        assert_eq!(extremal_edges(&h, Extremal::Minimal), edges(&v, &[&["a"]]));
        let empty = Hypergraph::empty(v);
        assert!(extremal_edges(&empty, Extremal::Maximal).is_empty());
        assert!(extremal_edges(&empty, Extremal::Minimal).is_empty());
    }

    #[test]
    fn external_face_examples() {
        let v = vs(&["a", "b"]);
        assert_eq!(
            external_faces(&Hypergraph::empty(v.clone())).unwrap(),
            edges(&v, &[&["a"], &["b"]])
        );
        assert_eq!(
            external_faces(&hg(&v, &[&["a"], &["b"]])).unwrap(),
            edges(&v, &[&["a", "b"]])
        );
        assert!(external_faces(&Hypergraph::full(v.clone())).unwrap().is_empty());
        assert!(matches!(
            external_faces(&hg(&v, &[&["a", "b"]])),
            Err(Error::WrongClass { .. })
        ));
    }

    #[test]
    fn co_external_face_examples() {
        let v = vs(&["a", "b"]);
        assert_eq!(
            co_external_faces(&Hypergraph::empty(v.clone())).unwrap(),
            edges(&v, &[&["a", "b"]])
        );
        assert_eq!(
            co_external_faces(&hg(&v, &[&["a", "b"]])).unwrap(),
            edges(&v, &[&["a"], &["b"]])
        );
        assert!(co_external_faces(&Hypergraph::full(v.clone())).unwrap().is_empty());
        assert!(co_external_faces(&hg(&v, &[&["a"]])).is_err());
    }

    #[test]
    fn keywords_round_trip() {
        for op in UnaryOp::ALL {
            assert_eq!(UnaryOp::from_keyword(op.keyword()), Some(op));
        }
        assert_eq!(UnaryOp::from_keyword("up2"), None);
    }
}
