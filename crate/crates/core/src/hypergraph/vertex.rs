use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest vertex set an [`Edge`] bitset can address.
pub const MAX_VERTICES: usize = 64;

/// An ordered set of distinct vertex labels. The list position is the vertex
/// order, and edges refer to vertices by position.
#[derive(Clone)]
pub struct VertexSet {
    labels: Arc<[String]>,
}

impl VertexSet {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::InvalidVertexSet("no labels".into()));
        }
        if labels.len() > MAX_VERTICES {
            return Err(Error::TooManyVertices(labels.len()));
        }
        for (i, label) in labels.iter().enumerate() {
            validate_label(label)?;
            if labels[..i].contains(label) {
                return Err(Error::InvalidVertexSet(format!("duplicate label `{label}`")));
            }
        }
        Ok(Self { labels: labels.into() })
    }

    /// `n` vertices labelled `<prefix>0 .. <prefix>{n-1}`.
    pub fn numbered(prefix: &str, n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| format!("{prefix}{i}")))
    }

    /// Parses a comma-separated label list, e.g. `a,b,c`. Commas nested in
    /// parentheses belong to the label, so product labels like `(a,b)` work.
    pub fn parse_list(text: &str) -> Result<Self> {
        let parts = split_top_level(text.trim(), ',')
            .map_err(|msg| Error::InvalidVertexSet(msg.to_string()))?;
        Self::new(parts.into_iter().map(str::trim))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, position: usize) -> &str {
        &self.labels[position]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Bitset of every vertex, i.e. the top edge `V`.
    pub fn full_mask(&self) -> u64 {
        low_bits(self.len())
    }

    /// Number of hyperedges in `Δ[V]`, `2^|V| - 1`.
    pub fn full_edge_count(&self) -> u64 {
        if self.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    pub fn shared_label(&self, other: &VertexSet) -> Option<&str> {
        self.labels
            .iter()
            .find(|l| other.labels.contains(l))
            .map(String::as_str)
    }

    /// Disjoint union: all labels of `self` precede all labels of `other`.
    pub fn disjoint_union(&self, other: &VertexSet) -> Result<VertexSet> {
        if let Some(shared) = self.shared_label(other) {
            return Err(Error::OverlappingLabels(shared.to_string()));
        }
        Self::new(self.labels.iter().chain(other.labels.iter()).cloned())
    }

    /// Cartesian product with pair labels `(left,right)`, left-major order.
    pub fn product(&self, other: &VertexSet) -> Result<VertexSet> {
        let n = self.len() * other.len();
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let mut labels = Vec::with_capacity(n);
        for l in self.labels.iter() {
            for r in other.labels.iter() {
                labels.push(format!("({l},{r})"));
            }
        }
        Self::new(labels)
    }

    pub fn ensure_same(&self, other: &VertexSet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::VertexSetMismatch {
                left: self.labels.join(" "),
                right: other.labels.join(" "),
            })
        }
    }
}

impl PartialEq for VertexSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }
}

impl Eq for VertexSet {}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.labels.iter()).finish()
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.labels.join(","))
    }
}

fn validate_label(label: &str) -> Result<()> {
    let bad = |why: &str| Err(Error::InvalidVertexSet(format!("label `{label}` {why}")));
    if label.is_empty() {
        return bad("is empty");
    }
    if label.starts_with('#') {
        return bad("starts with `#`");
    }
    if label.chars().any(|c| c.is_whitespace() || c.is_control() || c == ';') {
        return bad("contains whitespace, a control character or `;`");
    }
    match split_top_level(label, ',') {
        Ok(parts) if parts.len() == 1 => Ok(()),
        Ok(_) => bad("has a comma outside parentheses"),
        Err(msg) => bad(msg),
    }
}

/// Splits on `sep` at parenthesis depth zero.
pub(crate) fn split_top_level(text: &str, sep: char) -> std::result::Result<Vec<&str>, &'static str> {
    let mut parts = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.checked_sub(1).ok_or("has unbalanced parentheses")?,
            c if c == sep && depth == 0 => {
                parts.push(&text[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err("has unbalanced parentheses");
    }
    parts.push(&text[start..]);
    Ok(parts)
}

pub(crate) fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A nonempty set of vertex positions, stored as a bitset.
///
/// Edges order canonically: by cardinality, then lexicographically on their
/// sorted position lists.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge(u64);

impl Edge {
    pub fn new(bits: u64) -> Result<Self> {
        if bits == 0 {
            Err(Error::InvalidEdge("empty edge".into()))
        } else {
            Ok(Edge(bits))
        }
    }

    /// Caller guarantees `bits != 0`.
    pub(crate) const fn from_bits_unchecked(bits: u64) -> Self {
        Edge(bits)
    }

    pub fn from_positions<I: IntoIterator<Item = usize>>(positions: I) -> Result<Self> {
        let mut bits = 0u64;
        for p in positions {
            if p >= MAX_VERTICES {
                return Err(Error::InvalidEdge(format!("position {p} out of range")));
            }
            bits |= 1 << p;
        }
        Edge::new(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn cardinality(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, position: usize) -> bool {
        position < 64 && self.0 >> position & 1 == 1
    }

    pub fn is_subset_of(self, other: Edge) -> bool {
        self.0 & other.0 == self.0
    }

    pub fn is_strict_subset_of(self, other: Edge) -> bool {
        self != other && self.is_subset_of(other)
    }

    pub fn union(self, other: Edge) -> Edge {
        Edge(self.0 | other.0)
    }

    pub fn fits(self, vertices: &VertexSet) -> bool {
        self.0 & !vertices.full_mask() == 0
    }

    /// Ascending vertex positions.
    pub fn positions(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let p = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(p)
            }
        })
    }

    /// Edges obtained by removing one vertex; empty for singletons.
    pub fn facets(self) -> impl Iterator<Item = Edge> {
        let bits = self.0;
        let single = bits.count_ones() == 1;
        self.positions()
            .filter(move |_| !single)
            .map(move |p| Edge(bits & !(1 << p)))
    }

    /// Edges obtained by adding one vertex of `vertices` not already present.
    pub fn cofacets(self, vertices: &VertexSet) -> impl Iterator<Item = Edge> {
        let bits = self.0;
        let missing = Edge(vertices.full_mask() & !bits);
        let missing_positions = if missing.0 == 0 { None } else { Some(missing.positions()) };
        missing_positions
            .into_iter()
            .flatten()
            .map(move |p| Edge(bits | 1 << p))
    }

    pub fn render(self, vertices: &VertexSet) -> String {
        let members: Vec<&str> = self.positions().map(|p| vertices.label(p)).collect();
        members.join(",")
    }
}

impl Ord for Edge {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cardinality().cmp(&other.cardinality()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 >> diff.trailing_zeros() & 1 == 1 {
                // The smallest differing position belongs to self.
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Edge {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.positions()).finish()
    }
}

/// Every edge of `Δ[V]` for an `n`-vertex set, in canonical order.
pub fn canonical_edges(n: usize) -> Result<Vec<Edge>> {
    if n > 26 {
        return Err(Error::TooLargeToMaterialize(n));
    }
    let mut edges: Vec<Edge> = (1..=low_bits(n)).map(Edge).collect();
    edges.sort_unstable();
    Ok(edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_cardinality_then_lexicographic() {
        let edges = canonical_edges(3).unwrap();
        let lists: Vec<Vec<usize>> = edges.iter().map(|e| e.positions().collect()).collect();
        assert_eq!(
            lists,
            vec![
                vec![0],
                vec![1],
                vec![2],
                vec![0, 1],
                vec![0, 2],
                vec![1, 2],
                vec![0, 1, 2]
            ]
        );
    }

    #[test]
    fn canonical_order_matches_sorted_position_lists() {
        let edges = canonical_edges(5).unwrap();
        let mut by_lists: Vec<(usize, Vec<usize>)> = edges
            .iter()
            .map(|e| (e.cardinality(), e.positions().collect()))
            .collect();
        let original = by_lists.clone();
        by_lists.sort();
        assert_eq!(by_lists, original);
    }

    #[test]
    fn rejects_bad_labels() {
        assert!(VertexSet::new(["a", "a"]).is_err());
        assert!(VertexSet::new(Vec::<String>::new()).is_err());
        assert!(VertexSet::new(["a b"]).is_err());
        assert!(VertexSet::new(["a,b"]).is_err());
        assert!(VertexSet::new(["(a,b"]).is_err());
        assert!(VertexSet::new(["#a"]).is_err());
        assert!(VertexSet::new(["(a,b)"]).is_ok());
        assert!(matches!(
            VertexSet::numbered("v", 65),
            Err(Error::TooManyVertices(65))
        ));
        assert!(VertexSet::numbered("v", 64).is_ok());
    }

    #[test]
    fn parse_list_respects_parentheses() {
        let vs = VertexSet::parse_list("(a,b),(a,c), x").unwrap();
        assert_eq!(vs.labels(), ["(a,b)", "(a,c)", "x"]);
    }

    #[test]
    fn product_is_left_major() {
        let l = VertexSet::new(["a", "b"]).unwrap();
        let r = VertexSet::new(["x", "y", "z"]).unwrap();
        let p = l.product(&r).unwrap();
        assert_eq!(p.labels(), ["(a,x)", "(a,y)", "(a,z)", "(b,x)", "(b,y)", "(b,z)"]);
        assert!(matches!(
            VertexSet::numbered("u", 9).unwrap().product(&VertexSet::numbered("w", 8).unwrap()),
            Err(Error::TooManyVertices(72))
        ));
    }

    #[test]
    fn facets_and_cofacets() {
        let vs = VertexSet::numbered("v", 3).unwrap();
        let e = Edge::from_positions([0, 2]).unwrap();
        let facets: Vec<u64> = e.facets().map(Edge::bits).collect();
        assert_eq!(facets, vec![0b100, 0b001]);
        let cof: Vec<u64> = e.cofacets(&vs).map(Edge::bits).collect();
        assert_eq!(cof, vec![0b111]);
        assert_eq!(Edge::from_positions([1]).unwrap().facets().count(), 0);
        assert_eq!(Edge::new(0b111).unwrap().cofacets(&vs).count(), 0);
    }
}
