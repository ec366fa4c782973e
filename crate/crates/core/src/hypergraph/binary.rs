use super::{Edge, Hypergraph};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SetOp {
    Intersect,
    Union,
}

/// Edge-set intersection or union. Both operands must live on the same
/// vertex set (same labels in the same order).
pub fn combine(left: &Hypergraph, right: &Hypergraph, op: SetOp) -> Result<Hypergraph> {
    left.vertices().ensure_same(right.vertices())?;
    let (a, b) = (left.edges(), right.edges());
    let mut out = Vec::with_capacity(a.len().max(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                if op == SetOp::Union {
                    out.push(a[i]);
                }
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                if op == SetOp::Union {
                    out.push(b[j]);
                }
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    if op == SetOp::Union {
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
    }
    Ok(Hypergraph::from_sorted_unchecked(left.vertices().clone(), out))
}

/// `H ∗ H′ = {σ ∪ σ′} ∪ H ∪ H′` on the disjoint union, left labels first.
pub fn join(left: &Hypergraph, right: &Hypergraph) -> Result<Hypergraph> {
    let vertices = left.vertices().disjoint_union(right.vertices())?;
    let shift = left.vertices().len();
    let shifted: Vec<u64> = right.edges().iter().map(|e| e.bits() << shift).collect();
    let mut out = Vec::with_capacity(left.len() * right.len() + left.len() + right.len());
    out.extend_from_slice(left.edges());
    out.extend(shifted.iter().map(|&b| Edge::from_bits_unchecked(b)));
    for l in left.edges() {
        out.extend(shifted.iter().map(|&b| Edge::from_bits_unchecked(l.bits() | b)));
    }
    Ok(Hypergraph::from_unsorted_unchecked(vertices, out))
}

/// `H □ H′ = {σ □ σ′}` on `V × V′`, where vertex `(i, j)` sits at position
/// `i·|V′| + j`.
pub fn box_product(left: &Hypergraph, right: &Hypergraph) -> Result<Hypergraph> {
    let vertices = left.vertices().product(right.vertices())?;
    let width = right.vertices().len();
    let mut out = Vec::with_capacity(left.len() * right.len());
    for l in left.edges() {
        for r in right.edges() {
            let bits = l
                .positions()
                .fold(0u64, |acc, i| acc | r.bits() << (i * width));
            out.push(Edge::from_bits_unchecked(bits));
        }
    }
    Ok(Hypergraph::from_unsorted_unchecked(vertices, out))
}
