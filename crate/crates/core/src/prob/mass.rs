use super::ProbabilityMap;
use crate::error::{Error, Result};
use crate::hypergraph::{
    co_external_faces, complement, external_faces, extremal_edges, Edge, Extremal, Hypergraph,
    UnaryOp, MATERIALIZE_LIMIT,
};

fn check_domain(p: &ProbabilityMap, h: &Hypergraph) -> Result<()> {
    h.vertices().ensure_same(p.vertices())?;
    if h.vertices().len() > MATERIALIZE_LIMIT {
        return Err(Error::TooLargeToMaterialize(h.vertices().len()));
    }
    Ok(())
}

fn present(p: &ProbabilityMap, edges: &[Edge]) -> f64 {
    edges.iter().map(|&e| p.evaluate(e)).product()
}

fn absent(p: &ProbabilityMap, edges: &[Edge]) -> f64 {
    edges.iter().map(|&e| 1.0 - p.evaluate(e)).product()
}

/// `P̄_p(H) = ∏_{σ∈H} p(σ) ∏_{σ∉H} (1 − p(σ))`.
pub fn mass_hypergraph(p: &ProbabilityMap, h: &Hypergraph) -> Result<f64> {
    check_domain(p, h)?;
    Ok(present(p, h.edges()) * absent(p, complement(h).edges()))
}

/// `P_p(K) = ∏_{σ∈K} p(σ) ∏_{σ∈E(K)} (1 − p(σ))`.
pub fn mass_complex(p: &ProbabilityMap, k: &Hypergraph) -> Result<f64> {
    check_domain(p, k)?;
    let external = external_faces(k)?;
    Ok(present(p, k.edges()) * absent(p, &external))
}

/// `Q_p(L) = ∏_{σ∈L} p(σ) ∏_{σ∈Ē(L)} (1 − p(σ))`.
pub fn mass_indep(p: &ProbabilityMap, l: &Hypergraph) -> Result<f64> {
    check_domain(p, l)?;
    let co_external = co_external_faces(l)?;
    Ok(present(p, l.edges()) * absent(p, &co_external))
}

/// `(D op)(P̄_p)(target)` as a product formula:
///
/// | op | target | value |
/// |----|--------|-------|
/// | `γ` | any | `P̄_p(γH)` |
/// | `Δ` | complex `K` | `∏_{max K} p · ∏_{τ∉K} (1 − p)` |
/// | `Δ̄` | independence `L` | `∏_{min L} p · ∏_{τ∉L} (1 − p)` |
/// | `δ` | complex `K` | `∏_{min γK} (1 − p) · ∏_{K} p` |
/// | `δ̄` | independence `L` | `∏_{max γL} (1 − p) · ∏_{L} p` |
pub fn pushforward_closed_form(p: &ProbabilityMap, target: &Hypergraph, op: UnaryOp) -> Result<f64> {
    check_domain(p, target)?;
    let needs_complex = matches!(op, UnaryOp::AssocComplex | UnaryOp::LowerComplex);
    let needs_indep = matches!(op, UnaryOp::AssocIndep | UnaryOp::LowerIndep);
    if needs_complex && !target.is_complex() {
        return Err(Error::WrongClass { expected: "a simplicial complex" });
    }
    if needs_indep && !target.is_independence() {
        return Err(Error::WrongClass { expected: "an independence hypergraph" });
    }
    let gamma = complement(target);
    Ok(match op {
        UnaryOp::Complement => mass_hypergraph(p, &gamma)?,
        UnaryOp::AssocComplex => {
            present(p, &extremal_edges(target, Extremal::Maximal)) * absent(p, gamma.edges())
        }
        UnaryOp::AssocIndep => {
            present(p, &extremal_edges(target, Extremal::Minimal)) * absent(p, gamma.edges())
        }
        UnaryOp::LowerComplex => {
            absent(p, &extremal_edges(&gamma, Extremal::Minimal)) * present(p, target.edges())
        }
        UnaryOp::LowerIndep => {
            absent(p, &extremal_edges(&gamma, Extremal::Maximal)) * present(p, target.edges())
        }
    })
}
