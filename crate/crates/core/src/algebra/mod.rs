//! The map algebra: words over the unary operators and `∩ ∪ ∗ □`, their
//! admissibility check, evaluation on hypergraphs, exact pushforward of
//! distributions, sampling, and the three generation pipelines.

mod expr;
mod pipeline;
mod pushforward;

pub use expr::{parse_expr, BinaryOp, Expr};
pub use pipeline::{build_pipeline, CrossOp, CrossStep, PipelineBlock, PipelineConfig, PipelineKind};
pub use pushforward::pushforward_expr;

use crate::error::{Error, Result};
use crate::hypergraph::{
    box_product, combine, join, Hypergraph, HypergraphClass, SetOp, UnaryOp, VertexSet,
    MATERIALIZE_LIMIT,
};
use crate::prob::ProbabilityMap;
use crate::sampler::{sample_hypergraph, Descriptor, SampleStream, SampledObject};

/// What the result of a word is guaranteed to be.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassBound {
    AnyHypergraph,
    Complex,
    Independence,
}

impl ClassBound {
    pub fn admits(self, class: HypergraphClass) -> bool {
        match self {
            ClassBound::AnyHypergraph => true,
            ClassBound::Complex => class.is_complex(),
            ClassBound::Independence => class.is_independence(),
        }
    }
}

/// Vertex sets and class bound of a word applied to given input vertex sets.
#[derive(Clone, Debug, PartialEq)]
pub struct Signature {
    pub leaf_vertex_sets: Vec<VertexSet>,
    pub result_vertex_set: VertexSet,
    pub result_class_bound: ClassBound,
}

/// Checks that every binary step of `e` is well defined on inputs over
/// `leaf_sets` and computes the result's vertex set and class bound.
pub fn infer_signature(e: &Expr, leaf_sets: &[VertexSet]) -> Result<Signature> {
    infer_with(e, leaf_sets, &mut |_, _| Ok(()))
}

/// Like [`infer_signature`], calling `visit` on every node with the vertex
/// set that node's value lives on.
fn infer_with(
    e: &Expr,
    leaf_sets: &[VertexSet],
    visit: &mut dyn FnMut(&Expr, &VertexSet) -> Result<()>,
) -> Result<Signature> {
    e.validate_slots()?;
    if leaf_sets.len() != e.leaf_count() {
        return Err(Error::ArityMismatch { expected: e.leaf_count(), got: leaf_sets.len() });
    }
    let (result_vertex_set, result_class_bound) = infer_node(e, leaf_sets, visit)?;
    Ok(Signature { leaf_vertex_sets: leaf_sets.to_vec(), result_vertex_set, result_class_bound })
}

fn infer_node(
    e: &Expr,
    leaf_sets: &[VertexSet],
    visit: &mut dyn FnMut(&Expr, &VertexSet) -> Result<()>,
) -> Result<(VertexSet, ClassBound)> {
    let (vertices, bound) = match e {
        Expr::Leaf(s) => (leaf_sets[*s].clone(), ClassBound::AnyHypergraph),
        Expr::Unary(op, c) => {
            let (v, inner) = infer_node(c, leaf_sets, visit)?;
            let bound = match op {
                UnaryOp::AssocComplex | UnaryOp::LowerComplex => ClassBound::Complex,
                UnaryOp::AssocIndep | UnaryOp::LowerIndep => ClassBound::Independence,
                UnaryOp::Complement => match inner {
                    ClassBound::Complex => ClassBound::Independence,
                    ClassBound::Independence => ClassBound::Complex,
                    ClassBound::AnyHypergraph => ClassBound::AnyHypergraph,
                },
            };
            (v, bound)
        }
        Expr::Binary(op, l, r) => {
            let (lv, lb) = infer_node(l, leaf_sets, visit)?;
            let (rv, rb) = infer_node(r, leaf_sets, visit)?;
            match op {
                BinaryOp::Intersect | BinaryOp::Union => {
                    lv.ensure_same(&rv)?;
                    (lv, if lb == rb { lb } else { ClassBound::AnyHypergraph })
                }
                BinaryOp::Join => {
                    let v = lv.disjoint_union(&rv)?;
                    // L ∗ L′ keeps L's edges, whose supersets meeting V′
                    // are missing, so only complexes are closed under ∗.
                    let bound = if lb == ClassBound::Complex && rb == ClassBound::Complex {
                        ClassBound::Complex
                    } else {
                        ClassBound::AnyHypergraph
                    };
                    (v, bound)
                }
                BinaryOp::Box => (lv.product(&rv)?, ClassBound::AnyHypergraph),
            }
        }
    };
    visit(e, &vertices)?;
    Ok((vertices, bound))
}

/// Applies `e` to `inputs`, slot `i` taking `inputs[i]`.
pub fn eval_expr(e: &Expr, inputs: &[Hypergraph]) -> Result<Hypergraph> {
    let sets: Vec<VertexSet> = inputs.iter().map(|h| h.vertices().clone()).collect();
    infer_with(e, &sets, &mut |node, v| match node {
        Expr::Unary(UnaryOp::Complement | UnaryOp::AssocIndep, _) if v.len() > MATERIALIZE_LIMIT => {
            Err(Error::TooLargeToMaterialize(v.len()))
        }
        _ => Ok(()),
    })?;
    Ok(eval_unchecked(e, inputs))
}

fn eval_unchecked(e: &Expr, inputs: &[Hypergraph]) -> Hypergraph {
    match e {
        Expr::Leaf(s) => inputs[*s].clone(),
        Expr::Unary(op, c) => op.apply(&eval_unchecked(c, inputs)),
        Expr::Binary(op, l, r) => {
            let (a, b) = (eval_unchecked(l, inputs), eval_unchecked(r, inputs));
            let out = match op {
                BinaryOp::Intersect => combine(&a, &b, SetOp::Intersect),
                BinaryOp::Union => combine(&a, &b, SetOp::Union),
                BinaryOp::Join => join(&a, &b),
                BinaryOp::Box => box_product(&a, &b),
            };
            out.expect("admissibility checked by infer_signature")
        }
    }
}

/// Draws each leaf from `P̄` with its map, in slot order from one stream,
/// then evaluates `e`.
pub fn sample_expr(
    e: &Expr,
    leaf_maps: &[ProbabilityMap],
    stream: &mut SampleStream,
) -> Result<SampledObject> {
    let sets: Vec<VertexSet> = leaf_maps.iter().map(|p| p.vertices().clone()).collect();
    infer_signature(e, &sets)?;
    if let Some(big) = sets.iter().find(|v| v.len() > MATERIALIZE_LIMIT) {
        return Err(Error::TooLargeToMaterialize(big.len()));
    }
    let inputs: Vec<Hypergraph> = leaf_maps.iter().map(|p| sample_hypergraph(p, stream)).collect();
    Ok(SampledObject {
        hypergraph: eval_expr(e, &inputs)?,
        descriptor: Descriptor::Expr { expr: e.render_compact(), leaf_maps: leaf_maps.to_vec() },
        seed: stream.seed(),
        trial: stream.trial(),
    })
}
