//! Parsing expressions, inferring their signature, evaluating them on
//! fixed inputs and sampling them with independent leaves.

use hypermap::algebra::{eval_expr, infer_signature, parse_expr, sample_expr};
use hypermap::prob::ProbabilityMap;
use hypermap::sampler::SampleStream;
use hypermap::{Hypergraph, VertexSet};

fn main() -> hypermap::Result<()> {
    let left = VertexSet::parse_list("a,b")?;
    let right = VertexSet::parse_list("x,y,z")?;
    let e = parse_expr("down(up($0) * iup($1)) | comp($2)")?;
    let union = left.disjoint_union(&right)?;
    let sets = [left.clone(), right.clone(), union.clone()];
    let sig = infer_signature(&e, &sets)?;
    println!("{e}\n  math: {}\n  signature: {sig:?}", e.render_math());

    let inputs = [
        Hypergraph::from_labels(&left, [vec!["a"]])?,
        Hypergraph::from_labels(&right, [vec!["x", "y"]])?,
        Hypergraph::full(union),
    ];
    print!("value on fixed inputs:\n{}", eval_expr(&e, &inputs)?);

    let maps: Vec<ProbabilityMap> =
        sets.iter().map(|v| ProbabilityMap::constant(v.clone(), 0.4)).collect::<hypermap::Result<_>>()?;
    for trial in 0..3 {
        let s = sample_expr(&e, &maps, &mut SampleStream::for_trial(99, trial))?;
        print!("{}", s.to_record());
    }
    Ok(())
}
