//! Random generation pipelines: each config is turned into one expression
//! whose leaves are drawn from the hypergraph law.

use hypermap::algebra::{build_pipeline, infer_signature, sample_expr, PipelineConfig, PipelineKind};
use hypermap::prob::ProbabilityMap;
use hypermap::sampler::SampleStream;

fn main() -> hypermap::Result<()> {
    for kind in PipelineKind::ALL {
        for seed in 0..3 {
            let cfg = PipelineConfig::random(kind, seed);
            let e = build_pipeline(&cfg)?;
            let sets = cfg.leaf_vertex_sets();
            let bound = infer_signature(&e, &sets)?.result_class_bound;
            let maps: Vec<ProbabilityMap> =
                sets.into_iter().map(|v| ProbabilityMap::constant(v, 0.5)).collect::<hypermap::Result<_>>()?;
            let s = sample_expr(&e, &maps, &mut SampleStream::new(seed))?;
            println!(
                "{kind} seed={seed}: {e}\n  bound {bound:?}, sample has {} vertices, {} edges, class {}",
                s.vertices().len(),
                s.hypergraph.len(),
                s.hypergraph.classify().name()
            );
        }
    }
    Ok(())
}
