//! Seeded samplers for `P̄_p`, `P_p` and `Q_p`.
//!
//! Every Bernoulli trial draws one uniform `u ∈ [0, 1)` and accepts iff
//! `u < p(σ)`. Within a stage, candidates are drawn in canonical edge order,
//! so output depends only on the seed, the trial index and the map.

use std::collections::HashSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::hypergraph::{materialize, Edge, Hypergraph, VertexSet};
use crate::prob::{ModelDescriptor, ModelFamily, ProbabilityMap};

/// Identifies the generator and how streams are derived. Written at the
/// top of every batch so a batch can be reproduced exactly.
pub const GENERATOR_TAG: &str = "chacha8 rand_chacha=0.3 seed_from_u64+set_stream(trial) v1";

/// A single-owner stream of uniform draws.
pub struct SampleStream {
    seed: u64,
    trial: u64,
    counter: u64,
    rng: ChaCha8Rng,
}

impl SampleStream {
    pub fn new(seed: u64) -> Self {
        Self::for_trial(seed, 0)
    }

    /// The independent stream for replicate `trial` of a batch.
    pub fn for_trial(seed: u64, trial: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial);
        Self { seed, trial, counter: 0, rng }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn trial(&self) -> u64 {
        self.trial
    }

    /// Number of uniforms drawn so far.
    pub fn counter(&self) -> u64 {
        self.counter
    }

    pub fn uniform(&mut self) -> f64 {
        self.counter += 1;
        self.rng.gen::<f64>()
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.uniform() < p
    }
}

impl fmt::Debug for SampleStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SampleStream")
            .field("seed", &self.seed)
            .field("trial", &self.trial)
            .field("counter", &self.counter)
            .finish()
    }
}

/// `H ∼ P̄_p`: one draw per edge of `Δ[V]`.
///
/// # Panics
/// If the vertex set is too large to enumerate `Δ[V]`.
pub fn sample_hypergraph(p: &ProbabilityMap, stream: &mut SampleStream) -> Hypergraph {
    let vertices = p.vertices();
    let edges = materialize(vertices)
        .into_iter()
        .filter(|&e| stream.bernoulli(p.evaluate(e)))
        .collect();
    Hypergraph::from_sorted_unchecked(vertices.clone(), edges)
}

/// `K ∼ P_p`, built skeleton by skeleton: singletons first, then at each
/// cardinality every external face of what has been accepted so far.
pub fn sample_complex(p: &ProbabilityMap, stream: &mut SampleStream) -> Hypergraph {
    let vertices = p.vertices();
    let mut accepted: HashSet<u64> = HashSet::new();
    let mut out = Vec::new();
    let mut layer: Vec<Edge> = (0..vertices.len())
        .map(|i| Edge::from_bits_unchecked(1 << i))
        .filter(|&e| stream.bernoulli(p.evaluate(e)))
        .collect();
    while !layer.is_empty() {
        accepted.extend(layer.iter().map(|e| e.bits()));
        let mut candidates: Vec<Edge> = layer
            .iter()
            .flat_map(|e| e.cofacets(vertices))
            .filter(|c| c.facets().all(|f| accepted.contains(&f.bits())))
            .collect();
        candidates.sort_unstable();
        candidates.dedup();
        out.append(&mut layer);
        layer = candidates
            .into_iter()
            .filter(|&e| stream.bernoulli(p.evaluate(e)))
            .collect();
    }
    Hypergraph::from_sorted_unchecked(vertices.clone(), out)
}

/// `L ∼ Q_p`, built top-down: `V` first, then at each lower cardinality
/// every co-external face of what has been accepted so far.
pub fn sample_indep(p: &ProbabilityMap, stream: &mut SampleStream) -> Hypergraph {
    let vertices = p.vertices();
    let top = Edge::from_bits_unchecked(vertices.full_mask());
    let mut accepted: HashSet<u64> = HashSet::new();
    let mut layers: Vec<Vec<Edge>> = Vec::new();
    let mut layer: Vec<Edge> = Some(top).filter(|&e| stream.bernoulli(p.evaluate(e))).into_iter().collect();
    while !layer.is_empty() {
        accepted.extend(layer.iter().map(|e| e.bits()));
        let mut candidates: Vec<Edge> = layer
            .iter()
            .flat_map(|e| e.facets())
            .filter(|c| c.cofacets(vertices).all(|f| accepted.contains(&f.bits())))
            .collect();
        candidates.sort_unstable();
        candidates.dedup();
        layers.push(std::mem::take(&mut layer));
        layer = candidates
            .into_iter()
            .filter(|&e| stream.bernoulli(p.evaluate(e)))
            .collect();
    }
    let edges = layers.into_iter().rev().flatten().collect();
    Hypergraph::from_sorted_unchecked(vertices.clone(), edges)
}

/// Draws from whichever law `model` names.
pub fn sample_model(model: &ModelDescriptor, stream: &mut SampleStream) -> Hypergraph {
    match model.family {
        ModelFamily::PBar => sample_hypergraph(&model.map, stream),
        ModelFamily::P => sample_complex(&model.map, stream),
        ModelFamily::Q => sample_indep(&model.map, stream),
    }
}

/// What produced a sample.
#[derive(Clone, Debug)]
pub enum Descriptor {
    Model(ModelDescriptor),
    /// An algebra expression (compact rendering) with one `P̄` map per leaf.
    Expr { expr: String, leaf_maps: Vec<ProbabilityMap> },
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Descriptor::Model(m) => write!(f, "{m}"),
            Descriptor::Expr { expr, leaf_maps } => {
                let maps: Vec<String> = leaf_maps.iter().map(|m| m.to_string()).collect();
                write!(f, "{expr}@{}", maps.join(";"))
            }
        }
    }
}

/// A hypergraph together with the law and stream that produced it.
#[derive(Clone, Debug)]
pub struct SampledObject {
    pub hypergraph: Hypergraph,
    pub descriptor: Descriptor,
    pub seed: u64,
    pub trial: u64,
}

impl SampledObject {
    pub fn vertices(&self) -> &VertexSet {
        self.hypergraph.vertices()
    }

    /// `# seed=<n> model=<desc> trial=<i>`.
    pub fn manifest(&self) -> String {
        format!("# seed={} model={} trial={}", self.seed, self.descriptor, self.trial)
    }

    /// Manifest line followed by the serialized hypergraph.
    pub fn to_record(&self) -> String {
        format!("{}\n{}", self.manifest(), self.hypergraph)
    }
}

/// `trials` independent samples, trial `i` using stream `(seed, i)`.
/// Output is identical for any thread count.
pub fn sample_batch(model: &ModelDescriptor, seed: u64, trials: u64) -> Vec<SampledObject> {
    (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut stream = SampleStream::for_trial(seed, trial);
            SampledObject {
                hypergraph: sample_model(model, &mut stream),
                descriptor: Descriptor::Model(model.clone()),
                seed,
                trial,
            }
        })
        .collect()
}

/// The generator tag line that opens a batch.
pub fn batch_header() -> String {
    format!("# generator: {GENERATOR_TAG}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::HypergraphClass;

    fn v(n: usize) -> VertexSet {
        VertexSet::numbered("v", n).unwrap()
    }

    fn constant(n: usize, c: f64) -> ProbabilityMap {
        ProbabilityMap::constant(v(n), c).unwrap()
    }

    #[test]
    fn degenerate_maps() {
        let mut s = SampleStream::new(1);
        let full = Hypergraph::full(v(4));
        assert_eq!(sample_hypergraph(&constant(4, 1.0), &mut s), full);
        assert_eq!(sample_complex(&constant(4, 1.0), &mut s), full);
        assert_eq!(sample_indep(&constant(4, 1.0), &mut s), full);
        assert!(sample_hypergraph(&constant(4, 0.0), &mut s).is_empty());
        let no_vertices = ProbabilityMap::per_dimension(v(4), vec![0.0, 1.0, 1.0, 1.0]).unwrap();
        assert!(sample_complex(&no_vertices, &mut s).is_empty());
        let no_top = ProbabilityMap::per_dimension(v(4), vec![1.0, 1.0, 1.0, 0.0]).unwrap();
        assert!(sample_indep(&no_top, &mut s).is_empty());
    }

    #[test]
    fn same_seed_same_output() {
        let p = ProbabilityMap::random_table(v(4), 2).unwrap();
        for f in [sample_hypergraph, sample_complex, sample_indep] {
            let a = f(&p, &mut SampleStream::for_trial(9, 3));
            let b = f(&p, &mut SampleStream::for_trial(9, 3));
            assert_eq!(a, b);
        }
        let a = sample_hypergraph(&p, &mut SampleStream::for_trial(9, 3));
        let differs = (0..20).any(|t| sample_hypergraph(&p, &mut SampleStream::for_trial(9, t)) != a);
        assert!(differs);
    }

    #[test]
    fn classes_hold() {
        let p = constant(6, 0.7);
        for trial in 0..200 {
            let mut s = SampleStream::for_trial(5, trial);
            assert!(sample_complex(&p, &mut s).classify().is_complex());
            let l = sample_indep(&p, &mut s);
            assert!(matches!(l.classify(), HypergraphClass::Independence | HypergraphClass::Both));
        }
    }

    #[test]
    fn complex_sampler_draws_only_external_faces() {
        // p(singletons) = 1 and p(pairs) = 0: exactly 3 singleton draws and
        // 3 pair draws, nothing for the triple.
        let p = ProbabilityMap::per_dimension(v(3), vec![1.0, 0.0, 1.0]).unwrap();
        let mut s = SampleStream::new(0);
        let k = sample_complex(&p, &mut s);
        assert_eq!(k.len(), 3);
        assert_eq!(s.counter(), 6);
    }

    #[test]
    fn batch_is_ordered_and_tagged() {
        let model = ModelDescriptor::new(ModelFamily::P, constant(3, 0.5));
        let batch = sample_batch(&model, 7, 4);
        assert_eq!(batch.iter().map(|o| o.trial).collect::<Vec<_>>(), [0, 1, 2, 3]);
        assert_eq!(batch[2].manifest(), "# seed=7 model=p[const:0.5] trial=2");
        let mut s = SampleStream::for_trial(7, 2);
        assert_eq!(batch[2].hypergraph, sample_complex(&model.map, &mut s));
        assert!(batch_header().contains("chacha8"));
    }
}
