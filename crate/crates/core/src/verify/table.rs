use std::fmt::Write as _;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::{infer_signature, sample_expr, Expr};
use crate::error::{Error, Result};
use crate::hypergraph::{canonical_edges, Edge, Hypergraph, HypergraphClass, VertexSet};
use crate::prob::{ModelDescriptor, ProbabilityMap};
use crate::sampler::{sample_model, SampleStream};

/// Largest `|Δ[V]|` for which hypergraphs are enumerated; `|V| ≤ 4`.
pub const ENUMERATION_LIMIT: u32 = 20;

/// Fails unless all `2^|Δ[V]|` hypergraphs on `vertices` can be enumerated.
pub fn check_bound(vertices: &VertexSet) -> Result<()> {
    let edges = vertices.full_edge_count();
    if edges > u64::from(ENUMERATION_LIMIT) {
        return Err(Error::BoundExceeded { edges, limit: ENUMERATION_LIMIT });
    }
    Ok(())
}

/// Shared indexing data: the canonical edges of `Δ[V]` and the inverse map
/// from edge bits to canonical position.
#[derive(Debug, PartialEq)]
struct Index {
    edges: Vec<Edge>,
    position: Vec<u8>,
}

impl Index {
    fn new(n: usize) -> Self {
        let edges = canonical_edges(n).expect("bounded vertex set");
        let mut position = vec![u8::MAX; 1 << n];
        for (i, e) in edges.iter().enumerate() {
            position[e.bits() as usize] = i as u8;
        }
        Self { edges, position }
    }
}

/// An exact probability mass function over all hypergraphs on a small
/// vertex set. Index bit `i` records whether the `i`-th canonical edge of
/// `Δ[V]` is present.
#[derive(Clone, Debug, PartialEq)]
pub struct DistributionTable {
    vertices: VertexSet,
    index: Arc<Index>,
    masses: Vec<f64>,
}

impl DistributionTable {
    pub fn zeros(vertices: VertexSet) -> Result<Self> {
        check_bound(&vertices)?;
        let index = Arc::new(Index::new(vertices.len()));
        let masses = vec![0.0; 1 << index.edges.len()];
        Ok(Self { vertices, index, masses })
    }

    pub fn from_masses(vertices: VertexSet, masses: Vec<f64>) -> Result<Self> {
        let mut t = Self::zeros(vertices)?;
        if masses.len() != t.masses.len() {
            return Err(Error::ArityMismatch { expected: t.masses.len(), got: masses.len() });
        }
        if let Some(&bad) = masses.iter().find(|m| m.is_nan() || **m < 0.0) {
            return Err(Error::ProbabilityOutOfRange(bad));
        }
        t.masses = masses;
        Ok(t)
    }

    pub fn point_mass(h: &Hypergraph) -> Result<Self> {
        let mut t = Self::zeros(h.vertices().clone())?;
        let i = t.index_of(h)?;
        t.masses[i] = 1.0;
        Ok(t)
    }

    /// Evaluates `f` on every hypergraph; the work is split across threads
    /// but each entry is computed independently, so the result does not
    /// depend on the thread count.
    pub fn from_fn<F>(vertices: VertexSet, f: F) -> Result<Self>
    where
        F: Fn(&Hypergraph) -> Result<f64> + Sync,
    {
        let mut t = Self::zeros(vertices)?;
        let masses = (0..t.masses.len())
            .into_par_iter()
            .map(|i| f(&t.hypergraph(i)))
            .collect::<Result<Vec<f64>>>()?;
        t.masses = masses;
        Ok(t)
    }

    /// An arbitrary distribution with full support, reproducible from
    /// `seed`.
    pub fn random(vertices: VertexSet, seed: u64) -> Result<Self> {
        let mut t = Self::zeros(vertices)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let raw: Vec<f64> = (0..t.masses.len()).map(|_| rng.gen::<f64>() + 1e-3).collect();
        let total: f64 = raw.iter().sum();
        t.masses = raw.into_iter().map(|m| m / total).collect();
        Ok(t)
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    /// Number of hypergraphs, `2^|Δ[V]|`.
    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn hypergraph(&self, index: usize) -> Hypergraph {
        let edges = (0..self.index.edges.len())
            .filter(|i| index >> i & 1 == 1)
            .map(|i| self.index.edges[i])
            .collect();
        Hypergraph::from_sorted_unchecked(self.vertices.clone(), edges)
    }

    pub fn index_of(&self, h: &Hypergraph) -> Result<usize> {
        h.vertices().ensure_same(&self.vertices)?;
        Ok(self.index_unchecked(h))
    }

    fn index_unchecked(&self, h: &Hypergraph) -> usize {
        h.edges()
            .iter()
            .fold(0, |acc, e| acc | 1 << self.index.position[e.bits() as usize])
    }

    pub fn mass(&self, h: &Hypergraph) -> Result<f64> {
        Ok(self.masses[self.index_of(h)?])
    }

    pub fn total(&self) -> f64 {
        self.masses.iter().sum()
    }

    /// Indices with nonzero mass, ascending.
    pub fn support(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.masses.iter().copied().enumerate().filter(|&(_, m)| m != 0.0)
    }

    /// Largest total mass placed outside hypergraphs accepted by `pred`.
    pub fn mass_outside(&self, pred: impl Fn(&Hypergraph) -> bool) -> f64 {
        self.support().filter(|&(i, _)| !pred(&self.hypergraph(i))).map(|(_, m)| m).sum()
    }

    /// `(Df)(φ)` for `f` keeping the vertex set.
    pub fn pushforward<F>(&self, f: F) -> DistributionTable
    where
        F: Fn(&Hypergraph) -> Hypergraph + Sync,
    {
        let images: Vec<Option<usize>> = (0..self.masses.len())
            .into_par_iter()
            .map(|i| (self.masses[i] != 0.0).then(|| self.index_unchecked(&f(&self.hypergraph(i)))))
            .collect();
        let mut out = vec![0.0; self.masses.len()];
        for (i, image) in images.into_iter().enumerate() {
            if let Some(j) = image {
                out[j] += self.masses[i];
            }
        }
        Self { vertices: self.vertices.clone(), index: self.index.clone(), masses: out }
    }

    /// `(Dμ)(φ′, φ″)` for a binary map `μ` into hypergraphs on `target`.
    pub fn pushforward_pair<F>(a: &Self, b: &Self, target: VertexSet, mu: F) -> Result<Self>
    where
        F: Fn(&Hypergraph, &Hypergraph) -> Result<Hypergraph>,
    {
        let mut out = Self::zeros(target)?;
        let right: Vec<(Hypergraph, f64)> = b.support().map(|(j, m)| (b.hypergraph(j), m)).collect();
        for (i, ma) in a.support() {
            let h = a.hypergraph(i);
            for (g, mb) in &right {
                let image = mu(&h, g)?;
                let k = out.index_of(&image)?;
                out.masses[k] += ma * mb;
            }
        }
        Ok(out)
    }

    /// `(D∩)` or `(D∪)` on a shared vertex set, computed on index masks.
    pub fn pushforward_masks(a: &Self, b: &Self, op: impl Fn(usize, usize) -> usize) -> Result<Self> {
        a.vertices.ensure_same(&b.vertices)?;
        let mut masses = vec![0.0; a.masses.len()];
        let right: Vec<(usize, f64)> = b.support().collect();
        for (i, ma) in a.support() {
            for &(j, mb) in &right {
                masses[op(i, j)] += ma * mb;
            }
        }
        Ok(Self { vertices: a.vertices.clone(), index: a.index.clone(), masses })
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        self.vertices.ensure_same(&other.vertices)?;
        Ok(self
            .masses
            .iter()
            .zip(&other.masses)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    /// `index<TAB>mass` lines, one per hypergraph.
    pub fn render_masses(&self) -> String {
        let mut out = String::new();
        for (i, m) in self.masses.iter().enumerate() {
            writeln!(out, "{i}\t{m}").expect("write to String");
        }
        out
    }

    /// Every hypergraph in canonical text form, each preceded by a
    /// `# index=<i> mass=<m>` comment line.
    pub fn render_full(&self) -> String {
        let mut out = String::new();
        for (i, m) in self.masses.iter().enumerate() {
            write!(out, "# index={i} mass={m}\n{}", self.hypergraph(i)).expect("write to String");
        }
        out
    }
}

/// `½ Σ |t₁ − t₂|`.
pub fn total_variation(t1: &DistributionTable, t2: &DistributionTable) -> Result<f64> {
    t1.vertices.ensure_same(&t2.vertices)?;
    Ok(0.5 * t1.masses.iter().zip(&t2.masses).map(|(a, b)| (a - b).abs()).sum::<f64>())
}

/// Whether `class` passes `filter`. `Complex` and `Independence` include
/// `Both`.
pub fn class_matches(filter: HypergraphClass, class: HypergraphClass) -> bool {
    match filter {
        HypergraphClass::Complex => class.is_complex(),
        HypergraphClass::Independence => class.is_independence(),
        HypergraphClass::Both | HypergraphClass::Neither => class == filter,
    }
}

/// Every hypergraph on `vertices` in index order, optionally only those of
/// one class.
pub fn enumerate_hypergraphs(
    vertices: &VertexSet,
    filter: Option<HypergraphClass>,
) -> Result<impl Iterator<Item = Hypergraph>> {
    let table = DistributionTable::zeros(vertices.clone())?;
    Ok((0..table.len())
        .map(move |i| table.hypergraph(i))
        .filter(move |h| filter.is_none_or(|f| class_matches(f, h.classify()))))
}

/// The exact table of a model law.
pub fn exact_table(model: &ModelDescriptor) -> Result<DistributionTable> {
    DistributionTable::from_fn(model.map.vertices().clone(), |h| model.mass(h))
}

/// Frequencies of `trials` draws, trial `t` produced by `draw(t)`.
pub fn empirical_from<F>(vertices: VertexSet, trials: u64, draw: F) -> Result<DistributionTable>
where
    F: Fn(u64) -> Result<Hypergraph> + Sync,
{
    let mut table = DistributionTable::zeros(vertices)?;
    if trials == 0 {
        return Ok(table);
    }
    let indices = (0..trials)
        .into_par_iter()
        .map(|t| draw(t).and_then(|h| table.index_of(&h)))
        .collect::<Result<Vec<usize>>>()?;
    let mut counts = vec![0u64; table.len()];
    for i in indices {
        counts[i] += 1;
    }
    table.masses = counts.into_iter().map(|c| c as f64 / trials as f64).collect();
    Ok(table)
}

/// Frequencies of `trials` draws of `e`, trial `t` using stream `(seed, t)`.
pub fn empirical_table(
    e: &Expr,
    maps: &[ProbabilityMap],
    trials: u64,
    seed: u64,
) -> Result<DistributionTable> {
    let sets: Vec<VertexSet> = maps.iter().map(|p| p.vertices().clone()).collect();
    let sig = infer_signature(e, &sets)?;
    empirical_from(sig.result_vertex_set, trials, |t| {
        sample_expr(e, maps, &mut SampleStream::for_trial(seed, t)).map(|o| o.hypergraph)
    })
}

/// Frequencies of `trials` draws from a model sampler.
pub fn empirical_model_table(model: &ModelDescriptor, trials: u64, seed: u64) -> Result<DistributionTable> {
    empirical_from(model.map.vertices().clone(), trials, |t| {
        Ok(sample_model(model, &mut SampleStream::for_trial(seed, t)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prob::ModelFamily;

    fn ab() -> VertexSet {
        VertexSet::new(["a", "b"]).unwrap()
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_hypergraphs(&ab(), None).unwrap().count(), 8);
        let v3 = VertexSet::numbered("v", 3).unwrap();
        assert_eq!(enumerate_hypergraphs(&v3, None).unwrap().count(), 128);
        // Down-sets of the nonempty subsets of a 3-set: Dedekind number 20,
        // less the antichain {∅}.
        assert_eq!(enumerate_hypergraphs(&v3, Some(HypergraphClass::Complex)).unwrap().count(), 19);
        assert_eq!(enumerate_hypergraphs(&v3, Some(HypergraphClass::Independence)).unwrap().count(), 19);
        assert_eq!(enumerate_hypergraphs(&ab(), Some(HypergraphClass::Complex)).unwrap().count(), 5);
        let v5 = VertexSet::numbered("v", 5).unwrap();
        assert!(matches!(
            enumerate_hypergraphs(&v5, None).err(),
            Some(Error::BoundExceeded { edges: 31, limit: 20 })
        ));
    }

    #[test]
    fn index_round_trip() {
        let v = VertexSet::numbered("v", 3).unwrap();
        let t = DistributionTable::zeros(v).unwrap();
        for i in 0..t.len() {
            assert_eq!(t.index_of(&t.hypergraph(i)).unwrap(), i);
        }
    }

    #[test]
    fn exact_table_examples() {
        let half = ProbabilityMap::constant(ab(), 0.5).unwrap();
        let t = exact_table(&ModelDescriptor::new(ModelFamily::PBar, half.clone())).unwrap();
        assert!(t.masses().iter().all(|&m| m == 0.125));
        let one = ProbabilityMap::constant(ab(), 1.0).unwrap();
        let p = exact_table(&ModelDescriptor::new(ModelFamily::P, one)).unwrap();
        assert_eq!(p, DistributionTable::point_mass(&Hypergraph::full(ab())).unwrap());
        let q = exact_table(&ModelDescriptor::new(ModelFamily::Q, half)).unwrap();
        assert!((q.total() - 1.0).abs() < 1e-12);
        assert_eq!(q.mass(&Hypergraph::empty(ab())).unwrap(), 0.5);
        let top = Hypergraph::from_labels(&ab(), [vec!["a", "b"]]).unwrap();
        assert_eq!(q.mass(&top).unwrap(), 0.125);
    }

    #[test]
    fn total_variation_examples() {
        let uniform = DistributionTable::from_masses(ab(), vec![0.125; 8]).unwrap();
        let empty = DistributionTable::point_mass(&Hypergraph::empty(ab())).unwrap();
        let full = DistributionTable::point_mass(&Hypergraph::full(ab())).unwrap();
        assert_eq!(total_variation(&uniform, &uniform).unwrap(), 0.0);
        assert_eq!(total_variation(&empty, &full).unwrap(), 1.0);
        assert!((total_variation(&uniform, &empty).unwrap() - 0.875).abs() < 1e-15);
    }

    #[test]
    fn empirical_examples() {
        let one = ProbabilityMap::constant(ab(), 1.0).unwrap();
        let leaf = Expr::leaf(0);
        let t = empirical_table(&leaf, &[one], 50, 3).unwrap();
        assert_eq!(t, DistributionTable::point_mass(&Hypergraph::full(ab())).unwrap());
        let half = ProbabilityMap::constant(ab(), 0.5).unwrap();
        let single = empirical_table(&leaf, &[half], 1, 3).unwrap();
        assert_eq!(single.support().count(), 1);
    }

    #[test]
    fn renders() {
        let t = DistributionTable::point_mass(&Hypergraph::empty(ab())).unwrap();
        assert_eq!(t.render_masses().lines().count(), 8);
        assert!(t.render_masses().starts_with("0\t1\n1\t0\n"));
        let records = crate::hypergraph::parse_records(&t.render_full()).unwrap();
        assert_eq!(records.len(), 8);
        assert_eq!(records[0].comments, ["# index=0 mass=1"]);
    }
}
