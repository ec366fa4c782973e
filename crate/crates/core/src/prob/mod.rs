//! Probability maps `p: Δ[V] → [0, 1]`, the three model laws `P̄_p`, `P_p`,
//! `Q_p`, and the closed-form pushforward products.

mod mass;
mod spec;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use mass::{mass_complex, mass_hypergraph, mass_indep, pushforward_closed_form};
pub use spec::{parse_map_spec, preset_map, Preset};

use crate::error::{Error, Result};
use crate::hypergraph::{low_bits, materialize, Edge, HypergraphClass, VertexSet};

/// How a [`ProbabilityMap`] computes its values.
#[derive(Clone, Debug)]
pub enum MapSpec {
    Constant(f64),
    /// Entry `k` is the probability of every edge of cardinality `k + 1`.
    /// Cardinalities past the end of the vector get 0.
    PerDimension(Vec<f64>),
    Table { values: HashMap<u64, f64>, origin: TableOrigin },
    /// `1 − p`.
    Complemented(ProbabilityMap),
    /// `p′ ∩ p″`, the pointwise product.
    Meet(ProbabilityMap, ProbabilityMap),
    /// `p′ ∗ p″` on `V′ ⊔ V″`: `p′(σ ∩ V′) · p″(σ ∩ V″)`, an empty
    /// intersection contributing 1.
    JoinOf(ProbabilityMap, ProbabilityMap),
    /// `p′ ∪ p″ = 1 − (1 − p′)(1 − p″)`.
    JoinUnion(ProbabilityMap, ProbabilityMap),
}

/// Where a table's values came from; used only for display.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableOrigin {
    Inline,
    File(String),
    Random(u64),
}

/// A probability for every nonempty subset of a vertex set. Cheap to clone.
#[derive(Clone, Debug)]
pub struct ProbabilityMap {
    vertices: VertexSet,
    spec: Arc<MapSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MapOp {
    Meet,
    JoinUnion,
    Star,
}

fn check_probability(value: f64) -> Result<f64> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(Error::ProbabilityOutOfRange(value))
    }
}

impl ProbabilityMap {
    pub fn constant(vertices: VertexSet, value: f64) -> Result<Self> {
        check_probability(value)?;
        Ok(Self::wrap(vertices, MapSpec::Constant(value)))
    }

    pub fn per_dimension(vertices: VertexSet, values: Vec<f64>) -> Result<Self> {
        for &v in &values {
            check_probability(v)?;
        }
        Ok(Self::wrap(vertices, MapSpec::PerDimension(values)))
    }

    /// An explicit table, which must cover every edge of `Δ[V]`.
    pub fn table<I>(vertices: VertexSet, entries: I, origin: TableOrigin) -> Result<Self>
    where
        I: IntoIterator<Item = (Edge, f64)>,
    {
        if vertices.len() > crate::hypergraph::MATERIALIZE_LIMIT {
            return Err(Error::TooLargeToMaterialize(vertices.len()));
        }
        let mut values = HashMap::new();
        for (edge, value) in entries {
            if !edge.fits(&vertices) {
                return Err(Error::InvalidEdge(format!(
                    "{edge:?} does not fit a {}-vertex set",
                    vertices.len()
                )));
            }
            values.insert(edge.bits(), check_probability(value)?);
        }
        if let Some(missing) = materialize(&vertices)
            .into_iter()
            .find(|e| !values.contains_key(&e.bits()))
        {
            return Err(Error::MapNotTotal(format!("{{{}}}", missing.render(&vertices))));
        }
        Ok(Self::wrap(vertices, MapSpec::Table { values, origin }))
    }

    /// A table with independent uniform `[0, 1)` values, reproducible from
    /// `seed`.
    pub fn random_table(vertices: VertexSet, seed: u64) -> Result<Self> {
        if vertices.len() > crate::hypergraph::MATERIALIZE_LIMIT {
            return Err(Error::TooLargeToMaterialize(vertices.len()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let entries: Vec<(Edge, f64)> = materialize(&vertices)
            .into_iter()
            .map(|e| (e, rng.gen::<f64>()))
            .collect();
        Self::table(vertices, entries, TableOrigin::Random(seed))
    }

    fn wrap(vertices: VertexSet, spec: MapSpec) -> Self {
        Self { vertices, spec: Arc::new(spec) }
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn spec(&self) -> &MapSpec {
        &self.spec
    }

    /// `p(σ)`.
    ///
    /// # Panics
    /// If `edge` does not fit the vertex set.
    pub fn evaluate(&self, edge: Edge) -> f64 {
        assert!(edge.fits(&self.vertices), "{edge:?} outside the map's vertex set");
        self.eval_bits(edge.bits())
    }

    fn eval_bits(&self, bits: u64) -> f64 {
        match &*self.spec {
            MapSpec::Constant(c) => *c,
            MapSpec::PerDimension(dims) => {
                dims.get(bits.count_ones() as usize - 1).copied().unwrap_or(0.0)
            }
            MapSpec::Table { values, .. } => values[&bits],
            MapSpec::Complemented(inner) => 1.0 - inner.eval_bits(bits),
            MapSpec::Meet(a, b) => a.eval_bits(bits) * b.eval_bits(bits),
            MapSpec::JoinUnion(a, b) => 1.0 - (1.0 - a.eval_bits(bits)) * (1.0 - b.eval_bits(bits)),
            MapSpec::JoinOf(a, b) => {
                let n = a.vertices.len();
                let left = bits & low_bits(n);
                let right = bits >> n;
                let pl = if left == 0 { 1.0 } else { a.eval_bits(left) };
                let pr = if right == 0 { 1.0 } else { b.eval_bits(right) };
                pl * pr
            }
        }
    }
}

/// `1 − p`.
pub fn complement_map(p: &ProbabilityMap) -> ProbabilityMap {
    ProbabilityMap::wrap(p.vertices.clone(), MapSpec::Complemented(p.clone()))
}

/// `p′ ∩ p″`, `p′ ∪ p″` (same vertex set) or `p′ ∗ p″` (disjoint labels).
pub fn combine_maps(left: &ProbabilityMap, right: &ProbabilityMap, op: MapOp) -> Result<ProbabilityMap> {
    let (vertices, spec) = match op {
        MapOp::Meet | MapOp::JoinUnion => {
            left.vertices.ensure_same(&right.vertices)?;
            let spec = if op == MapOp::Meet {
                MapSpec::Meet(left.clone(), right.clone())
            } else {
                MapSpec::JoinUnion(left.clone(), right.clone())
            };
            (left.vertices.clone(), spec)
        }
        MapOp::Star => (
            left.vertices.disjoint_union(&right.vertices)?,
            MapSpec::JoinOf(left.clone(), right.clone()),
        ),
    };
    Ok(ProbabilityMap::wrap(vertices, spec))
}

impl fmt::Display for ProbabilityMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.spec {
            MapSpec::Constant(c) => write!(f, "const:{c}"),
            MapSpec::PerDimension(dims) => {
                let parts: Vec<String> = dims.iter().map(f64::to_string).collect();
                write!(f, "dims:{}", parts.join(","))
            }
            MapSpec::Table { origin: TableOrigin::File(path), .. } => write!(f, "table:{path}"),
            MapSpec::Table { origin: TableOrigin::Random(seed), .. } => write!(f, "random:{seed}"),
            MapSpec::Table { values, origin: TableOrigin::Inline } => {
                write!(f, "table:<{} entries>", values.len())
            }
            MapSpec::Complemented(p) => write!(f, "comp({p})"),
            MapSpec::Meet(a, b) => write!(f, "meet({a},{b})"),
            MapSpec::JoinUnion(a, b) => write!(f, "union({a},{b})"),
            MapSpec::JoinOf(a, b) => write!(f, "star({a},{b})"),
        }
    }
}

/// Which of the three model laws.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelFamily {
    /// `P̄_p` on all hypergraphs.
    PBar,
    /// `P_p` on simplicial complexes.
    P,
    /// `Q_p` on independence hypergraphs.
    Q,
}

impl ModelFamily {
    pub fn keyword(self) -> &'static str {
        match self {
            ModelFamily::PBar => "pbar",
            ModelFamily::P => "p",
            ModelFamily::Q => "q",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        [ModelFamily::PBar, ModelFamily::P, ModelFamily::Q]
            .into_iter()
            .find(|m| m.keyword() == word)
    }

    /// Whether a hypergraph of class `class` lies in the support.
    pub fn supports(self, class: HypergraphClass) -> bool {
        match self {
            ModelFamily::PBar => true,
            ModelFamily::P => class.is_complex(),
            ModelFamily::Q => class.is_independence(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ModelDescriptor {
    pub family: ModelFamily,
    pub map: ProbabilityMap,
}

impl ModelDescriptor {
    pub fn new(family: ModelFamily, map: ProbabilityMap) -> Self {
        Self { family, map }
    }

    /// Probability of `h` under the law; 0 outside the support.
    pub fn mass(&self, h: &crate::hypergraph::Hypergraph) -> Result<f64> {
        if !self.family.supports(h.classify()) {
            h.vertices().ensure_same(self.map.vertices())?;
            return Ok(0.0);
        }
        match self.family {
            ModelFamily::PBar => mass_hypergraph(&self.map, h),
            ModelFamily::P => mass_complex(&self.map, h),
            ModelFamily::Q => mass_indep(&self.map, h),
        }
    }
}

impl fmt::Display for ModelDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.family.keyword(), self.map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: usize) -> VertexSet {
        VertexSet::numbered("v", n).unwrap()
    }

    fn edge(bits: u64) -> Edge {
        Edge::new(bits).unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let c = ProbabilityMap::constant(v(3), 0.3).unwrap();
        assert_eq!(c.evaluate(edge(0b101)), 0.3);
        let d = ProbabilityMap::per_dimension(v(3), vec![1.0, 0.5]).unwrap();
        assert_eq!(d.evaluate(edge(0b011)), 0.5);
        assert_eq!(d.evaluate(edge(0b001)), 1.0);
        assert_eq!(d.evaluate(edge(0b111)), 0.0);
    }

    #[test]
    fn star_multiplies_block_values() {
        let a = VertexSet::new(["a", "b"]).unwrap();
        let b = VertexSet::new(["c", "d"]).unwrap();
        let p = ProbabilityMap::constant(a, 0.5).unwrap();
        let q = ProbabilityMap::constant(b, 0.4).unwrap();
        let s = combine_maps(&p, &q, MapOp::Star).unwrap();
        assert_eq!(s.vertices().labels(), ["a", "b", "c", "d"]);
        assert!((s.evaluate(edge(0b0101)) - 0.2).abs() < 1e-15);
        assert_eq!(s.evaluate(edge(0b1100)), 0.4);
        assert_eq!(s.evaluate(edge(0b0011)), 0.5);
        assert!(combine_maps(&p, &p, MapOp::Star).is_err());
    }

    #[test]
    fn meet_union_and_complement() {
        let p = ProbabilityMap::constant(v(2), 0.5).unwrap();
        let q = ProbabilityMap::constant(v(2), 0.4).unwrap();
        let e = edge(0b11);
        assert!((combine_maps(&p, &q, MapOp::Meet).unwrap().evaluate(e) - 0.2).abs() < 1e-15);
        assert_eq!(combine_maps(&p, &p, MapOp::JoinUnion).unwrap().evaluate(e), 0.75);
        let c = ProbabilityMap::constant(v(2), 0.3).unwrap();
        assert!((complement_map(&c).evaluate(e) - 0.7).abs() < 1e-15);
        assert!((complement_map(&complement_map(&c)).evaluate(e) - 0.3).abs() < 1e-15);
        assert!(combine_maps(&p, &ProbabilityMap::constant(v(3), 0.1).unwrap(), MapOp::Meet).is_err());
    }

    #[test]
    fn validation() {
        assert!(matches!(
            ProbabilityMap::constant(v(2), 1.5),
            Err(Error::ProbabilityOutOfRange(_))
        ));
        assert!(ProbabilityMap::per_dimension(v(2), vec![0.5, -0.1]).is_err());
        let partial = ProbabilityMap::table(v(2), [(edge(0b01), 0.5)], TableOrigin::Inline);
        assert!(matches!(partial, Err(Error::MapNotTotal(_))));
    }

    #[test]
    fn random_table_is_reproducible() {
        let a = ProbabilityMap::random_table(v(3), 11).unwrap();
        let b = ProbabilityMap::random_table(v(3), 11).unwrap();
        let c = ProbabilityMap::random_table(v(3), 12).unwrap();
        let all = canonical(3);
        assert!(all.iter().all(|&e| a.evaluate(e) == b.evaluate(e)));
        assert!(all.iter().any(|&e| a.evaluate(e) != c.evaluate(e)));
        assert_eq!(a.to_string(), "random:11");
    }

    fn canonical(n: usize) -> Vec<Edge> {
        crate::hypergraph::canonical_edges(n).unwrap()
    }

    #[test]
    fn display_forms() {
        let p = ProbabilityMap::per_dimension(v(2), vec![1.0, 0.3]).unwrap();
        assert_eq!(p.to_string(), "dims:1,0.3");
        let d = ModelDescriptor::new(ModelFamily::Q, complement_map(&p));
        assert_eq!(d.to_string(), "q[comp(dims:1,0.3)]");
    }
}
