use std::fmt;

use rayon::prelude::*;

use super::example::example_outcomes;
use super::stats::chi_square;
use super::table::{
    empirical_model_table, empirical_table, enumerate_hypergraphs, exact_table, total_variation, DistributionTable,
};
use crate::algebra::{build_pipeline, eval_expr, parse_expr, pushforward_expr, PipelineConfig, PipelineKind};
use crate::error::{Error, Result};
use crate::hypergraph::{
    apply_vertex_map, box_product, combine, complement, join, Hypergraph, SetOp, UnaryOp, VertexMap, VertexSet,
};
use crate::prob::{
    combine_maps, complement_map, parse_map_spec, pushforward_closed_form, MapOp, ModelDescriptor, ModelFamily,
    ProbabilityMap,
};
use crate::sampler::{sample_hypergraph, SampleStream};

pub const EXACT_TOLERANCE: f64 = 1e-12;
pub const SAMPLER_TV_THRESHOLD: f64 = 0.02;
pub const CROSS_SAMPLER_TV_THRESHOLD: f64 = 0.03;
pub const RANDOM_RELATION_CASES: u64 = 1000;
pub const PIPELINE_RUNS: u64 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Metric {
    MaxAbsDiff,
    TotalVariation,
    ChiSquare,
    Mismatches,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::MaxAbsDiff => "max-abs-diff",
            Metric::TotalVariation => "total-variation",
            Metric::ChiSquare => "chi-square",
            Metric::Mismatches => "mismatches",
        }
    }
}

/// Outcome of one comparison. `passed` is `value <= threshold`.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub params: String,
    pub metric: Metric,
    pub value: f64,
    pub threshold: f64,
    pub passed: bool,
    /// Shown but not counted towards the overall verdict.
    pub advisory: bool,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, params: impl Into<String>, metric: Metric, value: f64, threshold: f64) -> Self {
        Self {
            name: name.into(),
            params: params.into(),
            metric,
            value,
            threshold,
            passed: value <= threshold,
            advisory: false,
        }
    }

    fn advisory(mut self) -> Self {
        self.advisory = true;
        self
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} metric={} ", self.name, self.metric.name())?;
        match self.metric {
            Metric::Mismatches => write!(f, "value={} threshold={}", self.value, self.threshold)?,
            _ => write!(f, "value={:.3e} threshold={:e}", self.value, self.threshold)?,
        }
        write!(f, " params={}", self.params)?;
        if self.advisory {
            f.write_str(" advisory")?;
        }
        Ok(())
    }
}

/// Whether every non-advisory report passed.
pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.passed || r.advisory)
}

/// Inputs shared by all checks. `None` selects each check's own defaults.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckParams {
    pub vertex_sets: Option<Vec<VertexSet>>,
    /// Map specs, parsed against each vertex set in turn.
    pub maps: Option<Vec<String>>,
    pub seed: u64,
    pub trials: u64,
    /// Replaces the threshold of every non-mismatch metric.
    pub tol: Option<f64>,
}

impl Default for CheckParams {
    fn default() -> Self {
        Self { vertex_sets: None, maps: None, seed: 7, trials: 200_000, tol: None }
    }
}

impl CheckParams {
    fn threshold(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }

    /// Vertex sets for single-input checks; `|V| = 2` and `3` by default.
    fn sets(&self) -> Vec<VertexSet> {
        self.vertex_sets.clone().unwrap_or_else(|| vec![numbered("v", 2), numbered("v", 3)])
    }

    /// The first given vertex set, or `{v0, v1, v2}`.
    fn single_set(&self) -> VertexSet {
        self.vertex_sets.as_ref().map_or_else(|| numbered("v", 3), |s| s[0].clone())
    }

    /// `V′` and `V″` for join checks; `{a, b}` and `{c, d}` by default.
    fn join_sets(&self) -> Result<(VertexSet, VertexSet)> {
        match self.vertex_sets.as_deref() {
            None => Ok((
                VertexSet::new(["a", "b"]).expect("valid labels"),
                VertexSet::new(["c", "d"]).expect("valid labels"),
            )),
            Some([a, b, ..]) => Ok((a.clone(), b.clone())),
            Some(_) => Err(Error::InvalidVertexSet("join checks need two vertex sets, e.g. `a,b;c,d`".into())),
        }
    }

    fn specs(&self) -> Vec<String> {
        self.maps.clone().unwrap_or_else(|| {
            vec!["const:0.5".into(), "const:0.2".into(), format!("random:{}", self.seed)]
        })
    }

    fn maps(&self, v: &VertexSet) -> Result<Vec<ProbabilityMap>> {
        self.specs().iter().map(|s| parse_map_spec(s, v)).collect()
    }

    /// The first given map, or the constant 0.5.
    fn single_map(&self, v: &VertexSet) -> Result<ProbabilityMap> {
        parse_map_spec(self.maps.as_ref().map_or("const:0.5", |m| &m[0]), v)
    }

    /// Pairs `(p′, p″)`: each spec with the next one, cyclically; a single
    /// spec is paired with itself.
    fn map_pairs(&self, v1: &VertexSet, v2: &VertexSet) -> Result<Vec<(ProbabilityMap, ProbabilityMap)>> {
        let specs = self.specs();
        (0..specs.len())
            .map(|i| {
                let j = (i + 1) % specs.len();
                Ok((parse_map_spec(&specs[i], v1)?, parse_map_spec(&specs[j], v2)?))
            })
            .collect()
    }
}

fn numbered(prefix: &str, n: usize) -> VertexSet {
    VertexSet::numbered(prefix, n).expect("small vertex set")
}

fn labels(v: &VertexSet) -> String {
    v.labels().join(",")
}

/// Every name accepted by [`run_check`].
pub const CHECK_NAMES: &[&str] = &[
    "thm1.1-part-1",
    "thm1.1-part-2",
    "thm1.1-part-3",
    "thm1.1-part-4",
    "thm1.1-part-5",
    "thm1.1-all",
    "thm3.5-part-1",
    "thm3.5-part-2",
    "thm3.5-part-3",
    "thm3.5-part-4",
    "thm3.5-all",
    "cor1.2-join-1",
    "cor1.2-join-2",
    "cor1.2-join-3",
    "cor1.3-capcup-1",
    "cor1.3-capcup-2",
    "cor1.3-capcup-3",
    "cor3.6-1",
    "cor3.6-2",
    "cor3.7",
    "cor3.8",
    "lemma2.4",
    "lemma3.1-all",
    "relations-2.1",
    "example-2.1-fixtures",
    "sampler-stat-pbar",
    "sampler-stat-p",
    "sampler-stat-q",
    "cross-sampler",
    "pipeline-class-complex",
    "pipeline-class-indep",
    "all",
];

/// Runs the named check and returns one report per comparison.
pub fn run_check(name: &str, params: &CheckParams) -> Result<Vec<CheckReport>> {
    let part = |prefix: &str| name.strip_prefix(prefix).and_then(|n| n.parse::<u8>().ok());
    match name {
        "thm1.1-all" => collect((1..=5).map(|k| complement_images(k, params))),
        "thm3.5-all" => collect((1..=4).map(|k| closed_forms(k, params))),
        "cor3.6-1" => composite_images(1, params),
        "cor3.6-2" => composite_images(2, params),
        "cor3.7" => collect((2..=3).map(|k| set_ops(k, params, "cor3.7"))),
        "cor3.8" => collect((2..=3).map(|k| joins(k, params, "cor3.8"))),
        "lemma2.4" => generator_identities(params),
        "lemma3.1-all" => commuting_identities(params),
        "relations-2.1" => relations(params),
        "example-2.1-fixtures" => example_fixtures(),
        "sampler-stat-pbar" => sampler_stat(ModelFamily::PBar, params),
        "sampler-stat-p" => sampler_stat(ModelFamily::P, params),
        "sampler-stat-q" => sampler_stat(ModelFamily::Q, params),
        "cross-sampler" => cross_sampler(params),
        "pipeline-class-complex" => pipeline_class(PipelineKind::Complex, params),
        "pipeline-class-indep" => pipeline_class(PipelineKind::Independence, params),
        "all" => collect(
            CHECK_NAMES
                .iter()
                .filter(|&&n| n != "all" && !is_covered_by_all_variant(n))
                .map(|n| run_check(n, params)),
        ),
        _ => match (part("thm1.1-part-"), part("thm3.5-part-"), part("cor1.2-join-"), part("cor1.3-capcup-")) {
            (Some(k @ 1..=5), ..) => complement_images(k, params),
            (_, Some(k @ 1..=4), ..) => closed_forms(k, params),
            (_, _, Some(k @ 1..=3), _) => joins(k, params, "cor1.2-join"),
            (.., Some(k @ 1..=3)) => set_ops(k, params, "cor1.3-capcup"),
            _ => Err(Error::UnknownCheck(name.to_string())),
        },
    }
}

/// Single parts whose reports `all` already gets from an `-all` variant or
/// an alias.
fn is_covered_by_all_variant(name: &str) -> bool {
    name.starts_with("thm1.1-part-") || name.starts_with("thm3.5-part-") || name == "cor3.7" || name == "cor3.8"
}

fn collect(parts: impl Iterator<Item = Result<Vec<CheckReport>>>) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

fn pbar_table(p: &ProbabilityMap) -> Result<DistributionTable> {
    exact_table(&ModelDescriptor::new(ModelFamily::PBar, p.clone()))
}

fn model_table(family: ModelFamily, p: &ProbabilityMap) -> Result<DistributionTable> {
    exact_table(&ModelDescriptor::new(family, p.clone()))
}

fn push(expr: &str, tables: &[DistributionTable]) -> Result<DistributionTable> {
    pushforward_expr(&parse_expr(expr)?, tables)
}

/// Images of `P̄_p` under `γ`, `γΔ`, `γΔ̄`, `δ`, `δ̄`.
fn complement_images(part: u8, params: &CheckParams) -> Result<Vec<CheckReport>> {
    let (expr, family, complemented) = match part {
        1 => ("comp($0)", ModelFamily::PBar, true),
        2 => ("comp(up($0))", ModelFamily::Q, true),
        3 => ("comp(iup($0))", ModelFamily::P, true),
        4 => ("down($0)", ModelFamily::P, false),
        _ => ("idown($0)", ModelFamily::Q, false),
    };
    let mut out = Vec::new();
    for v in params.sets() {
        for p in params.maps(&v)? {
            let image = push(expr, &[pbar_table(&p)?])?;
            let law = if complemented { complement_map(&p) } else { p.clone() };
            let diff = image.max_abs_diff(&model_table(family, &law)?)?;
            out.push(CheckReport::new(
                format!("thm1.1-part-{part}"),
                format!("V={} p={p} expr={expr} law={}[{law}]", labels(&v), family.keyword()),
                Metric::MaxAbsDiff,
                diff,
                params.threshold(EXACT_TOLERANCE),
            ));
        }
    }
    Ok(out)
}

/// Preimage sums of `P̄_p` under `Δ`, `Δ̄`, `δ`, `δ̄` against the product
/// formulas and the model masses they equal.
fn closed_forms(part: u8, params: &CheckParams) -> Result<Vec<CheckReport>> {
    let (op, target_complex) = match part {
        1 => (UnaryOp::AssocComplex, true),
        2 => (UnaryOp::AssocIndep, false),
        3 => (UnaryOp::LowerComplex, true),
        _ => (UnaryOp::LowerIndep, false),
    };
    let mut out = Vec::new();
    for v in params.sets() {
        for p in params.maps(&v)? {
            let image = pbar_table(&p)?.pushforward(|h| op.apply(h));
            let q = complement_map(&p);
            let mut diff: f64 = 0.0;
            for (i, &preimage) in image.masses().iter().enumerate() {
                let h = image.hypergraph(i);
                let in_class = if target_complex { h.is_complex() } else { h.is_independence() };
                if !in_class {
                    diff = diff.max(preimage.abs());
                    continue;
                }
                let closed = pushforward_closed_form(&p, &h, op)?;
                let stated = match part {
                    1 => ModelDescriptor::new(ModelFamily::Q, q.clone()).mass(&complement(&h))?,
                    2 => ModelDescriptor::new(ModelFamily::P, q.clone()).mass(&complement(&h))?,
                    3 => ModelDescriptor::new(ModelFamily::P, p.clone()).mass(&h)?,
                    _ => ModelDescriptor::new(ModelFamily::Q, p.clone()).mass(&h)?,
                };
                diff = diff.max((preimage - closed).abs()).max((preimage - stated).abs());
            }
            out.push(CheckReport::new(
                format!("thm3.5-part-{part}"),
                format!("V={} p={p} op={}", labels(&v), op.keyword()),
                Metric::MaxAbsDiff,
                diff,
                params.threshold(EXACT_TOLERANCE),
            ));
        }
    }
    Ok(out)
}

/// `(Dγ)(DΔ)(P̄_p) = Q_{1−p}` and `(Dγ)(DΔ̄)(P̄_p) = P_{1−p}`, composed one
/// pushforward at a time.
fn composite_images(part: u8, params: &CheckParams) -> Result<Vec<CheckReport>> {
    let (op, family) = if part == 1 {
        (UnaryOp::AssocComplex, ModelFamily::Q)
    } else {
        (UnaryOp::AssocIndep, ModelFamily::P)
    };
    let mut out = Vec::new();
    for v in params.sets() {
        for p in params.maps(&v)? {
            let image = pbar_table(&p)?.pushforward(|h| op.apply(h)).pushforward(complement);
            let diff = image.max_abs_diff(&model_table(family, &complement_map(&p))?)?;
            out.push(CheckReport::new(
                format!("cor3.6-{part}"),
                format!("V={} p={p} op=comp.{}", labels(&v), op.keyword()),
                Metric::MaxAbsDiff,
                diff,
                params.threshold(EXACT_TOLERANCE),
            ));
        }
    }
    Ok(out)
}

/// `∩`/`∪` of independent `P̄` draws (part 1), `∩` of `P` draws (part 2)
/// and of `Q` draws (part 3) against the composite-parameter law.
fn set_ops(part: u8, params: &CheckParams, prefix: &str) -> Result<Vec<CheckReport>> {
    let family = match part {
        1 => ModelFamily::PBar,
        2 => ModelFamily::P,
        _ => ModelFamily::Q,
    };
    let ops: &[(&str, MapOp)] = if part == 1 {
        &[("$0 & $1", MapOp::Meet), ("$0 | $1", MapOp::JoinUnion)]
    } else {
        &[("$0 & $1", MapOp::Meet)]
    };
    let name = if prefix == "cor3.7" { format!("cor3.7-{}", part - 1) } else { format!("{prefix}-{part}") };
    let mut out = Vec::new();
    for v in params.sets() {
        for (p1, p2) in params.map_pairs(&v, &v)? {
            let inputs = [model_table(family, &p1)?, model_table(family, &p2)?];
            for &(expr, map_op) in ops {
                let law = combine_maps(&p1, &p2, map_op)?;
                let diff = push(expr, &inputs)?.max_abs_diff(&model_table(family, &law)?)?;
                out.push(CheckReport::new(
                    name.clone(),
                    format!("V={} p'={p1} p''={p2} expr={expr} law={}[{law}]", labels(&v), family.keyword()),
                    Metric::MaxAbsDiff,
                    diff,
                    params.threshold(EXACT_TOLERANCE),
                ));
            }
        }
    }
    Ok(out)
}

/// `∗` of independent `P̄`, `P` or `Q` draws against the law with map
/// `p′ ∗ p″`.
fn joins(part: u8, params: &CheckParams, prefix: &str) -> Result<Vec<CheckReport>> {
    let family = match part {
        1 => ModelFamily::PBar,
        2 => ModelFamily::P,
        _ => ModelFamily::Q,
    };
    let name = if prefix == "cor3.8" { format!("cor3.8-{}", part - 1) } else { format!("{prefix}-{part}") };
    let (v1, v2) = params.join_sets()?;
    let mut out = Vec::new();
    for (p1, p2) in params.map_pairs(&v1, &v2)? {
        let inputs = [model_table(family, &p1)?, model_table(family, &p2)?];
        let law = combine_maps(&p1, &p2, MapOp::Star)?;
        let diff = push("$0 * $1", &inputs)?.max_abs_diff(&model_table(family, &law)?)?;
        out.push(CheckReport::new(
            name.clone(),
            format!("V'={} V''={} p'={p1} p''={p2} law={}[{law}]", labels(&v1), labels(&v2), family.keyword()),
            Metric::MaxAbsDiff,
            diff,
            params.threshold(EXACT_TOLERANCE),
        ));
    }
    Ok(out)
}

/// `Δ̄ = γδγ`, `δ̄ = γΔγ`, `δ = γΔ̄γ`, `Δ = γδ̄γ` on every hypergraph.
fn generator_identities(params: &CheckParams) -> Result<Vec<CheckReport>> {
    use UnaryOp::*;
    let sets = params.vertex_sets.clone().unwrap_or_else(|| (1..=3).map(|n| numbered("v", n)).collect());
    let pairs = [(AssocIndep, LowerComplex), (LowerIndep, AssocComplex), (LowerComplex, AssocIndep), (AssocComplex, LowerIndep)];
    let mut out = Vec::new();
    for v in sets {
        let mut count = 0u64;
        let mut total = 0u64;
        for h in enumerate_hypergraphs(&v, None)? {
            total += 1;
            for (lhs, inner) in pairs {
                if lhs.apply(&h) != complement(&inner.apply(&complement(&h))) {
                    count += 1;
                }
            }
        }
        out.push(CheckReport::new(
            "lemma2.4",
            format!("V={} hypergraphs={total} identities=iup:comp.down.comp,idown:comp.up.comp,down:comp.iup.comp,up:comp.idown.comp", labels(&v)),
            Metric::Mismatches,
            count as f64,
            0.0,
        ));
    }
    Ok(out)
}

/// Unary operators commuting with `∪`, `∩`, `∗` at the level of laws, on
/// two seeded arbitrary input laws.
fn commuting_identities(params: &CheckParams) -> Result<Vec<CheckReport>> {
    let v = VertexSet::new(["a", "b"]).expect("valid labels");
    let (v1, v2) = (v.clone(), VertexSet::new(["c", "d"]).expect("valid labels"));
    let same = [DistributionTable::random(v.clone(), params.seed)?, DistributionTable::random(v, params.seed + 1)?];
    let split = [DistributionTable::random(v1, params.seed)?, DistributionTable::random(v2, params.seed + 1)?];
    let identities: [(&str, &str, &str, bool); 8] = [
        ("1-up-union", "up($0) | up($1)", "up($0 | $1)", false),
        ("1-iup-union", "iup($0) | iup($1)", "iup($0 | $1)", false),
        ("2-down-cap", "down($0) & down($1)", "down($0 & $1)", false),
        ("2-idown-cap", "idown($0) & idown($1)", "idown($0 & $1)", false),
        ("3-up-join", "up($0) * up($1)", "up($0 * $1)", true),
        ("3-down-join", "down($0) * down($1)", "down($0 * $1)", true),
        ("3-iup-join", "iup($0) * iup($1)", "iup($0 * $1)", true),
        ("3-idown-join", "idown($0) * idown($1)", "idown($0 * $1)", true),
    ];
    identities
        .iter()
        .map(|&(id, lhs, rhs, joined)| {
            let inputs = if joined { &split } else { &same };
            let diff = push(lhs, inputs)?.max_abs_diff(&push(rhs, inputs)?)?;
            let sets = if joined { "V'=a,b V''=c,d" } else { "V=a,b" };
            Ok(CheckReport::new(
                format!("lemma3.1-{id}"),
                format!("{sets} tables=random:{},random:{} lhs={lhs} rhs={rhs}", params.seed, params.seed + 1),
                Metric::MaxAbsDiff,
                diff,
                params.threshold(EXACT_TOLERANCE),
            ))
        })
        .collect()
}

/// Which inputs a relation takes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    /// `H` on `V`.
    Unary,
    /// `H, H′` on one `V`.
    Pair,
    /// `H` on `V`, `H′` on a disjoint `V′`.
    Disjoint,
    /// `H₁` on `V₁`; `H₂, H₃` on a disjoint `V₂`.
    Triple,
    /// `H₁, H₂, H₃` on pairwise disjoint sets.
    DisjointTriple,
}

impl Shape {
    /// Input vertex sets with `n` vertices each.
    fn sets(self, n: usize) -> Vec<VertexSet> {
        let (a, b, c) = (numbered("a", n), numbered("b", n), numbered("c", n));
        match self {
            Shape::Unary => vec![a],
            Shape::Pair => vec![a.clone(), a],
            Shape::Disjoint => vec![a, b],
            Shape::Triple => vec![a, b.clone(), b],
            Shape::DisjointTriple => vec![a, b, c],
        }
    }

    fn exhaustive_size(self) -> usize {
        if self == Shape::Unary { 3 } else { 2 }
    }
}

struct Relation {
    name: &'static str,
    shape: Shape,
    holds: fn(&[Hypergraph]) -> bool,
}

fn ap(op: UnaryOp, h: &Hypergraph) -> Hypergraph {
    op.apply(h)
}

fn word(ops: &[UnaryOp], h: &Hypergraph) -> Hypergraph {
    ops.iter().fold(h.clone(), |acc, op| op.apply(&acc))
}

fn cap(a: &Hypergraph, b: &Hypergraph) -> Hypergraph {
    combine(a, b, SetOp::Intersect).expect("same vertex set")
}

fn cup(a: &Hypergraph, b: &Hypergraph) -> Hypergraph {
    combine(a, b, SetOp::Union).expect("same vertex set")
}

fn jn(a: &Hypergraph, b: &Hypergraph) -> Hypergraph {
    join(a, b).expect("disjoint vertex sets")
}

fn bx(a: &Hypergraph, b: &Hypergraph) -> Hypergraph {
    box_product(a, b).expect("small product")
}

/// `a` with its vertices reordered to `target`, which holds the same labels.
fn reorder(a: &Hypergraph, target: &VertexSet) -> Hypergraph {
    let pairs: Vec<(&str, &str)> = a.vertices().labels().iter().map(|l| (l.as_str(), l.as_str())).collect();
    let f = VertexMap::from_labels(a.vertices().clone(), target.clone(), pairs).expect("same labels");
    apply_vertex_map(&f, a).expect("matching domain")
}

/// `H₁□(H₂∗H₃)` and `(H₁□H₂)∗(H₁□H₃)`, the latter reordered onto the
/// former's vertex set.
fn box_over_join(h: &[Hypergraph]) -> (Hypergraph, Hypergraph) {
    let lhs = bx(&h[0], &jn(&h[1], &h[2]));
    let rhs = jn(&bx(&h[0], &h[1]), &bx(&h[0], &h[2]));
    let rhs = reorder(&rhs, lhs.vertices());
    (lhs, rhs)
}

fn relation_table() -> Vec<Relation> {
    use UnaryOp::*;
    vec![
        Relation { name: "rel-1-comp-involution", shape: Shape::Unary, holds: |h| word(&[Complement, Complement], &h[0]) == h[0] },
        Relation { name: "rel-2-iup-is-comp-down-comp", shape: Shape::Unary, holds: |h| ap(AssocIndep, &h[0]) == word(&[Complement, LowerComplex, Complement], &h[0]) },
        Relation { name: "rel-2-idown-is-comp-up-comp", shape: Shape::Unary, holds: |h| ap(LowerIndep, &h[0]) == word(&[Complement, AssocComplex, Complement], &h[0]) },
        Relation { name: "rel-3-up-down", shape: Shape::Unary, holds: |h| word(&[LowerComplex, AssocComplex], &h[0]) == ap(LowerComplex, &h[0]) },
        Relation { name: "rel-3-iup-idown", shape: Shape::Unary, holds: |h| word(&[LowerIndep, AssocIndep], &h[0]) == ap(LowerIndep, &h[0]) },
        Relation { name: "rel-3-down-up", shape: Shape::Unary, holds: |h| word(&[AssocComplex, LowerComplex], &h[0]) == ap(AssocComplex, &h[0]) },
        Relation { name: "rel-3-idown-iup", shape: Shape::Unary, holds: |h| word(&[AssocIndep, LowerIndep], &h[0]) == ap(AssocIndep, &h[0]) },
        Relation { name: "rel-4-up-idempotent", shape: Shape::Unary, holds: |h| word(&[AssocComplex, AssocComplex], &h[0]) == ap(AssocComplex, &h[0]) },
        Relation { name: "rel-4-iup-idempotent", shape: Shape::Unary, holds: |h| word(&[AssocIndep, AssocIndep], &h[0]) == ap(AssocIndep, &h[0]) },
        Relation { name: "rel-4-down-idempotent", shape: Shape::Unary, holds: |h| word(&[LowerComplex, LowerComplex], &h[0]) == ap(LowerComplex, &h[0]) },
        Relation { name: "rel-4-idown-idempotent", shape: Shape::Unary, holds: |h| word(&[LowerIndep, LowerIndep], &h[0]) == ap(LowerIndep, &h[0]) },
        Relation { name: "rel-5-down-iup-squared", shape: Shape::Unary, holds: |h| word(&[AssocIndep, LowerComplex, AssocIndep, LowerComplex], &h[0]) == word(&[AssocIndep, LowerComplex], &h[0]) },
        Relation { name: "rel-5-iup-down-squared", shape: Shape::Unary, holds: |h| word(&[LowerComplex, AssocIndep, LowerComplex, AssocIndep], &h[0]) == word(&[LowerComplex, AssocIndep], &h[0]) },
        Relation { name: "rel-5-up-idown-squared", shape: Shape::Unary, holds: |h| word(&[LowerIndep, AssocComplex, LowerIndep, AssocComplex], &h[0]) == word(&[LowerIndep, AssocComplex], &h[0]) },
        Relation { name: "rel-5-idown-up-squared", shape: Shape::Unary, holds: |h| word(&[AssocComplex, LowerIndep, AssocComplex, LowerIndep], &h[0]) == word(&[AssocComplex, LowerIndep], &h[0]) },
        Relation {
            name: "rel-6-up-iup-display",
            shape: Shape::Unary,
            holds: |h| {
                let expected = if h[0].is_empty() { Hypergraph::empty(h[0].vertices().clone()) } else { Hypergraph::full(h[0].vertices().clone()) };
                word(&[AssocIndep, AssocComplex], &h[0]) == expected
            },
        },
        Relation {
            name: "rel-6-up-idown-display",
            shape: Shape::Unary,
            holds: |h| {
                let v = h[0].vertices().clone();
                let top = crate::hypergraph::Edge::new(v.full_mask()).expect("nonempty");
                let expected = if h[0].contains(top) { Hypergraph::full(v) } else { Hypergraph::empty(v) };
                word(&[LowerIndep, AssocComplex], &h[0]) == expected
            },
        },
        Relation {
            name: "rel-6-up-iup-chain",
            shape: Shape::Unary,
            holds: |h| {
                let base = word(&[AssocIndep, AssocComplex], &h[0]);
                [AssocComplex, AssocIndep, LowerComplex, LowerIndep].iter().all(|&op| op.apply(&base) == base)
            },
        },
        Relation {
            name: "rel-6-up-idown-chain",
            shape: Shape::Unary,
            holds: |h| {
                let base = word(&[LowerIndep, AssocComplex], &h[0]);
                [AssocComplex, AssocIndep, LowerComplex, LowerIndep].iter().all(|&op| op.apply(&base) == base)
            },
        },
        Relation { name: "law-i-comp-cap", shape: Shape::Pair, holds: |h| ap(Complement, &cap(&h[0], &h[1])) == cup(&ap(Complement, &h[0]), &ap(Complement, &h[1])) },
        Relation { name: "law-i-comp-cup", shape: Shape::Pair, holds: |h| ap(Complement, &cup(&h[0], &h[1])) == cap(&ap(Complement, &h[0]), &ap(Complement, &h[1])) },
        Relation { name: "law-ii-up-cap-subset", shape: Shape::Pair, holds: |h| ap(AssocComplex, &cap(&h[0], &h[1])).is_subset_of(&cap(&ap(AssocComplex, &h[0]), &ap(AssocComplex, &h[1]))) },
        Relation { name: "law-ii-up-cup", shape: Shape::Pair, holds: |h| ap(AssocComplex, &cup(&h[0], &h[1])) == cup(&ap(AssocComplex, &h[0]), &ap(AssocComplex, &h[1])) },
        Relation { name: "law-iii-down-cap", shape: Shape::Pair, holds: |h| ap(LowerComplex, &cap(&h[0], &h[1])) == cap(&ap(LowerComplex, &h[0]), &ap(LowerComplex, &h[1])) },
        Relation { name: "law-iii-down-cup-superset", shape: Shape::Pair, holds: |h| cup(&ap(LowerComplex, &h[0]), &ap(LowerComplex, &h[1])).is_subset_of(&ap(LowerComplex, &cup(&h[0], &h[1]))) },
        Relation { name: "law-iv-iup-cap-subset", shape: Shape::Pair, holds: |h| ap(AssocIndep, &cap(&h[0], &h[1])).is_subset_of(&cap(&ap(AssocIndep, &h[0]), &ap(AssocIndep, &h[1]))) },
        Relation { name: "law-iv-iup-cup", shape: Shape::Pair, holds: |h| ap(AssocIndep, &cup(&h[0], &h[1])) == cup(&ap(AssocIndep, &h[0]), &ap(AssocIndep, &h[1])) },
        Relation { name: "law-v-idown-cap", shape: Shape::Pair, holds: |h| ap(LowerIndep, &cap(&h[0], &h[1])) == cap(&ap(LowerIndep, &h[0]), &ap(LowerIndep, &h[1])) },
        Relation { name: "law-v-idown-cup-superset", shape: Shape::Pair, holds: |h| cup(&ap(LowerIndep, &h[0]), &ap(LowerIndep, &h[1])).is_subset_of(&ap(LowerIndep, &cup(&h[0], &h[1]))) },
        Relation { name: "join-i-up", shape: Shape::Disjoint, holds: |h| ap(AssocComplex, &jn(&h[0], &h[1])) == jn(&ap(AssocComplex, &h[0]), &ap(AssocComplex, &h[1])) },
        Relation { name: "join-ii-down", shape: Shape::Disjoint, holds: |h| ap(LowerComplex, &jn(&h[0], &h[1])) == jn(&ap(LowerComplex, &h[0]), &ap(LowerComplex, &h[1])) },
        Relation { name: "join-iii-iup", shape: Shape::Disjoint, holds: |h| ap(AssocIndep, &jn(&h[0], &h[1])) == jn(&ap(AssocIndep, &h[0]), &ap(AssocIndep, &h[1])) },
        Relation { name: "join-iv-idown", shape: Shape::Disjoint, holds: |h| ap(LowerIndep, &jn(&h[0], &h[1])) == jn(&ap(LowerIndep, &h[0]), &ap(LowerIndep, &h[1])) },
        Relation { name: "dist-v-join-cup", shape: Shape::Triple, holds: |h| jn(&h[0], &cup(&h[1], &h[2])) == cup(&jn(&h[0], &h[1]), &jn(&h[0], &h[2])) },
        Relation { name: "dist-vi-join-cap", shape: Shape::Triple, holds: |h| jn(&h[0], &cap(&h[1], &h[2])) == cap(&jn(&h[0], &h[1]), &jn(&h[0], &h[2])) },
        Relation { name: "dist-vii-box-cup", shape: Shape::Triple, holds: |h| bx(&h[0], &cup(&h[1], &h[2])) == cup(&bx(&h[0], &h[1]), &bx(&h[0], &h[2])) },
        Relation { name: "dist-viii-box-cap", shape: Shape::Triple, holds: |h| bx(&h[0], &cap(&h[1], &h[2])) == cap(&bx(&h[0], &h[1]), &bx(&h[0], &h[2])) },
        Relation {
            name: "dist-ix-box-join",
            shape: Shape::DisjointTriple,
            holds: |h| {
                let (lhs, rhs) = box_over_join(h);
                lhs == rhs
            },
        },
    ]
}

/// Inclusions that remain when an equality of the suite fails. Reported
/// alongside the suite but not part of it.
fn inclusion_table() -> Vec<Relation> {
    use UnaryOp::*;
    vec![
        Relation { name: "join-iii-iup-superset", shape: Shape::Disjoint, holds: |h| jn(&ap(AssocIndep, &h[0]), &ap(AssocIndep, &h[1])).is_subset_of(&ap(AssocIndep, &jn(&h[0], &h[1]))) },
        Relation { name: "join-iv-idown-subset", shape: Shape::Disjoint, holds: |h| ap(LowerIndep, &jn(&h[0], &h[1])).is_subset_of(&jn(&ap(LowerIndep, &h[0]), &ap(LowerIndep, &h[1]))) },
        Relation {
            name: "dist-ix-box-join-subset",
            shape: Shape::DisjointTriple,
            holds: |h| {
                let (lhs, rhs) = box_over_join(h);
                lhs.is_subset_of(&rhs)
            },
        },
    ]
}

/// Every input tuple of the exhaustive part.
fn exhaustive_inputs(shape: Shape) -> Result<Vec<Vec<Hypergraph>>> {
    let mut tuples: Vec<Vec<Hypergraph>> = vec![Vec::new()];
    for v in shape.sets(shape.exhaustive_size()) {
        let all: Vec<Hypergraph> = enumerate_hypergraphs(&v, None)?.collect();
        tuples = tuples
            .into_iter()
            .flat_map(|t| all.iter().map(move |h| [t.clone(), vec![h.clone()]].concat()))
            .collect();
    }
    Ok(tuples)
}

/// The random tuple for `case`: each input drawn from `P̄_{0.5}` on five
/// vertices, in order, from stream `(seed, case)`.
fn random_input(shape: Shape, seed: u64, case: u64) -> Vec<Hypergraph> {
    let mut stream = SampleStream::for_trial(seed, case);
    shape
        .sets(5)
        .into_iter()
        .map(|v| sample_hypergraph(&ProbabilityMap::constant(v, 0.5).expect("valid probability"), &mut stream))
        .collect()
}

fn relation_report(r: &Relation, seed: u64) -> Result<CheckReport> {
    let exhaustive = exhaustive_inputs(r.shape)?;
    let failures_exhaustive = exhaustive.par_iter().filter(|t| !(r.holds)(t)).count() as u64;
    let failures_random = (0..RANDOM_RELATION_CASES)
        .into_par_iter()
        .filter(|&case| !(r.holds)(&random_input(r.shape, seed, case)))
        .count() as u64;
    Ok(CheckReport::new(
        r.name,
        format!(
            "exhaustive={}@|V|={} exhaustive-failures={failures_exhaustive} random={RANDOM_RELATION_CASES}@|V|=5 random-failures={failures_random} seed={seed}",
            exhaustive.len(),
            r.shape.exhaustive_size()
        ),
        Metric::Mismatches,
        (failures_exhaustive + failures_random) as f64,
        0.0,
    ))
}

/// Names of the relation suite, in report order.
pub fn relation_names() -> Vec<&'static str> {
    relation_table().iter().map(|r| r.name).collect()
}

/// The identity suite: one report per relation. Reports for the
/// inclusions that survive failed equalities are appended as advisory.
fn relations(params: &CheckParams) -> Result<Vec<CheckReport>> {
    let mut out: Vec<CheckReport> =
        relation_table().iter().map(|r| relation_report(r, params.seed)).collect::<Result<_>>()?;
    for r in inclusion_table() {
        out.push(relation_report(&r, params.seed)?.advisory());
    }
    Ok(out)
}

fn example_fixtures() -> Result<Vec<CheckReport>> {
    Ok(example_outcomes()?
        .into_iter()
        .map(|o| {
            CheckReport::new(
                format!("example-{}", o.name),
                format!("expr={} computed-edges={}", o.expr, o.computed.len()),
                Metric::Mismatches,
                o.mismatches as f64,
                0.0,
            )
        })
        .collect())
}

fn sampler_stat(family: ModelFamily, params: &CheckParams) -> Result<Vec<CheckReport>> {
    let v = params.single_set();
    let p = params.single_map(&v)?;
    let model = ModelDescriptor::new(family, p);
    let empirical = empirical_model_table(&model, params.trials, params.seed)?;
    let exact = exact_table(&model)?;
    let tv = total_variation(&empirical, &exact)?;
    let chi = chi_square(&empirical, &exact, params.trials)?;
    let name = format!("sampler-stat-{}", family.keyword());
    let desc = format!("V={} model={model} trials={} seed={}", labels(&v), params.trials, params.seed);
    Ok(vec![
        CheckReport::new(name.clone(), desc.clone(), Metric::TotalVariation, tv, params.threshold(SAMPLER_TV_THRESHOLD)),
        CheckReport::new(name, format!("{desc} dof={}", chi.dof), Metric::ChiSquare, chi.statistic, chi.critical)
            .advisory(),
    ])
}

/// `δ` (resp. `δ̄`) of `P̄_p` samples against direct `P_p` (resp. `Q_p`)
/// samples; the direct side uses seed `seed + 1`.
fn cross_sampler(params: &CheckParams) -> Result<Vec<CheckReport>> {
    let v = params.single_set();
    let p = params.single_map(&v)?;
    [("down($0)", ModelFamily::P), ("idown($0)", ModelFamily::Q)]
        .into_iter()
        .map(|(expr, family)| {
            let via = empirical_table(&parse_expr(expr)?, std::slice::from_ref(&p), params.trials, params.seed)?;
            let model = ModelDescriptor::new(family, p.clone());
            let direct = empirical_model_table(&model, params.trials, params.seed.wrapping_add(1))?;
            Ok(CheckReport::new(
                format!("cross-sampler-{}", family.keyword()),
                format!(
                    "V={} expr={expr} model={model} trials={} seed={}",
                    labels(&v),
                    params.trials,
                    params.seed
                ),
                Metric::TotalVariation,
                total_variation(&via, &direct)?,
                params.threshold(CROSS_SAMPLER_TV_THRESHOLD),
            ))
        })
        .collect()
}

/// Runs `PIPELINE_RUNS` random configs, config `i` from seed `seed + i`
/// with leaves drawn from `P̄_{0.5}` on stream `(seed, i)`, and counts
/// results outside the expected class.
fn pipeline_class(kind: PipelineKind, params: &CheckParams) -> Result<Vec<CheckReport>> {
    let violations: Vec<bool> = (0..PIPELINE_RUNS)
        .into_par_iter()
        .map(|i| {
            let cfg = PipelineConfig::random(kind, params.seed.wrapping_add(i));
            let e = build_pipeline(&cfg)?;
            let mut stream = SampleStream::for_trial(params.seed, i);
            let inputs: Vec<Hypergraph> = cfg
                .leaf_vertex_sets()
                .into_iter()
                .map(|v| sample_hypergraph(&ProbabilityMap::constant(v, 0.5).expect("valid probability"), &mut stream))
                .collect();
            let out = eval_expr(&e, &inputs)?;
            Ok(match kind {
                PipelineKind::Complex => !out.is_complex(),
                PipelineKind::Independence => !out.is_independence(),
                PipelineKind::Hypergraph => false,
            })
        })
        .collect::<Result<_>>()?;
    let count = violations.iter().filter(|&&v| v).count();
    Ok(vec![CheckReport::new(
        format!("pipeline-class-{}", kind.keyword()),
        format!("runs={PIPELINE_RUNS} seed={}", params.seed),
        Metric::Mismatches,
        count as f64,
        0.0,
    )])
}
