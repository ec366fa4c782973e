use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{BinaryOp, Expr};
use crate::error::{Error, Result};
use crate::hypergraph::{SetOp, UnaryOp, VertexSet};

/// Which of the three generation algorithms a config describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PipelineKind {
    Hypergraph,
    Complex,
    Independence,
}

impl PipelineKind {
    pub const ALL: [PipelineKind; 3] = [PipelineKind::Hypergraph, PipelineKind::Complex, PipelineKind::Independence];

    pub fn keyword(self) -> &'static str {
        match self {
            PipelineKind::Hypergraph => "hypergraph",
            PipelineKind::Complex => "complex",
            PipelineKind::Independence => "indep",
        }
    }

    pub fn from_keyword(word: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.keyword() == word)
    }

    /// The closure operators allowed on leaves and as cross-step wrappers.
    pub fn closures(self) -> &'static [UnaryOp] {
        match self {
            PipelineKind::Hypergraph => &[],
            PipelineKind::Complex => &[UnaryOp::AssocComplex, UnaryOp::LowerComplex],
            PipelineKind::Independence => &[UnaryOp::AssocIndep, UnaryOp::LowerIndep],
        }
    }
}

impl fmt::Display for PipelineKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

/// One vertex set `V_i` with its `n_i` leaves.
#[derive(Clone, Debug, PartialEq)]
pub struct PipelineBlock {
    pub vertices: VertexSet,
    /// Word `w_{j,i}` for each leaf, innermost operator first.
    pub words: Vec<Vec<UnaryOp>>,
    /// `Δ`/`δ` (or `Δ̄`/`δ̄`) applied after each leaf's word; empty for the
    /// hypergraph kind.
    pub closures: Vec<UnaryOp>,
    /// Leaves in the order they are folded together.
    pub order: Vec<usize>,
    /// The `n_i − 1` fold operations.
    pub ops: Vec<SetOp>,
}

impl PipelineBlock {
    /// A block of `n` untouched leaves folded left to right with `op`.
    pub fn uniform(vertices: VertexSet, n: usize, op: SetOp) -> Self {
        Self {
            vertices,
            words: vec![Vec::new(); n],
            closures: Vec::new(),
            order: (0..n).collect(),
            ops: vec![op; n.saturating_sub(1)],
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.words.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CrossOp {
    Join,
    Box,
}

/// One cross-block step; `wrapper` is applied to the step's result.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CrossStep {
    pub op: CrossOp,
    pub wrapper: Option<UnaryOp>,
}

impl CrossStep {
    pub fn join() -> Self {
        Self { op: CrossOp::Join, wrapper: None }
    }

    pub fn wrapped(op: CrossOp, wrapper: UnaryOp) -> Self {
        Self { op, wrapper: Some(wrapper) }
    }
}

/// Every choice made by one run of a generation algorithm.
#[derive(Clone, Debug, PartialEq)]
pub struct PipelineConfig {
    pub kind: PipelineKind,
    pub blocks: Vec<PipelineBlock>,
    /// Blocks in the order they are combined; the running result is the
    /// left operand.
    pub cross_order: Vec<usize>,
    /// The `k − 1` cross-block steps.
    pub cross_steps: Vec<CrossStep>,
    /// Applied last; hypergraph kind only.
    pub final_word: Vec<UnaryOp>,
}

fn is_permutation(order: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    order.len() == n && order.iter().all(|&i| i < n && !std::mem::replace(&mut seen[i], true))
}

fn malformed(msg: String) -> Error {
    Error::Pipeline(msg)
}

impl PipelineConfig {
    pub fn validate(&self) -> Result<()> {
        let closures = self.kind.closures();
        if self.blocks.is_empty() {
            return Err(malformed("at least one block is required".into()));
        }
        for (i, b) in self.blocks.iter().enumerate() {
            let n = b.leaf_count();
            if n == 0 {
                return Err(malformed(format!("block {i} has no leaves")));
            }
            if b.vertices.is_empty() {
                return Err(malformed(format!("block {i} has an empty vertex set")));
            }
            match self.kind {
                PipelineKind::Hypergraph if !b.closures.is_empty() => {
                    return Err(malformed(format!("block {i}: leaf closures need a complex or indep pipeline")));
                }
                PipelineKind::Complex | PipelineKind::Independence
                    if b.closures.len() != n || b.closures.iter().any(|c| !closures.contains(c)) =>
                {
                    return Err(malformed(format!(
                        "block {i}: each of the {n} leaves needs a closure from {{{}}}",
                        closures.iter().map(|c| c.keyword()).collect::<Vec<_>>().join(", ")
                    )));
                }
                _ => {}
            }
            if !is_permutation(&b.order, n) {
                return Err(malformed(format!("block {i}: fold order is not a permutation of 0..{n}")));
            }
            if b.ops.len() != n - 1 {
                return Err(malformed(format!("block {i}: expected {} fold operations, got {}", n - 1, b.ops.len())));
            }
        }
        let k = self.blocks.len();
        if !is_permutation(&self.cross_order, k) {
            return Err(malformed(format!("cross order is not a permutation of 0..{k}")));
        }
        if self.cross_steps.len() != k - 1 {
            return Err(malformed(format!("expected {} cross steps, got {}", k - 1, self.cross_steps.len())));
        }
        for (s, step) in self.cross_steps.iter().enumerate() {
            let ok = match (self.kind, step.op, step.wrapper) {
                (PipelineKind::Hypergraph, _, None) => true,
                (PipelineKind::Hypergraph, _, Some(_)) => false,
                (PipelineKind::Complex, CrossOp::Join, None) => true,
                (PipelineKind::Complex | PipelineKind::Independence, _, Some(w)) => closures.contains(&w),
                _ => false,
            };
            if !ok {
                return Err(malformed(format!("cross step {s} has a wrapper not allowed for a {} pipeline", self.kind)));
            }
        }
        if self.kind != PipelineKind::Hypergraph && !self.final_word.is_empty() {
            return Err(malformed("a final word is only allowed for a hypergraph pipeline".into()));
        }
        Ok(())
    }

    /// Input vertex sets in slot order: block by block, leaves in index
    /// order.
    pub fn leaf_vertex_sets(&self) -> Vec<VertexSet> {
        self.blocks
            .iter()
            .flat_map(|b| std::iter::repeat_n(b.vertices.clone(), b.leaf_count()))
            .collect()
    }

    /// A config with every choice drawn from `seed`: up to 3 blocks of up to
    /// 3 vertices and 3 leaves, words of length at most 2. A `□` step that
    /// would take the running result past 12 vertices becomes `∗`.
    pub fn random(kind: PipelineKind, seed: u64) -> Self {
        const MAX_RUNNING: usize = 12;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let word = |rng: &mut ChaCha8Rng| -> Vec<UnaryOp> {
            let len = rng.gen_range(0..=2);
            (0..len).map(|_| *UnaryOp::ALL.choose(rng).expect("nonempty")).collect()
        };
        let k = rng.gen_range(1..=3);
        let closures = kind.closures();
        let blocks: Vec<PipelineBlock> = (0..k)
            .map(|i| {
                let size = rng.gen_range(1..=3);
                let n = rng.gen_range(1..=3);
                let mut order: Vec<usize> = (0..n).collect();
                order.shuffle(&mut rng);
                PipelineBlock {
                    vertices: VertexSet::numbered(&format!("x{i}_"), size).expect("small block"),
                    words: (0..n).map(|_| word(&mut rng)).collect(),
                    closures: if closures.is_empty() {
                        Vec::new()
                    } else {
                        (0..n).map(|_| *closures.choose(&mut rng).expect("nonempty")).collect()
                    },
                    order,
                    ops: (0..n - 1)
                        .map(|_| if rng.gen() { SetOp::Intersect } else { SetOp::Union })
                        .collect(),
                }
            })
            .collect();
        let mut cross_order: Vec<usize> = (0..k).collect();
        cross_order.shuffle(&mut rng);
        let mut running = blocks[cross_order[0]].vertices.len();
        let cross_steps = cross_order[1..]
            .iter()
            .map(|&b| {
                let next = blocks[b].vertices.len();
                let want_box = rng.gen::<bool>();
                let op = if want_box && running * next <= MAX_RUNNING { CrossOp::Box } else { CrossOp::Join };
                running = if op == CrossOp::Box { running * next } else { running + next };
                let wrapper = match (kind, op) {
                    (PipelineKind::Hypergraph, _) => None,
                    (PipelineKind::Complex, CrossOp::Join) => None,
                    _ => Some(*closures.choose(&mut rng).expect("nonempty")),
                };
                CrossStep { op, wrapper }
            })
            .collect();
        let final_word = if kind == PipelineKind::Hypergraph { word(&mut rng) } else { Vec::new() };
        Self { kind, blocks, cross_order, cross_steps, final_word }
    }
}

/// The word realizing one run of the configured algorithm. Slots are
/// numbered block by block, matching [`PipelineConfig::leaf_vertex_sets`].
pub fn build_pipeline(cfg: &PipelineConfig) -> Result<Expr> {
    cfg.validate()?;
    let mut offset = 0;
    let mut block_exprs = Vec::with_capacity(cfg.blocks.len());
    for b in &cfg.blocks {
        let leaf = |j: usize| {
            let e = Expr::leaf(offset + j).apply_word(&b.words[j]);
            match b.closures.get(j) {
                Some(&c) => Expr::unary(c, e),
                None => e,
            }
        };
        let mut acc = leaf(b.order[0]);
        for (&j, &op) in b.order[1..].iter().zip(&b.ops) {
            let op = match op {
                SetOp::Intersect => BinaryOp::Intersect,
                SetOp::Union => BinaryOp::Union,
            };
            acc = Expr::binary(op, acc, leaf(j));
        }
        offset += b.leaf_count();
        block_exprs.push(Some(acc));
    }
    let mut take = |i: usize| block_exprs[i].take().expect("cross order is a permutation");
    let mut acc = take(cfg.cross_order[0]);
    for (&i, step) in cfg.cross_order[1..].iter().zip(&cfg.cross_steps) {
        let op = match step.op {
            CrossOp::Join => BinaryOp::Join,
            CrossOp::Box => BinaryOp::Box,
        };
        acc = Expr::binary(op, acc, take(i));
        if let Some(w) = step.wrapper {
            acc = Expr::unary(w, acc);
        }
    }
    let e = acc.apply_word(&cfg.final_word);
    super::infer_signature(&e, &cfg.leaf_vertex_sets())?;
    Ok(e)
}
