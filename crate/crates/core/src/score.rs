//! Min-max scoring of evaluated trees over locally consistent relabelings.
//!
//! For a node `x` and symbol `a`, `best_a(x)` is the smallest possible worst
//! path disagreement strictly below `x` over consistent labelings of the
//! subtree with `x` labelled `a`. Leaves have `best = 0`; at an internal node
//!
//! ```text
//! best_a(x) = min over child labels (a_1..a_q) with Σ w_r a_r = a
//!             of max_r ( best_{a_r}(y_r) + [τ(y_r) ≠ a_r] )
//! ```
//!
//! and `Score(a) = best_a(root) + [τ(root) ≠ a]`, counted in nodes out of
//! `L + 1` per path.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::PrimeOps;
use crate::tree::EvaluatedTree;

/// Marks an unattainable root symbol.
pub const UNREACHABLE: u32 = u32::MAX;
/// Bound on `|Σ|^q` for per-node enumeration.
pub const ENUMERATION_LIMIT: u128 = 1 << 20;
/// Bound on `|Σ|^leaves` for the exhaustive oracle.
pub const BRUTEFORCE_LIMIT: u128 = 1 << 20;

/// How the constrained minimum over child labelings is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubsetStrategy {
    /// Every tuple in `Σ^q`.
    Enumerate,
    /// Running min-max over partial sums `Σ w_r a_r`.
    #[default]
    SumDp,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScoreTable {
    /// Unnormalised worst-path disagreement per root symbol.
    pub scores: Vec<u32>,
    pub path_len: usize,
    pub observed_root: u8,
}

impl ScoreTable {
    /// Minimiser of the score. Among ties the symbol closest to the observed
    /// root in cyclic order `(a - τ(root)) mod p` wins; the flag reports
    /// whether a tie occurred.
    pub fn argmin(&self) -> (u8, bool) {
        let p = self.scores.len();
        let best = *self.scores.iter().min().expect("nonempty alphabet");
        let mut winners = (0..p).filter(|&a| self.scores[a] == best);
        let first = winners.next().expect("minimum is attained");
        let ambiguous = winners.next().is_some();
        let root = self.observed_root as usize;
        let pick = (0..p)
            .map(|off| (root + off) % p)
            .find(|&a| self.scores[a] == best)
            .unwrap_or(first);
        (pick as u8, ambiguous)
    }

    /// Scores divided by the path length, `None` when unreachable.
    pub fn normalized(&self) -> Vec<Option<f64>> {
        self.scores
            .iter()
            .map(|&s| (s != UNREACHABLE).then(|| s as f64 / self.path_len as f64))
            .collect()
    }

    /// Gap between the two smallest scores.
    pub fn margin(&self) -> u32 {
        let mut s = self.scores.clone();
        s.sort_unstable();
        match s.as_slice() {
            [a, b, ..] => b.saturating_sub(*a),
            _ => UNREACHABLE,
        }
    }
}

/// Computes the full score table by the bottom-up dynamic program.
pub fn score_table(tau: &EvaluatedTree, ops: &PrimeOps, strategy: SubsetStrategy) -> Result<ScoreTable> {
    let shape = tau.shape();
    let p = ops.p() as usize;
    let q = shape.arity();
    if strategy == SubsetStrategy::Enumerate && shape.internal_count() > 0 {
        let size = (p as u128).checked_pow(q as u32).unwrap_or(u128::MAX);
        if size > ENUMERATION_LIMIT {
            return Err(Error::TooLarge {
                what: "child labelings per node",
                size,
                limit: ENUMERATION_LIMIT,
            });
        }
    }
    let labels = tau.labels();
    let internal = shape.internal_count();
    // best values for internal nodes only; leaves are identically zero
    let mut best = vec![0u32; internal * p];
    let mut f = vec![0u32; q * p];
    let mut scratch = Scratch::new(p, q);
    for k in (0..internal).rev() {
        for (r, c) in shape.children(k).enumerate() {
            for b in 0..p {
                let below = if c < internal { best[c * p + b] } else { 0 };
                f[r * p + b] = below.saturating_add(u32::from(labels[c] as usize != b));
            }
        }
        let out = &mut best[k * p..(k + 1) * p];
        match strategy {
            SubsetStrategy::Enumerate => enumerate_node(ops, shape.weights(k), &f, out, &mut scratch),
            SubsetStrategy::SumDp => sum_dp_node(ops, shape.weights(k), &f, out, &mut scratch),
        }
    }
    let root_best = |a: usize| if internal > 0 { best[a] } else { 0 };
    let scores = (0..p)
        .map(|a| root_best(a).saturating_add(u32::from(labels[0] as usize != a)))
        .collect();
    Ok(ScoreTable {
        scores,
        path_len: shape.path_len(),
        observed_root: labels[0],
    })
}

/// Corrected root symbol with its score table.
pub fn correct_subtree(
    tau: &EvaluatedTree,
    ops: &PrimeOps,
    strategy: SubsetStrategy,
) -> Result<(u8, bool, ScoreTable)> {
    let table = score_table(tau, ops, strategy)?;
    let (a, ambiguous) = table.argmin();
    Ok((a, ambiguous, table))
}

struct Scratch {
    tuple: Vec<usize>,
    g: Vec<u32>,
    next: Vec<u32>,
}

impl Scratch {
    fn new(p: usize, q: usize) -> Self {
        Self {
            tuple: vec![0; q],
            g: vec![0; p],
            next: vec![0; p],
        }
    }
}

fn enumerate_node(ops: &PrimeOps, weights: &[u8], f: &[u32], out: &mut [u32], s: &mut Scratch) {
    let p = out.len();
    out.fill(UNREACHABLE);
    let q = weights.len();
    s.tuple.iter_mut().for_each(|x| *x = 0);
    loop {
        let mut sum = 0u8;
        let mut cost = 0u32;
        for r in 0..q {
            sum = ops.add(sum, ops.mul(weights[r], s.tuple[r] as u8));
            cost = cost.max(f[r * p + s.tuple[r]]);
        }
        let slot = &mut out[sum as usize];
        *slot = (*slot).min(cost);
        let mut r = 0;
        while r < q {
            s.tuple[r] += 1;
            if s.tuple[r] < p {
                break;
            }
            s.tuple[r] = 0;
            r += 1;
        }
        if r == q {
            break;
        }
    }
}

/// `g_r(s) = min_b max(g_{r-1}(s - w_r b), f_r(b))`, `g_0 = [0, ∞, …]`.
fn sum_dp_node(ops: &PrimeOps, weights: &[u8], f: &[u32], out: &mut [u32], s: &mut Scratch) {
    let p = out.len();
    s.g.fill(UNREACHABLE);
    s.g[0] = 0;
    for (r, &w) in weights.iter().enumerate() {
        let fr = &f[r * p..(r + 1) * p];
        s.next.fill(UNREACHABLE);
        for prev in 0..p {
            let gp = s.g[prev];
            if gp == UNREACHABLE {
                continue;
            }
            for (b, &fb) in fr.iter().enumerate() {
                let sum = ops.add(prev as u8, ops.mul(w, b as u8)) as usize;
                let cost = gp.max(fb);
                if cost < s.next[sum] {
                    s.next[sum] = cost;
                }
            }
        }
        std::mem::swap(&mut s.g, &mut s.next);
    }
    out.copy_from_slice(&s.g);
}

/// Exact score table by enumerating every leaf labeling.
///
/// Internal labels of a consistent tree are determined by its leaves, so
/// the leaf labelings enumerate all consistent trees.
pub fn score_bruteforce(tau: &EvaluatedTree, ops: &PrimeOps) -> Result<ScoreTable> {
    let shape = tau.shape();
    let p = ops.p() as usize;
    let leaves = shape.leaf_count();
    let size = (p as u128).checked_pow(leaves as u32).unwrap_or(u128::MAX);
    if size > BRUTEFORCE_LIMIT {
        return Err(Error::TooLarge {
            what: "leaf labelings",
            size,
            limit: BRUTEFORCE_LIMIT,
        });
    }
    let internal = shape.internal_count();
    let nodes = shape.node_count();
    let obs = tau.labels();
    let mut scores = vec![UNREACHABLE; p];
    let mut sigma = vec![0u8; nodes];
    let mut worst = vec![0u32; nodes];
    for index in 0..size as u64 {
        let mut rest = index;
        for slot in sigma[internal..].iter_mut() {
            *slot = (rest % p as u64) as u8;
            rest /= p as u64;
        }
        for k in (0..nodes).rev() {
            let mut below = 0;
            if k < internal {
                let mut label = 0u8;
                for (c, &w) in shape.children(k).zip(shape.weights(k)) {
                    label = ops.add(label, ops.mul(w, sigma[c]));
                    below = below.max(worst[c]);
                }
                sigma[k] = label;
            }
            worst[k] = below + u32::from(sigma[k] != obs[k]);
        }
        let a = sigma[0] as usize;
        scores[a] = scores[a].min(worst[0]);
    }
    Ok(ScoreTable {
        scores,
        path_len: shape.path_len(),
        observed_root: obs[0],
    })
}
