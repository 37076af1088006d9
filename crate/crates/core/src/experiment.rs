//! Noise injection, success curves, and walk-tail measurements.

use std::io::Write;
use std::path::Path;

use rand::seq::index::sample;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corrector::correct;
use crate::error::{Error, Result};
use crate::graph::{random_walk, DoubleCover, StartDistribution};
use crate::planner::CorrectionParams;
use crate::recon::SmoothReconstruction;
use crate::rng;
use crate::score::SubsetStrategy;
use crate::tanner::TannerCode;

pub const WILSON_Z: f64 = 1.959964;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum NoiseModel {
    /// `floor(ρN)` distinct uniformly random positions.
    Random { rho: f64 },
    /// A fixed list of positions.
    Pattern { positions: Vec<usize> },
}

impl NoiseModel {
    pub fn random(rho: f64) -> Self {
        Self::Random { rho }
    }

    /// Number of corrupted positions in a word of length `n`.
    pub fn count(&self, n: usize) -> usize {
        match self {
            Self::Random { rho } => (rho * n as f64 + 1e-9).floor() as usize,
            Self::Pattern { positions } => positions.len(),
        }
    }
}

/// Reads a position list: a JSON array or whitespace/comma separated integers.
pub fn load_pattern(path: &Path) -> Result<Vec<usize>> {
    let text = std::fs::read_to_string(path)?;
    if text.trim_start().starts_with('[') {
        return Ok(serde_json::from_str(&text)?);
    }
    text.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Config(format!("{}: `{t}` is not a position", path.display())))
        })
        .collect()
}

/// Adds a uniform nonzero offset at each chosen position.
pub fn corrupt<R: Rng + ?Sized>(
    word: &[u8],
    model: &NoiseModel,
    p: u32,
    rng: &mut R,
) -> Result<(Vec<u8>, Vec<usize>)> {
    let n = word.len();
    let mut positions = match model {
        NoiseModel::Random { rho } => {
            if !(0.0..1.0).contains(rho) {
                return Err(Error::InvalidParameter(format!("ρ = {rho} must lie in [0, 1)")));
            }
            sample(rng, n, model.count(n)).into_vec()
        }
        NoiseModel::Pattern { positions } => {
            let mut v = positions.clone();
            v.sort_unstable();
            v.dedup();
            if let Some(&bad) = v.iter().find(|&&e| e >= n) {
                return Err(Error::PositionOutOfRange { position: bad, len: n });
            }
            v
        }
    };
    positions.sort_unstable();
    let mut out = word.to_vec();
    for &e in &positions {
        let delta = rng.random_range(1..p) as u8;
        out[e] = ((out[e] as u32 + delta as u32) % p) as u8;
    }
    Ok((out, positions))
}

/// `D(γ‖δ)` for Bernoulli laws.
pub fn kl(gamma: f64, delta: f64) -> Result<f64> {
    let inside = |x: f64| x > 0.0 && x < 1.0;
    if !inside(gamma) || !inside(delta) {
        return Err(Error::InvalidParameter(format!(
            "KL arguments must lie in (0, 1), got {gamma} and {delta}"
        )));
    }
    Ok(gamma * (gamma / delta).ln() + (1.0 - gamma) * ((1.0 - gamma) / (1.0 - delta)).ln())
}

/// `exp(-L·D(γ‖δ))`, or 1 when `δ ≥ γ` or `δ ≥ 1`.
pub fn tail_bound(gamma: f64, delta: f64, length: usize) -> Result<f64> {
    if delta >= 1.0 || delta >= gamma {
        return Ok(1.0);
    }
    if delta <= 0.0 {
        return Ok(0.0);
    }
    Ok((-(length as f64) * kl(gamma, delta)?).exp())
}

/// 95% Wilson score interval.
pub fn wilson(successes: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (0.0, 1.0);
    }
    let n = trials as f64;
    let ph = successes as f64 / n;
    let z2 = WILSON_Z * WILSON_Z;
    let denom = 1.0 + z2 / n;
    let center = (ph + z2 / (2.0 * n)) / denom;
    let half = WILSON_Z / denom * (ph * (1.0 - ph) / n + z2 / (4.0 * n * n)).sqrt();
    ((center - half).max(0.0), (center + half).min(1.0))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvePoint {
    pub rho: f64,
    pub successes: u64,
    pub trials: u64,
    pub mean_queries: f64,
    pub wilson_low: f64,
    pub wilson_high: f64,
    /// Trials whose leaf reads differed from `q^(l1+l2)`.
    pub accounting_mismatches: u64,
    pub ambiguous: u64,
}

impl CurvePoint {
    pub fn rate(&self) -> f64 {
        self.successes as f64 / self.trials.max(1) as f64
    }
}

/// Inputs shared by every correction trial.
#[derive(Clone, Copy)]
pub struct TrialSetup<'a> {
    pub code: &'a TannerCode,
    pub scheme: &'a SmoothReconstruction,
    pub params: &'a CorrectionParams,
    pub strategy: SubsetStrategy,
    /// Transmitted word; the zero codeword when absent.
    pub codeword: Option<&'a [u8]>,
}

struct TrialOutcome {
    success: bool,
    leaf_reads: u64,
    ambiguous: bool,
}

fn run_trial<R: Rng>(setup: &TrialSetup<'_>, base: &[u8], e0: usize, noise: &NoiseModel, rng: &mut R) -> Result<TrialOutcome> {
    let (word, _) = corrupt(base, noise, setup.code.p(), rng)?;
    let c = correct(setup.code, setup.scheme, &word, e0, setup.params, setup.strategy, rng)?;
    Ok(TrialOutcome {
        success: c.symbol == base[e0],
        leaf_reads: c.queries.leaf_reads,
        ambiguous: c.ambiguous,
    })
}

fn summarize(rho: f64, outcomes: &[TrialOutcome], expected: u64) -> CurvePoint {
    let trials = outcomes.len() as u64;
    let successes = outcomes.iter().filter(|o| o.success).count() as u64;
    let (wilson_low, wilson_high) = wilson(successes, trials);
    CurvePoint {
        rho,
        successes,
        trials,
        mean_queries: outcomes.iter().map(|o| o.leaf_reads as f64).sum::<f64>() / trials.max(1) as f64,
        wilson_low,
        wilson_high,
        accounting_mismatches: outcomes.iter().filter(|o| o.leaf_reads != expected).count() as u64,
        ambiguous: outcomes.iter().filter(|o| o.ambiguous).count() as u64,
    }
}

/// Success rate at uniformly random positions for each `ρ` of the grid.
///
/// Trial `t` at grid index `g` draws everything from substream
/// `(TRIAL, g, t)` of `seed`.
pub fn success_curve(setup: &TrialSetup<'_>, rho_grid: &[f64], trials: usize, seed: u64) -> Result<Vec<CurvePoint>> {
    let zero = setup.code.zero_codeword();
    let base = setup.codeword.unwrap_or(&zero);
    let n = setup.code.length();
    let expected = setup.params.leaf_reads(setup.scheme.query_count()) as u64;
    rho_grid
        .iter()
        .enumerate()
        .map(|(g, &rho)| {
            let noise = NoiseModel::random(rho);
            let outcomes = (0..trials)
                .into_par_iter()
                .map(|t| {
                    let mut r = rng::substream(seed, rng::TRIAL, g as u64, t as u64);
                    let e0 = r.random_range(0..n);
                    run_trial(setup, base, e0, &noise, &mut r)
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(summarize(rho, &outcomes, expected))
        })
        .collect()
}

/// Corrects each listed position once under `noise`.
pub fn position_sweep(setup: &TrialSetup<'_>, positions: &[usize], noise: &NoiseModel, seed: u64) -> Result<CurvePoint> {
    let zero = setup.code.zero_codeword();
    let base = setup.codeword.unwrap_or(&zero);
    let expected = setup.params.leaf_reads(setup.scheme.query_count()) as u64;
    let outcomes = positions
        .par_iter()
        .enumerate()
        .map(|(t, &e0)| {
            let mut r = rng::substream(seed, rng::POSITION, 0, t as u64);
            run_trial(setup, base, e0, noise, &mut r)
        })
        .collect::<Result<Vec<_>>>()?;
    let rho = match noise {
        NoiseModel::Random { rho } => *rho,
        NoiseModel::Pattern { positions } => positions.len() as f64 / setup.code.length() as f64,
    };
    Ok(summarize(rho, &outcomes, expected))
}

/// For every pair of grid points, the later rate is no larger or the two
/// Wilson intervals overlap.
pub fn monotone_up_to_overlap(points: &[CurvePoint]) -> bool {
    points.iter().enumerate().all(|(i, a)| {
        points[i + 1..].iter().all(|b| {
            b.rate() <= a.rate() || a.wilson_low.max(b.wilson_low) <= a.wilson_high.min(b.wilson_high)
        })
    })
}

pub fn write_curve_csv<W: Write>(w: W, points: &[CurvePoint]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["rho", "successes", "trials", "mean_queries", "wilson_low"])?;
    for p in points {
        out.write_record([
            p.rho.to_string(),
            p.successes.to_string(),
            p.trials.to_string(),
            p.mean_queries.to_string(),
            format!("{:.6}", p.wilson_low),
        ])?;
    }
    out.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WalkTailReport {
    pub gamma: f64,
    pub length: usize,
    pub trials: u64,
    pub hits: u64,
    pub empirical_tail: f64,
    pub std_error: f64,
    pub rho: f64,
    pub lambda: f64,
    /// `ρ + 2λ`.
    pub delta: f64,
    pub kl_bound: f64,
    /// `ρ > 6λ`, needed for the bound to be meaningful.
    pub rho_exceeds_six_lambda: bool,
    pub vacuous: bool,
    pub point_mass_start: bool,
    pub pass: bool,
}

/// Fraction of length-`length` walks that cross at least `γ·length`
/// corrupted edges, against `exp(-L·D(γ‖ρ+2λ))`.
///
/// Walk `t` uses substream `(WALK, 0, t)` of `seed`.
#[allow(clippy::too_many_arguments)]
pub fn walk_tail_check(
    cover: &DoubleCover,
    corrupted: &[usize],
    gamma: f64,
    length: usize,
    trials: usize,
    lambda: f64,
    start: StartDistribution,
    seed: u64,
) -> Result<WalkTailReport> {
    let n = cover.edge_count();
    let mut bad = vec![false; n];
    for &e in corrupted {
        if e >= n {
            return Err(Error::PositionOutOfRange { position: e, len: n });
        }
        bad[e] = true;
    }
    let rho = bad.iter().filter(|&&b| b).count() as f64 / n as f64;
    let threshold = gamma * length as f64;
    let hits: u64 = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut r = rng::substream(seed, rng::WALK, 0, t as u64);
            let walk = random_walk(cover, start, length, &mut r);
            let x = walk.edges.iter().filter(|&&e| bad[e]).count();
            u64::from(x as f64 >= threshold - 1e-9)
        })
        .sum();
    let empirical_tail = hits as f64 / trials.max(1) as f64;
    let std_error = (empirical_tail * (1.0 - empirical_tail) / trials.max(1) as f64).sqrt();
    let delta = rho + 2.0 * lambda;
    let kl_bound = tail_bound(gamma, delta, length)?;
    Ok(WalkTailReport {
        gamma,
        length,
        trials: trials as u64,
        hits,
        empirical_tail,
        std_error,
        rho,
        lambda,
        delta,
        kl_bound,
        rho_exceeds_six_lambda: rho > 6.0 * lambda,
        vacuous: kl_bound >= 1.0,
        point_mass_start: matches!(start, StartDistribution::PointMass(_)),
        pass: empirical_tail <= kl_bound + 3.0 * std_error,
    })
}

pub fn write_walk_csv<W: Write>(w: W, reports: &[WalkTailReport]) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["gamma", "L", "empirical_tail", "kl_bound", "pass"])?;
    for r in reports {
        out.write_record([
            r.gamma.to_string(),
            r.length.to_string(),
            r.empirical_tail.to_string(),
            r.kl_bound.to_string(),
            r.pass.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::RegularGraph;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn corruption_counts() {
        let w = vec![0u8; 1600];
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (same, pos) = corrupt(&w, &NoiseModel::random(0.0), 2, &mut rng).unwrap();
        assert_eq!(same, w);
        assert!(pos.is_empty());
        let (one, pos) = corrupt(&w, &NoiseModel::random(1.0 / 1600.0), 2, &mut rng).unwrap();
        assert_eq!(pos.len(), 1);
        assert_eq!(one.iter().filter(|&&x| x != 0).count(), 1);
        let (many, pos) = corrupt(&w, &NoiseModel::random(0.01), 3, &mut rng).unwrap();
        assert_eq!(pos.len(), 16);
        assert!(pos.windows(2).all(|p| p[0] < p[1]));
        assert!(pos.iter().all(|&e| many[e] != 0));
        assert!(corrupt(&w, &NoiseModel::random(1.0), 2, &mut rng).is_err());
    }

    #[test]
    fn pattern_noise() {
        let w = vec![1u8; 10];
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let m = NoiseModel::Pattern { positions: vec![3, 1, 3] };
        let (out, pos) = corrupt(&w, &m, 5, &mut rng).unwrap();
        assert_eq!(pos, vec![1, 3]);
        assert!(out[1] != 1 && out[3] != 1 && out[0] == 1);
        let bad = NoiseModel::Pattern { positions: vec![10] };
        assert!(corrupt(&w, &bad, 5, &mut rng).is_err());
    }

    #[test]
    fn kl_values() {
        assert_eq!(kl(0.3, 0.3).unwrap(), 0.0);
        assert!((kl(0.25, 0.1).unwrap() - 0.0924).abs() < 1e-4);
        for g in [0.05, 0.2, 0.5, 0.9] {
            for d in [0.01, 0.3, 0.6, 0.99] {
                if g != d {
                    assert!(kl(g, d).unwrap() > 0.0);
                }
            }
        }
        assert!(kl(0.0, 0.5).is_err());
        assert!(kl(0.5, 1.0).is_err());
        assert_eq!(tail_bound(0.25, 0.25, 40).unwrap(), 1.0);
        assert_eq!(tail_bound(0.25, 1.2, 40).unwrap(), 1.0);
    }

    #[test]
    fn wilson_interval() {
        let (lo, hi) = wilson(200, 200);
        assert!(lo > 0.98 && (hi - 1.0).abs() < 1e-12);
        let (lo, hi) = wilson(50, 100);
        assert!((lo - 0.4038).abs() < 1e-3 && (hi - 0.5962).abs() < 1e-3);
    }

    #[test]
    fn clean_walks_never_hit() {
        let cover = DoubleCover::new(RegularGraph::random_regular(20, 4, 1).unwrap());
        let r = walk_tail_check(&cover, &[], 0.25, 20, 1000, 0.5, StartDistribution::PointMass(0), 3).unwrap();
        assert_eq!(r.hits, 0);
        assert!(r.pass);
        assert!(r.vacuous);
    }

    #[test]
    fn monotonicity_audit() {
        let pt = |s: u64, t: u64| {
            let (lo, hi) = wilson(s, t);
            CurvePoint {
                rho: 0.0,
                successes: s,
                trials: t,
                mean_queries: 0.0,
                wilson_low: lo,
                wilson_high: hi,
                accounting_mismatches: 0,
                ambiguous: 0,
            }
        };
        assert!(monotone_up_to_overlap(&[pt(100, 100), pt(90, 100), pt(91, 100)]));
        assert!(!monotone_up_to_overlap(&[pt(10, 100), pt(95, 100)]));
    }

    #[test]
    fn csv_headers() {
        let mut buf = Vec::new();
        write_curve_csv(&mut buf, &[]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "rho,successes,trials,mean_queries,wilson_low\n");
        let mut buf = Vec::new();
        write_walk_csv(&mut buf, &[]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "gamma,L,empirical_tail,kl_bound,pass\n");
    }
}
