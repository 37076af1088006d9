//! Smooth local reconstruction for inner codes.
//!
//! A scheme is driven by a family of parity checks. To reconstruct position
//! `i` it picks a uniformly random check through `i`, queries the rest of
//! that check's support, and solves the check for `c[i]`. The chosen check
//! travels with the query set, so the reconstructor never has to guess which
//! relation the queries came from.

use std::io::Write;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::linalg::PrimeOps;

/// One parity relation `Σ coeffs[k] · c[support[k]] = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub support: Vec<usize>,
    pub coeffs: Vec<u8>,
}

impl Check {
    pub fn indicator(support: Vec<usize>) -> Self {
        let coeffs = vec![1; support.len()];
        Self { support, coeffs }
    }

    fn coeff_at(&self, position: usize) -> Option<u8> {
        self.support
            .iter()
            .position(|&s| s == position)
            .map(|k| self.coeffs[k])
    }
}

/// Queries issued for one position: real queries first (support order),
/// then pads that the reconstructor ignores.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuerySet {
    pub position: usize,
    pub check: usize,
    pub positions: Vec<usize>,
    pub real: usize,
}

#[derive(Debug, Clone)]
pub struct SmoothReconstruction {
    code: LinearCode,
    checks: Vec<Check>,
    through: Vec<Vec<usize>>,
    q0: usize,
    s0: usize,
    exact: bool,
    pads: usize,
    pad_weights: Vec<Vec<f64>>,
    pad_samplers: Vec<Option<WeightedIndex<f64>>>,
}

impl SmoothReconstruction {
    /// Builds a scheme from checks that every codeword satisfies.
    ///
    /// Every check must have the same support size `q0 + 1` and each position
    /// must lie in at least one check.
    pub fn from_checks(code: &LinearCode, checks: Vec<Check>) -> Result<Self> {
        let d = code.length();
        let ops = code.ops();
        let mut through = vec![Vec::new(); d];
        let mut support_size = None;
        for (idx, check) in checks.iter().enumerate() {
            if check.support.len() != check.coeffs.len() || check.support.iter().any(|&s| s >= d) {
                return Err(Error::InvalidParameter(format!("check {idx} is malformed")));
            }
            if *support_size.get_or_insert(check.support.len()) != check.support.len() {
                return Err(Error::InvalidParameter(
                    "all checks must have the same support size".into(),
                ));
            }
            for g in code.generator() {
                let s = check
                    .support
                    .iter()
                    .zip(&check.coeffs)
                    .fold(0u8, |acc, (&j, &c)| ops.add(acc, ops.mul(c, g[j])));
                if s != 0 {
                    return Err(Error::InvalidParameter(format!(
                        "check {idx} is not satisfied by the code"
                    )));
                }
            }
            for (&j, &c) in check.support.iter().zip(&check.coeffs) {
                if c != 0 {
                    through[j].push(idx);
                }
            }
        }
        if let Some(i) = through.iter().position(|t| t.is_empty()) {
            return Err(Error::InvalidParameter(format!(
                "position {i} lies in no check"
            )));
        }
        let q0 = support_size.unwrap_or(1) - 1;
        let mut s0 = d;
        let mut exact = true;
        for (i, t) in through.iter().enumerate() {
            let counts = Self::real_counts(&checks, t, i, d);
            let nonzero: Vec<u64> = counts.iter().copied().filter(|&c| c > 0).collect();
            s0 = s0.min(nonzero.len());
            exact &= nonzero.windows(2).all(|w| w[0] == w[1]);
        }
        Ok(Self {
            code: code.clone(),
            checks,
            through,
            q0,
            s0,
            exact,
            pads: 0,
            pad_weights: vec![Vec::new(); d],
            pad_samplers: vec![None; d],
        })
    }

    /// The scheme of a single parity check code: query every other symbol.
    pub fn single_parity(code: &LinearCode) -> Result<Self> {
        let d = code.length();
        Self::from_checks(code, vec![Check::indicator((0..d).collect())])
    }

    /// A scheme whose checks are all minimum-weight dual codewords, one per
    /// scalar class.
    pub fn from_dual_min_weight(code: &LinearCode) -> Result<Self> {
        let rows = code.reduced_parity_rows();
        let p = code.field().p() as u128;
        let total = p.saturating_pow(rows.len() as u32);
        if total > 1 << 16 {
            return Err(Error::TooLarge {
                what: "dual code enumeration",
                size: total,
                limit: 1 << 16,
            });
        }
        let ops = code.ops();
        let d = code.length();
        let mut words: Vec<Vec<u8>> = Vec::new();
        let mut coeffs = vec![0u8; rows.len()];
        for _ in 1..total {
            for c in coeffs.iter_mut() {
                *c += 1;
                if (*c as u128) < p {
                    break;
                }
                *c = 0;
            }
            // one representative per scalar class: leading coefficient 1
            if coeffs.iter().rev().find(|&&c| c != 0) != Some(&1) {
                continue;
            }
            let mut w = vec![0u8; d];
            for (row, &c) in rows.iter().zip(&coeffs) {
                for (x, &r) in w.iter_mut().zip(row) {
                    *x = ops.add(*x, ops.mul(c, r));
                }
            }
            words.push(w);
        }
        let weight = |w: &Vec<u8>| w.iter().filter(|&&x| x != 0).count();
        let min = words.iter().map(weight).filter(|&k| k > 0).min().ok_or_else(|| {
            Error::InvalidParameter("code has no nonzero dual codewords".into())
        })?;
        let checks = words
            .into_iter()
            .filter(|w| weight(w) == min)
            .map(|w| {
                let support: Vec<usize> = (0..d).filter(|&j| w[j] != 0).collect();
                let coeffs = support.iter().map(|&j| w[j]).collect();
                Check { support, coeffs }
            })
            .collect();
        Self::from_checks(code, checks)
    }

    /// Occurrence counts of each position among the real queries of `i`,
    /// summed over all checks through `i`.
    fn real_counts(checks: &[Check], through: &[usize], i: usize, d: usize) -> Vec<u64> {
        let mut counts = vec![0u64; d];
        for &c in through {
            for &j in &checks[c].support {
                if j != i {
                    counts[j] += 1;
                }
            }
        }
        counts
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }

    pub fn ops(&self) -> &PrimeOps {
        self.code.ops()
    }

    pub fn length(&self) -> usize {
        self.code.length()
    }

    pub fn checks(&self) -> &[Check] {
        &self.checks
    }

    pub fn checks_through(&self, position: usize) -> &[usize] {
        &self.through[position]
    }

    /// Real queries per reconstruction.
    pub fn real_queries(&self) -> usize {
        self.q0
    }

    /// Total queries per reconstruction, pads included.
    pub fn query_count(&self) -> usize {
        self.q0 + self.pads
    }

    pub fn pad_count(&self) -> usize {
        self.pads
    }

    /// Smoothness parameter: size of the set each real query ranges over.
    pub fn smoothness(&self) -> usize {
        if self.pads > 0 {
            self.length()
        } else {
            self.s0
        }
    }

    /// Whether the real queries hit their support set exactly uniformly.
    pub fn is_exactly_smooth(&self) -> bool {
        self.exact
    }

    pub fn is_perfectly_smooth(&self) -> bool {
        self.smoothness() == self.length()
    }

    /// Upgrades an `s0`-smooth scheme to a perfectly smooth one with
    /// `q0 + (d - s0)` queries.
    ///
    /// Pads are appended after the real queries. Their law is chosen so that
    /// the multiset of all `q0 + (d - s0)` queries hits every position of
    /// `[d]` equally often in expectation: a position already covered by the
    /// real queries gets proportionally less pad mass.
    pub fn pad_to_perfect(&self) -> Result<Self> {
        if self.pads > 0 || self.s0 == self.length() {
            return Ok(self.clone());
        }
        if !self.exact {
            return Err(Error::InvalidParameter(
                "padding needs real queries that are exactly uniform on their support".into(),
            ));
        }
        let d = self.length();
        let pads = d - self.s0;
        let total = (self.q0 + pads) as f64;
        let mut pad_weights = Vec::with_capacity(d);
        let mut pad_samplers = Vec::with_capacity(d);
        for i in 0..d {
            let counts = Self::real_counts(&self.checks, &self.through[i], i, d);
            let n_checks = self.through[i].len() as f64;
            let target = total / d as f64;
            let weights: Vec<f64> = counts
                .iter()
                .map(|&c| ((target - c as f64 / n_checks) / pads as f64).max(0.0))
                .collect();
            let sampler = WeightedIndex::new(&weights)
                .map_err(|e| Error::InvalidParameter(format!("pad distribution: {e}")))?;
            pad_weights.push(weights);
            pad_samplers.push(Some(sampler));
        }
        Ok(Self {
            pads,
            pad_weights,
            pad_samplers,
            ..self.clone()
        })
    }

    /// Law of a single pad query for position `i` (empty when unpadded).
    pub fn pad_distribution(&self, position: usize) -> &[f64] {
        &self.pad_weights[position]
    }

    pub fn sample_queries<R: Rng + ?Sized>(&self, position: usize, rng: &mut R) -> QuerySet {
        let through = &self.through[position];
        let check = through[rng.random_range(0..through.len())];
        let mut positions: Vec<usize> = self.checks[check]
            .support
            .iter()
            .copied()
            .filter(|&j| j != position)
            .collect();
        let real = positions.len();
        if let Some(sampler) = &self.pad_samplers[position] {
            positions.extend((0..self.pads).map(|_| sampler.sample(rng)));
        }
        QuerySet {
            position,
            check,
            positions,
            real,
        }
    }

    /// Allocation-free form of [`Self::sample_queries`] followed by
    /// [`Self::weights`]: appends the queried positions and their weights.
    pub fn sample_weighted_into<R: Rng + ?Sized>(
        &self,
        position: usize,
        rng: &mut R,
        positions: &mut Vec<usize>,
        weights: &mut Vec<u8>,
    ) {
        let ops = self.ops();
        let through = &self.through[position];
        let check = &self.checks[through[rng.random_range(0..through.len())]];
        let own = check
            .coeff_at(position)
            .and_then(|c| ops.inv(c))
            .expect("check passes through position");
        let scale = ops.neg(own);
        for (&j, &c) in check.support.iter().zip(&check.coeffs) {
            if j != position {
                positions.push(j);
                weights.push(ops.mul(scale, c));
            }
        }
        if let Some(sampler) = &self.pad_samplers[position] {
            for _ in 0..self.pads {
                positions.push(sampler.sample(rng));
                weights.push(0);
            }
        }
    }

    /// Reconstruction as a linear form over the query slots: the symbol is
    /// `Σ weights[r] · values[r]`. Pad slots carry weight zero.
    pub fn weights(&self, query: &QuerySet) -> Vec<u8> {
        let ops = self.ops();
        let check = &self.checks[query.check];
        let own = check
            .coeff_at(query.position)
            .and_then(|c| ops.inv(c))
            .expect("query set was issued for a position in its check");
        let scale = ops.neg(own);
        let mut w: Vec<u8> = query.positions[..query.real]
            .iter()
            .map(|&j| ops.mul(scale, check.coeff_at(j).expect("real query in support")))
            .collect();
        w.resize(query.positions.len(), 0);
        w
    }

    pub fn reconstruct(&self, query: &QuerySet, values: &[u8]) -> Result<u8> {
        if values.len() != query.positions.len() {
            return Err(Error::LengthMismatch {
                what: "query responses",
                expected: query.positions.len(),
                found: values.len(),
            });
        }
        let ops = self.ops();
        let w = self.weights(query);
        Ok(w
            .iter()
            .zip(values)
            .fold(0u8, |acc, (&a, &b)| ops.add(acc, ops.mul(a, b))))
    }

    /// Exact per-position query mass for `i`, averaged over the scheme's
    /// randomness, in units of "expected occurrences per reconstruction".
    pub fn smoothness_audit_exact(&self, position: usize) -> SmoothnessAudit {
        let d = self.length();
        let counts = Self::real_counts(&self.checks, &self.through[position], position, d);
        let n_checks = self.through[position].len() as f64;
        let mass: Vec<f64> = (0..d)
            .map(|y| {
                let pad = self
                    .pad_weights[position]
                    .get(y)
                    .map_or(0.0, |w| w * self.pads as f64);
                counts[y] as f64 / n_checks + pad
            })
            .collect();
        let support: Vec<usize> = (0..d).filter(|&y| mass[y] > 0.0).collect();
        let per = self.query_count() as f64 / support.len() as f64;
        let uniform = if self.pads == 0 {
            let nz: Vec<u64> = support.iter().map(|&y| counts[y]).collect();
            nz.windows(2).all(|w| w[0] == w[1])
        } else {
            support.iter().all(|&y| (mass[y] - per).abs() < 1e-12)
        };
        SmoothnessAudit {
            position,
            rows: (0..d)
                .map(|y| AuditRow {
                    position: y,
                    count: if self.pads == 0 { counts[y] as f64 } else { mass[y] },
                    expected: if support.contains(&y) {
                        if self.pads == 0 {
                            support.iter().map(|&s| counts[s]).sum::<u64>() as f64
                                / support.len() as f64
                        } else {
                            per
                        }
                    } else {
                        0.0
                    },
                })
                .collect(),
            support_size: support.len(),
            uniform,
            chi_square: None,
            p_value: None,
        }
    }

    /// Empirical query frequencies over `trials` samples with a chi-square
    /// test of uniformity on the positions that can be queried.
    pub fn smoothness_audit_sampled<R: Rng + ?Sized>(
        &self,
        position: usize,
        trials: usize,
        rng: &mut R,
    ) -> SmoothnessAudit {
        let d = self.length();
        let exact = self.smoothness_audit_exact(position);
        let mut counts = vec![0u64; d];
        for _ in 0..trials {
            for &j in &self.sample_queries(position, rng).positions {
                counts[j] += 1;
            }
        }
        let total: u64 = counts.iter().sum();
        let support: Vec<usize> = (0..d).filter(|&y| exact.rows[y].expected > 0.0).collect();
        let expected = total as f64 / support.len() as f64;
        let chi_square: f64 = support
            .iter()
            .map(|&y| (counts[y] as f64 - expected).powi(2) / expected)
            .sum();
        let p_value = if support.len() > 1 {
            let dist = ChiSquared::new((support.len() - 1) as f64).expect("positive dof");
            1.0 - dist.cdf(chi_square)
        } else {
            1.0
        };
        SmoothnessAudit {
            position,
            rows: (0..d)
                .map(|y| AuditRow {
                    position: y,
                    count: counts[y] as f64,
                    expected: if support.contains(&y) { expected } else { 0.0 },
                })
                .collect(),
            support_size: support.len(),
            uniform: p_value > 0.001,
            chi_square: Some(chi_square),
            p_value: Some(p_value),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AuditRow {
    pub position: usize,
    pub count: f64,
    pub expected: f64,
}

/// Per-position query frequencies for one reconstructed position.
#[derive(Debug, Clone, Serialize)]
pub struct SmoothnessAudit {
    pub position: usize,
    pub rows: Vec<AuditRow>,
    pub support_size: usize,
    pub uniform: bool,
    pub chi_square: Option<f64>,
    pub p_value: Option<f64>,
}

impl SmoothnessAudit {
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["position", "count", "expected"])?;
        for row in &self.rows {
            out.serialize((row.position, row.count, row.expected))?;
        }
        out.flush()?;
        Ok(())
    }
}
