//! Affine geometries over GF(h) and the flat-incidence inner codes they
//! define.
//!
//! Points of `GF(h)^m` are indexed by `Σ x_k h^k` over their coordinate codes.
//! An r-flat is enumerated as (direction subspace in reduced echelon form,
//! coset representative with zeros at the pivot coordinates), which is a
//! normal form, so no flat is produced twice.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::code::LinearCode;
use crate::error::{Error, Result};
use crate::field::{is_prime, FieldSpec};
use crate::recon::{Check, SmoothReconstruction};

/// Upper bound on `h^m`.
pub const POINT_LIMIT: u64 = 1 << 16;
/// Upper bound on the total incidence count `#flats · h^r`.
pub const INCIDENCE_LIMIT: u64 = 1 << 24;

#[derive(Debug, Clone)]
pub struct AffineGeometry {
    field: FieldSpec,
    m: usize,
    r: usize,
    flats: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeometrySummary {
    pub h: u32,
    pub m: usize,
    pub r: usize,
    pub flat_count: usize,
    pub points: usize,
}

/// Outcome of comparing a computed dimension with `h^m - h^{m(1-β)}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DimensionBoundReport {
    pub dimension: usize,
    pub bound: f64,
    pub beta: f64,
    pub epsilon_prime: f64,
    pub satisfied: bool,
}

/// Default β for the advisory dimension check.
pub const DEFAULT_BETA: f64 = 0.05;

/// Splits `h` into `(p, ell)` with `h = p^ell`.
pub fn prime_power(h: u32) -> Option<(u32, u32)> {
    if h < 2 {
        return None;
    }
    let p = (2..=h).find(|k| h.is_multiple_of(*k))?;
    if !is_prime(p as u64) {
        return None;
    }
    let mut rest = h;
    let mut ell = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        ell += 1;
    }
    (rest == 1).then_some((p, ell))
}

impl AffineGeometry {
    pub fn enumerate_flats(h: u32, m: usize, r: usize) -> Result<Self> {
        let (p, ell) = prime_power(h)
            .ok_or_else(|| Error::InvalidGeometry(format!("{h} is not a prime power")))?;
        if r >= m {
            return Err(Error::InvalidGeometry(format!(
                "flat dimension {r} must be below ambient dimension {m}"
            )));
        }
        let points = (h as u64)
            .checked_pow(m as u32)
            .filter(|&n| n <= POINT_LIMIT)
            .ok_or(Error::TooLarge {
                what: "point set h^m",
                size: (h as u128).saturating_pow(m as u32),
                limit: POINT_LIMIT as u128,
            })?;
        let field = FieldSpec::new(p, ell)?;
        let subspaces = echelon_bases(&field, m, r);
        let flat_size = (h as u64).pow(r as u32);
        let incidences = subspaces.len() as u64 * (points / flat_size) * flat_size;
        if incidences > INCIDENCE_LIMIT {
            return Err(Error::TooLarge {
                what: "flat incidence",
                size: incidences as u128,
                limit: INCIDENCE_LIMIT as u128,
            });
        }
        let mut flats = BTreeSet::new();
        for (basis, pivots) in &subspaces {
            let span = span_points(&field, basis, m);
            for base in coset_representatives(h, m, pivots) {
                let mut flat: Vec<usize> = span
                    .iter()
                    .map(|v| point_index(h, &add_vec(&field, &base, v)))
                    .collect();
                flat.sort_unstable();
                flats.insert(flat);
            }
        }
        Ok(Self {
            field,
            m,
            r,
            flats: flats.into_iter().collect(),
        })
    }

    pub fn point_field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn h(&self) -> u32 {
        self.field.order()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn point_count(&self) -> usize {
        (self.h() as usize).pow(self.m as u32)
    }

    /// Coordinates (field element codes) of a point index.
    pub fn point(&self, index: usize) -> Vec<u32> {
        let h = self.h() as usize;
        let mut rest = index;
        (0..self.m)
            .map(|_| {
                let c = rest % h;
                rest /= h;
                c as u32
            })
            .collect()
    }

    pub fn flats(&self) -> &[Vec<usize>] {
        &self.flats
    }

    pub fn flats_through(&self, point: usize) -> impl Iterator<Item = &Vec<usize>> {
        self.flats.iter().filter(move |f| f.binary_search(&point).is_ok())
    }

    /// Reconstruction would read a single symbol: `h^r = 2`.
    pub fn is_degenerate(&self) -> bool {
        (self.h() as usize).pow(self.r as u32) <= 2
    }

    pub fn summary(&self) -> GeometrySummary {
        GeometrySummary {
            h: self.h(),
            m: self.m,
            r: self.r,
            flat_count: self.flats.len(),
            points: self.point_count(),
        }
    }

    /// Point-flat incidence rows over GF(p).
    pub fn incidence_rows(&self) -> Vec<Vec<u8>> {
        let d = self.point_count();
        self.flats
            .iter()
            .map(|flat| {
                let mut row = vec![0u8; d];
                for &x in flat {
                    row[x] = 1;
                }
                row
            })
            .collect()
    }

    /// The code over GF(p) whose parity checks are the flat incidences, with
    /// the flat-query reconstruction `c_x = -Σ_{y ∈ L \ {x}} c_y`.
    pub fn build_inner_code(&self, p: u32) -> Result<SmoothReconstruction> {
        if self.field.p() != p {
            return Err(Error::IncompatibleField { h: self.h(), p });
        }
        let symbols = FieldSpec::prime(p)?;
        let code = LinearCode::from_parity_checks(&symbols, self.point_count(), self.incidence_rows())?;
        let checks = self.flats.iter().cloned().map(Check::indicator).collect();
        SmoothReconstruction::from_checks(&code, checks)
    }
}

/// Advisory check of a computed dimension against `h^m - h^{m(1-β)}`.
pub fn dimension_bound_check(dimension: usize, h: u32, m: usize, beta: f64) -> DimensionBoundReport {
    let hm = (h as f64).powi(m as i32);
    let bound = hm - (h as f64).powf(m as f64 * (1.0 - beta));
    let epsilon_prime = prime_power(h).map_or(f64::NAN, |(_, ell)| ell as f64 / m as f64);
    DimensionBoundReport {
        dimension,
        bound,
        beta,
        epsilon_prime,
        satisfied: dimension as f64 + 1e-9 >= bound,
    }
}

fn point_index(h: u32, coords: &[u32]) -> usize {
    coords
        .iter()
        .rev()
        .fold(0usize, |acc, &c| acc * h as usize + c as usize)
}

fn add_vec(field: &FieldSpec, a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect()
}

/// All r × m reduced echelon bases over the field, with their pivots.
fn echelon_bases(field: &FieldSpec, m: usize, r: usize) -> Vec<(Vec<Vec<u32>>, Vec<usize>)> {
    let mut out = Vec::new();
    let h = field.order();
    for pivots in combinations(m, r) {
        // free slots: (row t, column c) with c > pivots[t] and c not a pivot
        let slots: Vec<(usize, usize)> = (0..r)
            .flat_map(|t| {
                let pivots = &pivots;
                (pivots[t] + 1..m)
                    .filter(move |c| !pivots.contains(c))
                    .map(move |c| (t, c))
            })
            .collect();
        let total = (h as u64).pow(slots.len() as u32);
        for mut idx in 0..total {
            let mut basis = vec![vec![0u32; m]; r];
            for t in 0..r {
                basis[t][pivots[t]] = 1;
            }
            for &(t, c) in &slots {
                basis[t][c] = (idx % h as u64) as u32;
                idx /= h as u64;
            }
            out.push((basis, pivots.clone()));
        }
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn span_points(field: &FieldSpec, basis: &[Vec<u32>], m: usize) -> Vec<Vec<u32>> {
    let h = field.order() as u64;
    let r = basis.len();
    (0..h.pow(r as u32))
        .map(|mut idx| {
            let mut v = vec![0u32; m];
            for row in basis {
                let a = (idx % h) as u32;
                idx /= h;
                for (x, &b) in v.iter_mut().zip(row) {
                    *x = field.add(*x, field.mul(a, b));
                }
            }
            v
        })
        .collect()
}

fn coset_representatives(h: u32, m: usize, pivots: &[usize]) -> Vec<Vec<u32>> {
    let free: Vec<usize> = (0..m).filter(|c| !pivots.contains(c)).collect();
    (0..(h as u64).pow(free.len() as u32))
        .map(|mut idx| {
            let mut v = vec![0u32; m];
            for &c in &free {
                v[c] = (idx % h as u64) as u32;
                idx /= h as u64;
            }
            v
        })
        .collect()
}
