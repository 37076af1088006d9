//! Depth and threshold planning for the corrector.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrectionParams {
    pub gamma: f64,
    pub zeta: f64,
    /// Depth of the outer tree.
    pub l1: usize,
    /// Depth of each leaf subtree.
    pub l2: usize,
    /// Depth ratio used to derive `l2`.
    pub c: f64,
}

impl CorrectionParams {
    /// Parameters with explicit depths, bypassing the planner.
    pub fn fixed(l1: usize, l2: usize) -> Self {
        Self {
            gamma: 0.25,
            zeta: 1.0,
            l1,
            l2,
            c: if l1 == 0 { 0.0 } else { l2 as f64 / l1 as f64 },
        }
    }

    /// Leaf reads per correction: `q^(l1 + l2)`.
    pub fn leaf_reads(&self, arity: usize) -> u128 {
        (arity as u128).saturating_pow((self.l1 + self.l2) as u32)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanInput {
    pub rho: f64,
    /// Queries per inner reconstruction (tree arity).
    pub q0: usize,
    pub d: usize,
    pub lambda: f64,
    pub gamma: f64,
    pub zeta: f64,
    pub n: usize,
    /// Replaces the derived depth ratio when set.
    pub c_override: Option<f64>,
}

impl PlanInput {
    /// `γ = 1/4`, `ζ = 2 ln q0`.
    pub fn affine_defaults(rho: f64, q0: usize, d: usize, lambda: f64, n: usize) -> Self {
        Self {
            rho,
            q0,
            d,
            lambda,
            gamma: 0.25,
            zeta: 2.0 * (q0 as f64).ln(),
            n,
            c_override: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Plan {
    pub params: CorrectionParams,
    /// `ln n / ln(d/4)` before rounding.
    pub l1_raw: f64,
    /// `γ (e^ζ q0)^(-1/γ)`.
    pub threshold: f64,
    /// `ρ < threshold - 2λ`.
    pub rho_feasible: bool,
    /// `threshold > 8λ`.
    pub lambda_feasible: bool,
    pub feasible: bool,
    pub predicted_leaf_reads: f64,
    pub epsilon: f64,
    /// `q0^(l1+l2) (e^ζ q0)^(-l2) e^(γ l2)`.
    pub subtree_failure_bound: f64,
}

pub fn plan_parameters(input: &PlanInput) -> Result<Plan> {
    let PlanInput {
        rho,
        q0,
        d,
        lambda,
        gamma,
        zeta,
        n,
        c_override,
    } = *input;
    if !(gamma > 0.0 && gamma < 0.5) {
        return Err(Error::InvalidParameter(format!("γ = {gamma} must lie in (0, 1/2)")));
    }
    if !(zeta > gamma) {
        return Err(Error::InvalidParameter(format!("ζ = {zeta} must exceed γ = {gamma}")));
    }
    if d <= 4 {
        return Err(Error::InvalidParameter(format!("degree {d} must exceed 4")));
    }
    if q0 == 0 || n < 2 {
        return Err(Error::InvalidParameter("need q0 ≥ 1 and n ≥ 2".into()));
    }
    let log_ratio = (d as f64 / 4.0).ln();
    let l1_raw = (n as f64).ln() / log_ratio;
    let mut l1 = (l1_raw - 1e-9).ceil().max(0.0) as usize;
    if l1 % 2 == 1 {
        l1 += 1;
    }
    let q = q0 as f64;
    let c = match c_override {
        Some(c) if c > 0.0 => c,
        Some(c) => return Err(Error::InvalidParameter(format!("C = {c} must be positive"))),
        None => ((1.0 + q.ln()) / (zeta - gamma)).ceil() + 1.0,
    };
    let l2 = (c * l1 as f64 - 1e-9).ceil().max(0.0) as usize;
    let threshold = gamma * (zeta.exp() * q).powf(-1.0 / gamma);
    let rho_feasible = rho < threshold - 2.0 * lambda;
    let lambda_feasible = threshold > 8.0 * lambda;
    let epsilon = (1.0 + (q.ln() + 1.0) / (zeta - gamma)) * q.ln() / log_ratio;
    let (l1f, l2f) = (l1 as f64, l2 as f64);
    let subtree_failure_bound =
        ((l1f + l2f) * q.ln() - l2f * (zeta + q.ln()) + gamma * l2f).exp();
    Ok(Plan {
        params: CorrectionParams {
            gamma,
            zeta,
            l1,
            l2,
            c,
        },
        l1_raw,
        threshold,
        rho_feasible,
        lambda_feasible,
        feasible: rho_feasible && lambda_feasible,
        predicted_leaf_reads: q.powi((l1 + l2) as i32),
        epsilon,
        subtree_failure_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> PlanInput {
        PlanInput {
            rho: 0.0,
            q0: 3,
            d: 16,
            lambda: 0.0,
            gamma: 0.25,
            zeta: 3.0,
            n: 256,
            c_override: None,
        }
    }

    #[test]
    fn even_outer_depth() {
        let p = plan_parameters(&base()).unwrap();
        assert_eq!(p.params.l1, 4);
        let p = plan_parameters(&PlanInput { n: 1000, ..base() }).unwrap();
        assert_eq!(p.params.l1, 6);
        let p = plan_parameters(&PlanInput { n: 64, ..base() }).unwrap();
        assert_eq!(p.params.l1, 4);
    }

    #[test]
    fn depth_ratio() {
        let p = plan_parameters(&base()).unwrap();
        let c = ((1.0 + 3f64.ln()) / 2.75).ceil() + 1.0;
        assert_eq!(p.params.c, c);
        assert_eq!(p.params.l2, (c as usize) * 4);
        let p = plan_parameters(&PlanInput { c_override: Some(1.0), ..base() }).unwrap();
        assert_eq!(p.params.l2, 4);
        assert_eq!(p.predicted_leaf_reads, 3f64.powi(8));
    }

    #[test]
    fn feasibility_at_zero_lambda() {
        let t = 0.25 * (3f64.exp() * 3.0).powf(-4.0);
        let p = plan_parameters(&PlanInput { rho: t * 0.99, ..base() }).unwrap();
        assert!(p.feasible);
        assert!((p.threshold - t).abs() < 1e-18);
        let p = plan_parameters(&PlanInput { rho: t * 1.01, ..base() }).unwrap();
        assert!(!p.feasible);
    }

    #[test]
    fn affine_defaults() {
        let i = PlanInput::affine_defaults(0.0, 4, 16, 0.4, 1000);
        assert_eq!(i.gamma, 0.25);
        assert!((i.zeta - 2.0 * 4f64.ln()).abs() < 1e-15);
        let p = plan_parameters(&i).unwrap();
        assert!(!p.lambda_feasible);
    }

    #[test]
    fn read_prediction() {
        let p = CorrectionParams::fixed(4, 8);
        assert_eq!(p.leaf_reads(3), 531_441);
    }

    #[test]
    fn invalid_ranges() {
        assert!(plan_parameters(&PlanInput { gamma: 0.5, ..base() }).is_err());
        assert!(plan_parameters(&PlanInput { zeta: 0.2, ..base() }).is_err());
        assert!(plan_parameters(&PlanInput { d: 4, ..base() }).is_err());
    }
}
