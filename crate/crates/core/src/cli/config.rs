//! Run configuration files (TOML).

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::prime_power;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub seed: u64,
    pub field: FieldSection,
    pub inner: InnerSection,
    pub geometry: Option<GeometrySection>,
    pub graph: GraphSection,
    #[serde(default)]
    pub params: ParamsSection,
    #[serde(default)]
    pub noise: NoiseSection,
    #[serde(default)]
    pub codeword: CodewordSection,
    #[serde(default)]
    pub correct: CorrectSection,
    #[serde(default)]
    pub experiment: ExperimentSection,
    #[serde(default)]
    pub walk: WalkSection,
    #[serde(default)]
    pub output: OutputSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSection {
    pub p: u32,
    #[serde(default = "one")]
    pub ell: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InnerKind {
    Affine,
    SingleParity,
    Hamming,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InnerSection {
    pub kind: InnerKind,
    /// Append pads so every position is queried equally often.
    #[serde(default)]
    pub padded: bool,
    /// Code length for the single parity kind; defaults to the graph degree.
    pub length: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometrySection {
    pub h: Option<u32>,
    pub m: usize,
    pub r: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSection {
    pub n: usize,
    pub d: usize,
    pub seed: Option<u64>,
    #[serde(default = "default_tolerance")]
    pub lambda_tolerance: f64,
    /// Eliminate the global parity system when `N` allows it.
    #[serde(default = "yes")]
    pub compute_dimension: bool,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSection {
    pub gamma: Option<f64>,
    pub zeta: Option<f64>,
    pub c: Option<f64>,
    pub l1: Option<usize>,
    pub l2: Option<usize>,
    #[serde(default)]
    pub strategy: StrategyName,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StrategyName {
    Enumerate,
    #[default]
    SumDp,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoiseKindName {
    #[default]
    Random,
    Pattern,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NoiseSection {
    #[serde(default)]
    pub rho: f64,
    #[serde(default)]
    pub model: NoiseKindName,
    pub pattern: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CodewordSource {
    #[default]
    Zero,
    Random,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodewordSection {
    #[serde(default)]
    pub source: CodewordSource,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorrectSection {
    #[serde(default)]
    pub positions: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSection {
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub rho_grid: Vec<f64>,
    /// Positions `0..sweep` corrected without noise.
    #[serde(default)]
    pub sweep: usize,
    #[serde(default = "yes")]
    pub success_curve: bool,
    #[serde(default)]
    pub walk_tail: bool,
}

impl Default for ExperimentSection {
    fn default() -> Self {
        Self {
            trials: default_trials(),
            rho_grid: Vec::new(),
            sweep: 0,
            success_curve: true,
            walk_tail: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WalkSection {
    #[serde(default = "quarter")]
    pub gamma: f64,
    #[serde(default = "default_walk_length")]
    pub length: usize,
    #[serde(default = "default_walk_trials")]
    pub trials: usize,
    #[serde(default = "tenth")]
    pub rho: f64,
    /// Start vertex of every walk; uniform when absent.
    pub start: Option<usize>,
}

impl Default for WalkSection {
    fn default() -> Self {
        Self {
            gamma: quarter(),
            length: default_walk_length(),
            trials: default_walk_trials(),
            rho: tenth(),
            start: Some(0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(default = "default_out")]
    pub dir: PathBuf,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self { dir: default_out() }
    }
}

fn one() -> u32 {
    1
}
fn yes() -> bool {
    true
}
fn quarter() -> f64 {
    0.25
}
fn tenth() -> f64 {
    0.1
}
fn default_tolerance() -> f64 {
    1e-8
}
fn default_trials() -> usize {
    100
}
fn default_walk_length() -> usize {
    40
}
fn default_walk_trials() -> usize {
    100_000
}
fn default_out() -> PathBuf {
    PathBuf::from("out")
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text, &path.display().to_string())
    }

    /// Parses and validates; errors carry `origin:line`.
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| {
            let line = e
                .span()
                .map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1);
            match line {
                Some(l) => Error::Config(format!("{origin}:{l}: {}", e.message())),
                None => Error::Config(format!("{origin}: {}", e.message())),
            }
        })?;
        if let Err((section, key, msg)) = cfg.validate() {
            let loc = locate(text, section, key).map_or(String::new(), |l| format!(":{l}"));
            return Err(Error::Config(format!("{origin}{loc}: {section}.{key}: {msg}")));
        }
        Ok(cfg)
    }

    /// Geometry field order `h`, defaulting to `p^ell`.
    pub fn geometry_h(&self) -> Option<u32> {
        self.geometry
            .as_ref()
            .map(|g| g.h.unwrap_or_else(|| self.field.p.pow(self.field.ell)))
    }

    fn validate(&self) -> std::result::Result<(), (&'static str, &'static str, String)> {
        let p = self.field.p;
        if !crate::field::is_prime(p as u64) || p >= 256 {
            return Err(("field", "p", format!("{p} is not a prime below 256")));
        }
        if self.field.ell == 0 {
            return Err(("field", "ell", "must be at least 1".into()));
        }
        let g = &self.graph;
        if g.d == 0 || g.d >= g.n || (g.n * g.d) % 2 == 1 {
            return Err(("graph", "d", format!("need 0 < d < n with n·d even, got n={}, d={}", g.n, g.d)));
        }
        if !(g.lambda_tolerance > 0.0) {
            return Err(("graph", "lambda_tolerance", "must be positive".into()));
        }
        match self.inner.kind {
            InnerKind::Affine => {
                let Some(geo) = &self.geometry else {
                    return Err(("inner", "kind", "affine inner code needs a [geometry] section".into()));
                };
                let h = self.geometry_h().expect("geometry present");
                match prime_power(h) {
                    Some((hp, _)) if hp == p => {}
                    _ => return Err(("geometry", "h", format!("{h} is not a power of p = {p}"))),
                }
                if geo.r == 0 || geo.r >= geo.m {
                    return Err(("geometry", "r", format!("need 0 < r < m, got r={}, m={}", geo.r, geo.m)));
                }
                let points = (h as u64).checked_pow(geo.m as u32);
                if points != Some(g.d as u64) {
                    return Err(("graph", "d", format!("affine inner code has length h^m, which differs from d = {}", g.d)));
                }
            }
            InnerKind::SingleParity => {
                if let Some(len) = self.inner.length {
                    if len != g.d {
                        return Err(("inner", "length", format!("{len} differs from graph degree {}", g.d)));
                    }
                }
            }
            InnerKind::Hamming => {
                if p != 2 || g.d != 7 {
                    return Err(("inner", "kind", "the [7,4] Hamming code needs p = 2 and d = 7".into()));
                }
            }
        }
        if let Some(gm) = self.params.gamma {
            if !(gm > 0.0 && gm < 0.5) {
                return Err(("params", "gamma", format!("{gm} must lie in (0, 1/2)")));
            }
        }
        if let Some(c) = self.params.c {
            if !(c > 0.0) {
                return Err(("params", "c", format!("{c} must be positive")));
            }
        }
        if self.params.l1.is_some() != self.params.l2.is_some() {
            return Err(("params", "l1", "set both l1 and l2 or neither".into()));
        }
        if !(0.0..1.0).contains(&self.noise.rho) {
            return Err(("noise", "rho", format!("{} must lie in [0, 1)", self.noise.rho)));
        }
        if self.noise.model == NoiseKindName::Pattern && self.noise.pattern.is_none() {
            return Err(("noise", "pattern", "pattern noise needs a position file".into()));
        }
        if let Some(r) = self.experiment.rho_grid.iter().find(|r| !(0.0..1.0).contains(*r)) {
            return Err(("experiment", "rho_grid", format!("{r} must lie in [0, 1)")));
        }
        let w = &self.walk;
        if !(w.gamma > 0.0 && w.gamma < 1.0) {
            return Err(("walk", "gamma", format!("{} must lie in (0, 1)", w.gamma)));
        }
        if !(0.0..1.0).contains(&w.rho) {
            return Err(("walk", "rho", format!("{} must lie in [0, 1)", w.rho)));
        }
        if w.start.is_some_and(|v| v >= g.n) {
            return Err(("walk", "start", format!("vertex must be below n = {}", g.n)));
        }
        Ok(())
    }
}

/// 1-based line of `key` inside `[section]`, or of the section header.
fn locate(text: &str, section: &str, key: &str) -> Option<usize> {
    let mut current = String::new();
    let mut header = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            current = name.trim().to_string();
            if current == section {
                header = Some(i + 1);
            }
            continue;
        }
        let k = line.split('=').next().map(str::trim);
        if current == section && k == Some(key) {
            return Some(i + 1);
        }
    }
    header
}
