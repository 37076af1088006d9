//! Command-line front end.
//!
//! Every command reads a TOML config, writes its outputs into the output
//! directory, and leaves a `<command>.manifest.json` echoing the resolved
//! config, all seeds, and the SHA-256 of every input and output file.

pub mod config;

use std::collections::BTreeMap;
use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::code::LinearCode;
use crate::corrector::{correct, TrialRecord};
use crate::error::{Error, Result};
use crate::experiment::{
    corrupt, load_pattern, monotone_up_to_overlap, position_sweep, success_curve, walk_tail_check,
    write_curve_csv, write_walk_csv, CurvePoint, NoiseModel, TrialSetup, WalkTailReport,
};
use crate::field::{FieldDescriptor, FieldSpec};
use crate::geometry::{dimension_bound_check, AffineGeometry, DimensionBoundReport, GeometrySummary, DEFAULT_BETA};
use crate::graph::spectrum::edge_walk_spectrum_check;
use crate::graph::{ramanujan_bound, DoubleCover, GraphFile, RegularGraph, StartDistribution};
use crate::planner::{plan_parameters, CorrectionParams, Plan, PlanInput};
use crate::recon::SmoothReconstruction;
use crate::rng;
use crate::score::SubsetStrategy;
use crate::tanner::{read_word, write_word, TannerCode, WordHeader, DIMENSION_LENGTH_LIMIT};

use config::{CodewordSource, InnerKind, NoiseKindName, RunConfig, StrategyName};

#[derive(Debug, Parser)]
#[command(name = "expander-lcc", version, about = "Local correction of expander codes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_name = "U64")]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_name = "DIR")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_name = "INT")]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Generate the graph, assemble the code, and write the build report.
    Build,
    /// Write a codeword file.
    Encode,
    /// Corrupt the stored codeword.
    Corrupt,
    /// Correct configured positions of the corrupted word.
    Correct,
    /// Run the success-curve and walk-tail suites.
    Experiment,
    /// Run the walk-tail suite only.
    Walkstats,
    /// Compare the edge-walk spectrum with the graph spectrum.
    SpectrumCheck,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Build => "build",
            Command::Encode => "encode",
            Command::Corrupt => "corrupt",
            Command::Correct => "correct",
            Command::Experiment => "experiment",
            Command::Walkstats => "walkstats",
            Command::SpectrumCheck => "spectrum-check",
        }
    }
}

/// Result of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Passed,
    SuiteFailed,
}

pub const EXIT_VALIDATION: u8 = 1;
pub const EXIT_SUITE_FAILED: u8 = 2;

pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_VALIDATION)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(Outcome::Passed) => ExitCode::SUCCESS,
        Ok(Outcome::SuiteFailed) => ExitCode::from(EXIT_SUITE_FAILED),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_VALIDATION)
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| Error::Config("--config PATH is required".into()))?;
    let mut cfg = RunConfig::load(path)?;
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(out) = &cli.out {
        cfg.output.dir = out.clone();
    }
    if let Some(t) = cli.threads {
        // the global pool can only be set once per process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(t).build_global();
    }
    run_command(cli.command, &cfg)
}

pub fn run_command(command: Command, cfg: &RunConfig) -> Result<Outcome> {
    let mut job = Job::new(command, cfg)?;
    let outcome = match command {
        Command::Build => cmd_build(&mut job),
        Command::Encode => cmd_encode(&mut job),
        Command::Corrupt => cmd_corrupt(&mut job),
        Command::Correct => cmd_correct(&mut job),
        Command::Experiment => cmd_experiment(&mut job, true),
        Command::Walkstats => cmd_experiment(&mut job, false),
        Command::SpectrumCheck => cmd_spectrum(&mut job),
    }?;
    job.finish(outcome)?;
    Ok(outcome)
}

#[derive(Debug, Serialize)]
struct Manifest<'a> {
    command: &'static str,
    version: &'static str,
    config: &'a RunConfig,
    seeds: Seeds,
    inputs: &'a BTreeMap<String, String>,
    outputs: &'a BTreeMap<String, String>,
    outcome: &'static str,
}

#[derive(Debug, Clone, Copy, Serialize)]
struct Seeds {
    root: u64,
    graph: u64,
}

struct Job<'a> {
    command: Command,
    cfg: &'a RunConfig,
    out: PathBuf,
    graph_seed: u64,
    inputs: BTreeMap<String, String>,
    outputs: BTreeMap<String, String>,
}

fn sha256(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl<'a> Job<'a> {
    fn new(command: Command, cfg: &'a RunConfig) -> Result<Self> {
        let out = cfg.output.dir.clone();
        fs::create_dir_all(&out)?;
        Ok(Self {
            command,
            cfg,
            out,
            graph_seed: cfg
                .graph
                .seed
                .unwrap_or_else(|| rng::derive_seed(cfg.seed, rng::GRAPH, 0)),
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
        })
    }

    fn path(&self, name: &str) -> PathBuf {
        self.out.join(name)
    }

    fn write(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        fs::write(self.path(name), bytes)?;
        self.outputs.insert(name.to_string(), sha256(bytes));
        Ok(())
    }

    fn write_json<T: Serialize>(&mut self, name: &str, value: &T) -> Result<()> {
        let mut bytes = serde_json::to_vec_pretty(value)?;
        bytes.push(b'\n');
        self.write(name, &bytes)
    }

    fn read(&mut self, name: &str) -> Result<Vec<u8>> {
        let path = self.path(name);
        let bytes = fs::read(&path).map_err(|e| {
            Error::Artifact(format!("{}: {e}; run the earlier pipeline step first", path.display()))
        })?;
        self.inputs.insert(name.to_string(), sha256(&bytes));
        Ok(bytes)
    }

    fn finish(&mut self, outcome: Outcome) -> Result<()> {
        let seeds = Seeds {
            root: self.cfg.seed,
            graph: self.graph_seed,
        };
        let manifest = Manifest {
            command: self.command.name(),
            version: env!("CARGO_PKG_VERSION"),
            config: self.cfg,
            seeds,
            inputs: &self.inputs,
            outputs: &self.outputs,
            outcome: match outcome {
                Outcome::Passed => "passed",
                Outcome::SuiteFailed => "suite-failed",
            },
        };
        let mut bytes = serde_json::to_vec_pretty(&manifest)?;
        bytes.push(b'\n');
        fs::write(self.path(&format!("{}.manifest.json", self.command.name())), bytes)?;
        Ok(())
    }
}

/// Inner code and its base (unpadded) reconstruction scheme.
pub fn build_inner(cfg: &RunConfig) -> Result<(SmoothReconstruction, Option<AffineGeometry>)> {
    let symbols = FieldSpec::prime(cfg.field.p)?;
    let d = cfg.graph.d;
    match cfg.inner.kind {
        InnerKind::Affine => {
            let geo = cfg.geometry.as_ref().expect("validated");
            let h = cfg.geometry_h().expect("validated");
            let ag = AffineGeometry::enumerate_flats(h, geo.m, geo.r)?;
            let scheme = ag.build_inner_code(cfg.field.p)?;
            Ok((scheme, Some(ag)))
        }
        InnerKind::SingleParity => {
            let code = LinearCode::single_parity(&symbols, d)?;
            Ok((SmoothReconstruction::single_parity(&code)?, None))
        }
        InnerKind::Hamming => {
            let code = LinearCode::hamming_7_4()?;
            Ok((SmoothReconstruction::from_dual_min_weight(&code)?, None))
        }
    }
}

/// Scheme used to lay out query trees.
pub fn tree_scheme(cfg: &RunConfig, base: &SmoothReconstruction) -> Result<SmoothReconstruction> {
    if cfg.inner.padded {
        base.pad_to_perfect()
    } else {
        Ok(base.clone())
    }
}

pub fn strategy(cfg: &RunConfig) -> SubsetStrategy {
    match cfg.params.strategy {
        StrategyName::Enumerate => SubsetStrategy::Enumerate,
        StrategyName::SumDp => SubsetStrategy::SumDp,
    }
}

/// Correction parameters: explicit depths when configured, otherwise planned.
pub fn resolve_params(cfg: &RunConfig, arity: usize, lambda: f64, rho: f64) -> Result<(CorrectionParams, Option<Plan>)> {
    let gamma = cfg.params.gamma.unwrap_or(0.25);
    let zeta = cfg.params.zeta.unwrap_or(2.0 * (arity.max(2) as f64).ln());
    let input = PlanInput {
        rho,
        q0: arity,
        d: cfg.graph.d,
        lambda,
        gamma,
        zeta,
        n: cfg.graph.n,
        c_override: cfg.params.c,
    };
    let plan = if cfg.graph.d > 4 { Some(plan_parameters(&input)?) } else { None };
    match (cfg.params.l1, cfg.params.l2) {
        (Some(l1), Some(l2)) => {
            let params = CorrectionParams {
                gamma,
                zeta,
                l1,
                l2,
                c: if l1 == 0 { 0.0 } else { l2 as f64 / l1 as f64 },
            };
            Ok((params, plan))
        }
        _ => {
            let plan = plan.ok_or_else(|| {
                Error::Config("planning needs degree above 4; set params.l1 and params.l2".into())
            })?;
            Ok((plan.params.clone(), Some(plan)))
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InnerSummary {
    pub kind: InnerKind,
    pub field: FieldDescriptor,
    pub length: usize,
    pub dimension: usize,
    pub rate: f64,
    pub min_distance: Option<usize>,
    pub checks: usize,
    pub real_queries: usize,
    pub tree_queries: usize,
    pub pads: usize,
    pub smoothness: usize,
    pub exactly_smooth: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphSummary {
    pub n: usize,
    pub d: usize,
    pub seed: u64,
    pub lambda: f64,
    pub lambda_tolerance: f64,
    pub ramanujan_bound: f64,
    pub file_sha256: String,
    pub rotation_hash: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BuildReport {
    pub inner: InnerSummary,
    pub geometry: Option<GeometrySummary>,
    pub dimension_bound: Option<DimensionBoundReport>,
    pub graph: GraphSummary,
    pub length: usize,
    pub dimension: Option<usize>,
    pub rate: Option<f64>,
    pub rate_lower_bound: f64,
    pub rate_bound_holds: Option<bool>,
    pub relative_distance_bound: Option<f64>,
    pub params: CorrectionParams,
    pub plan: Option<Plan>,
    pub warnings: Vec<String>,
}

fn summarize_inner(kind: InnerKind, base: &SmoothReconstruction, tree: &SmoothReconstruction) -> InnerSummary {
    let code = base.code();
    InnerSummary {
        kind,
        field: code.field().descriptor(),
        length: code.length(),
        dimension: code.dimension(),
        rate: code.rate(),
        min_distance: code.min_distance(),
        checks: base.checks().len(),
        real_queries: base.real_queries(),
        tree_queries: tree.query_count(),
        pads: tree.pad_count(),
        smoothness: tree.smoothness(),
        exactly_smooth: base.is_exactly_smooth(),
    }
}

fn cmd_build(job: &mut Job<'_>) -> Result<Outcome> {
    let cfg = job.cfg;
    let (base, geometry) = build_inner(cfg)?;
    let tree = tree_scheme(cfg, &base)?;
    let mut graph = RegularGraph::random_regular(cfg.graph.n, cfg.graph.d, job.graph_seed)?;
    let lambda = graph.second_eigenvalue(cfg.graph.lambda_tolerance)?;
    let graph_file = graph.to_file(Some(cfg.graph.lambda_tolerance), Some(job.graph_seed));
    job.write_json("graph.json", &graph_file)?;
    let graph_sha = job.outputs["graph.json"].clone();

    let mut code = TannerCode::build(base.clone(), DoubleCover::new(graph))?;
    let mut outcome = Outcome::Passed;
    let mut warnings = code.warnings().to_vec();
    let mut dimension = None;
    let mut rate_bound_holds = None;
    if cfg.graph.compute_dimension && code.length() <= DIMENSION_LENGTH_LIMIT {
        match code.compute_dimension_and_generator() {
            Ok(k) => {
                dimension = Some(k);
                rate_bound_holds = Some(true);
            }
            Err(Error::RateBoundViolated { k, .. }) => {
                dimension = Some(k);
                rate_bound_holds = Some(false);
                outcome = Outcome::SuiteFailed;
            }
            Err(e) => return Err(e),
        }
    } else if cfg.graph.compute_dimension {
        warnings.push(format!(
            "N = {} exceeds {DIMENSION_LENGTH_LIMIT}; dimension not computed, only the zero codeword is available",
            code.length()
        ));
    }
    let (params, plan) = resolve_params(cfg, tree.query_count(), lambda, cfg.noise.rho)?;
    if let Some(plan) = &plan {
        if !plan.feasible {
            warnings.push("planner inputs are outside the guaranteed regime".into());
        }
    }
    let delta0 = base.code().relative_distance();
    let report = BuildReport {
        inner: summarize_inner(cfg.inner.kind, &base, &tree),
        geometry: geometry.as_ref().map(AffineGeometry::summary),
        dimension_bound: geometry
            .as_ref()
            .map(|g| dimension_bound_check(base.code().dimension(), g.h(), g.m(), DEFAULT_BETA)),
        graph: GraphSummary {
            n: cfg.graph.n,
            d: cfg.graph.d,
            seed: job.graph_seed,
            lambda,
            lambda_tolerance: cfg.graph.lambda_tolerance,
            ramanujan_bound: ramanujan_bound(cfg.graph.d),
            file_sha256: graph_sha,
            rotation_hash: code.graph_hash(),
        },
        length: code.length(),
        dimension,
        rate: dimension.map(|k| k as f64 / code.length() as f64),
        rate_lower_bound: code.rate_lower_bound(),
        rate_bound_holds,
        relative_distance_bound: delta0.map(|d| d * (d - lambda).max(0.0)),
        params,
        plan,
        warnings,
    };
    job.write_json("code.json", &report)?;
    Ok(outcome)
}

/// Code and tree scheme rebuilt from the config and the stored graph.
struct Loaded {
    code: TannerCode,
    tree: SmoothReconstruction,
    report: BuildReport,
}

fn load_code(job: &mut Job<'_>, need_generator: bool) -> Result<Loaded> {
    let cfg = job.cfg;
    let report: BuildReport = serde_json::from_slice(&job.read("code.json")?)?;
    let graph_bytes = job.read("graph.json")?;
    if sha256(&graph_bytes) != report.graph.file_sha256 {
        return Err(Error::Artifact("graph.json does not match the build report".into()));
    }
    let file: GraphFile = serde_json::from_slice(&graph_bytes)?;
    let graph = RegularGraph::from_file(&file)?;
    if graph.n() != cfg.graph.n || graph.d() != cfg.graph.d {
        return Err(Error::Artifact(format!(
            "stored graph has n={}, d={}, config asks for n={}, d={}",
            graph.n(),
            graph.d(),
            cfg.graph.n,
            cfg.graph.d
        )));
    }
    let (base, _) = build_inner(cfg)?;
    let tree = tree_scheme(cfg, &base)?;
    let mut code = TannerCode::build(base, DoubleCover::new(graph))?;
    if need_generator {
        code.compute_dimension_and_generator()?;
    }
    Ok(Loaded { code, tree, report })
}

fn header_for(code: &TannerCode) -> WordHeader {
    WordHeader {
        field: code.inner_code().field().descriptor(),
        length: code.length(),
        graph_hash: code.graph_hash(),
    }
}

fn read_word_file(job: &mut Job<'_>, name: &str, code: &TannerCode) -> Result<Vec<u8>> {
    let bytes = job.read(name)?;
    let (header, word) = read_word(BufReader::new(&bytes[..]))?;
    if header != header_for(code) {
        return Err(Error::Artifact(format!("{name} was written for a different code")));
    }
    Ok(word)
}

fn cmd_encode(job: &mut Job<'_>) -> Result<Outcome> {
    let random = job.cfg.codeword.source == CodewordSource::Random;
    let loaded = load_code(job, random)?;
    let code = &loaded.code;
    let word = if random {
        code.random_codeword(&mut rng::substream(job.cfg.seed, rng::CODEWORD, 0, 0))?
    } else {
        code.zero_codeword()
    };
    let mut buf = Vec::new();
    write_word(&mut buf, &header_for(code), &word)?;
    job.write("codeword.bin", &buf)?;
    Ok(Outcome::Passed)
}

#[derive(Debug, Serialize)]
struct CorruptionReport {
    model: NoiseModel,
    count: usize,
    fraction: f64,
    positions: Vec<usize>,
}

fn noise_model(cfg: &RunConfig) -> Result<NoiseModel> {
    Ok(match cfg.noise.model {
        NoiseKindName::Random => NoiseModel::random(cfg.noise.rho),
        NoiseKindName::Pattern => NoiseModel::Pattern {
            positions: load_pattern(cfg.noise.pattern.as_deref().expect("validated"))?,
        },
    })
}

fn cmd_corrupt(job: &mut Job<'_>) -> Result<Outcome> {
    let loaded = load_code(job, false)?;
    let code = &loaded.code;
    let word = read_word_file(job, "codeword.bin", code)?;
    let model = noise_model(job.cfg)?;
    let mut r = rng::substream(job.cfg.seed, rng::NOISE, 0, 0);
    let (noisy, positions) = corrupt(&word, &model, code.p(), &mut r)?;
    let mut buf = Vec::new();
    write_word(&mut buf, &header_for(code), &noisy)?;
    job.write("corrupted.bin", &buf)?;
    job.write_json(
        "corruption.json",
        &CorruptionReport {
            count: positions.len(),
            fraction: positions.len() as f64 / code.length() as f64,
            model,
            positions,
        },
    )?;
    Ok(Outcome::Passed)
}

fn cmd_correct(job: &mut Job<'_>) -> Result<Outcome> {
    let loaded = load_code(job, false)?;
    let code = &loaded.code;
    let received = if job.path("corrupted.bin").exists() {
        read_word_file(job, "corrupted.bin", code)?
    } else {
        read_word_file(job, "codeword.bin", code)?
    };
    let truth = if job.path("codeword.bin").exists() {
        Some(read_word_file(job, "codeword.bin", code)?)
    } else {
        None
    };
    let positions = if job.cfg.correct.positions.is_empty() {
        vec![0]
    } else {
        job.cfg.correct.positions.clone()
    };
    let params = &loaded.report.params;
    let mut warnings = Vec::new();
    if let Some(plan) = &loaded.report.plan {
        if !plan.feasible {
            warnings.push("parameters are outside the guaranteed regime".to_string());
        }
    }
    let mut records = Vec::new();
    for (i, &e0) in positions.iter().enumerate() {
        let mut r = rng::substream(job.cfg.seed, rng::POSITION, 1, i as u64);
        let c = correct(code, &loaded.tree, &received, e0, params, strategy(job.cfg), &mut r)?;
        records.push(TrialRecord::new(
            e0,
            truth.as_ref().map(|t| t[e0]),
            &c,
            params,
            loaded.tree.query_count(),
            warnings.clone(),
        ));
    }
    job.write_json("trials.json", &records)?;
    Ok(Outcome::Passed)
}

#[derive(Debug, Serialize)]
struct ExperimentReport {
    lambda: f64,
    params: CorrectionParams,
    success_curve: Option<Vec<CurvePoint>>,
    monotone: Option<bool>,
    sweep: Option<CurvePoint>,
    walk_tail: Option<WalkTailReport>,
    passed: bool,
}

fn cmd_experiment(job: &mut Job<'_>, full: bool) -> Result<Outcome> {
    let cfg = job.cfg;
    let loaded = load_code(job, false)?;
    let code = &loaded.code;
    let lambda = loaded.report.graph.lambda;
    let params = loaded.report.params.clone();
    let setup = TrialSetup {
        code,
        scheme: &loaded.tree,
        params: &params,
        strategy: strategy(cfg),
        codeword: None,
    };
    let mut passed = true;
    let mut report = ExperimentReport {
        lambda,
        params: params.clone(),
        success_curve: None,
        monotone: None,
        sweep: None,
        walk_tail: None,
        passed: true,
    };
    if full && cfg.experiment.success_curve && !cfg.experiment.rho_grid.is_empty() {
        let points = success_curve(&setup, &cfg.experiment.rho_grid, cfg.experiment.trials, cfg.seed)?;
        let monotone = monotone_up_to_overlap(&points);
        passed &= monotone && points.iter().all(|p| p.accounting_mismatches == 0);
        let mut buf = Vec::new();
        write_curve_csv(&mut buf, &points)?;
        job.write("success_curve.csv", &buf)?;
        report.monotone = Some(monotone);
        report.success_curve = Some(points);
    }
    if full && cfg.experiment.sweep > 0 {
        let positions: Vec<usize> = (0..cfg.experiment.sweep.min(code.length())).collect();
        let point = position_sweep(&setup, &positions, &NoiseModel::random(0.0), cfg.seed)?;
        passed &= point.successes == point.trials && point.accounting_mismatches == 0;
        let mut buf = Vec::new();
        write_curve_csv(&mut buf, std::slice::from_ref(&point))?;
        job.write("sweep.csv", &buf)?;
        report.sweep = Some(point);
    }
    if !full || cfg.experiment.walk_tail {
        let w = &cfg.walk;
        let zero = code.zero_codeword();
        let mut r = rng::substream(cfg.seed, rng::NOISE, 1, 0);
        let (_, corrupted) = corrupt(&zero, &NoiseModel::random(w.rho), code.p(), &mut r)?;
        let start = w.start.map_or(StartDistribution::Uniform, StartDistribution::PointMass);
        let seed: u64 = rng::substream(cfg.seed, rng::WALK, 1, 0).random();
        let tail = walk_tail_check(code.cover(), &corrupted, w.gamma, w.length, w.trials, lambda, start, seed)?;
        passed &= tail.pass;
        let mut buf = Vec::new();
        write_walk_csv(&mut buf, std::slice::from_ref(&tail))?;
        job.write("walk_tail.csv", &buf)?;
        report.walk_tail = Some(tail);
    }
    report.passed = passed;
    let name = if full { "experiment.json" } else { "walkstats.json" };
    job.write_json(name, &report)?;
    Ok(if passed { Outcome::Passed } else { Outcome::SuiteFailed })
}

fn cmd_spectrum(job: &mut Job<'_>) -> Result<Outcome> {
    let bytes = job.read("graph.json")?;
    let file: GraphFile = serde_json::from_slice(&bytes)?;
    let graph = RegularGraph::from_file(&file)?;
    let report = edge_walk_spectrum_check(&graph, 1e-8)?;
    job.write_json("spectrum.json", &report)?;
    Ok(if report.passed { Outcome::Passed } else { Outcome::SuiteFailed })
}

/// Output directory of a config, for callers that drive commands directly.
pub fn output_dir(cfg: &RunConfig) -> &Path {
    &cfg.output.dir
}
