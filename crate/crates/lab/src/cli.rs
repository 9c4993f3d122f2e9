//! Command-line interface.

use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use smoothlab::{
    brute_force_optimum, iteration_bound, margin_certificate, run_perceptron_with_rule, solve, LinearProgram64,
    LpStatus, PerceptronInstance64, RunStatus, SeedSpec, SelectionRule,
};

use crate::config::{ExperimentConfig, ExperimentKind, Settings};
use crate::error::{config, io, Result};
use crate::{experiments, replay};

#[derive(Debug, Parser)]
#[command(name = "smoothlab", version, about = "Smoothed-analysis experiments: condition-number tails, shadow sizes, simplex pivots, perceptron margins")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tail of ‖A⁻¹‖ for Gaussian matrices.
    TailMatrix(ExperimentArgs),
    /// Tail of ‖A⁻¹‖ and singularity frequency for ±1 matrices.
    TailRademacher(ExperimentArgs),
    /// Shadow vertex counts against the shadow-size bound.
    ShadowSize(ExperimentArgs),
    /// Shadow-vertex simplex pivot counts on perturbed linear programs.
    SimplexPivots(ExperimentArgs),
    /// Tail of the perceptron condition number and iteration counts.
    TailPerceptron(ExperimentArgs),
    /// Literal evaluation of the d-subset indicator inequality.
    SubmatrixLemma(ExperimentArgs),
    /// Max over centers of mean perturbed cost.
    SmoothedProfile(ExperimentArgs),
    /// Solve one linear program file with the two-phase shadow-vertex method.
    SolveLp(SolveArgs),
    /// Run the perceptron on one instance file.
    RunPerceptron(PerceptronArgs),
    /// Recompute a JSON report from its per-trial records and compare.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    /// Comma-separated list; `boundary` is the edge of the theorem's regime.
    #[arg(long)]
    sigma: Option<String>,
    /// Comma-separated list.
    #[arg(long)]
    threshold: Option<String>,
    #[arg(long)]
    trials: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// zero, ones, e1, klee-minty or a file path; smoothed-profile takes a
    /// comma-separated list.
    #[arg(long)]
    center: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Include per-trial records (JSON only).
    #[arg(long)]
    per_trial: bool,
    /// Worker threads; 0 uses every core.
    #[arg(long)]
    threads: Option<usize>,
    /// `key = value` file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Perceptron iteration cap.
    #[arg(long)]
    cap: Option<u64>,
    /// lowest-index, most-violated or random-violated.
    #[arg(long)]
    rule: Option<String>,
    /// smoothed-profile measure: simplex-pivots or perceptron-iterations.
    #[arg(long)]
    measure: Option<String>,
    /// tail-rademacher: enumerate every sign matrix instead of sampling.
    #[arg(long)]
    exhaustive: bool,
}

#[derive(Debug, Args)]
struct SolveArgs {
    file: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PerceptronArgs {
    file: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = crate::config::DEFAULT_ITERATION_CAP)]
    cap: u64,
    #[arg(long, default_value = "lowest-index")]
    rule: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    report: PathBuf,
}

impl ExperimentArgs {
    fn settings(&self) -> Result<Settings> {
        let mut s = match &self.config {
            Some(path) => Settings::load(path)?,
            None => Settings::new(),
        };
        let mut set = |k: &str, v: Option<String>| -> Result<()> {
            if let Some(v) = v {
                s.set(k, v)?;
            }
            Ok(())
        };
        set("n", self.n.map(|v| v.to_string()))?;
        set("d", self.d.map(|v| v.to_string()))?;
        set("sigma", self.sigma.clone())?;
        set("threshold", self.threshold.clone())?;
        set("trials", self.trials.map(|v| v.to_string()))?;
        set("seed", self.seed.map(|v| v.to_string()))?;
        set("center", self.center.clone())?;
        set("out", self.out.as_ref().map(|p| p.display().to_string()))?;
        set("format", self.format.map(|f| format!("{f:?}").to_lowercase()))?;
        set("per-trial", self.per_trial.then(|| "true".into()))?;
        set("threads", self.threads.map(|v| v.to_string()))?;
        set("cap", self.cap.map(|v| v.to_string()))?;
        set("rule", self.rule.clone())?;
        set("measure", self.measure.clone())?;
        set("exhaustive", self.exhaustive.then(|| "true".into()))?;
        Ok(s)
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| io(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|e| io(Path::new("<stdout>"), e))
        }
    }
}

fn run_experiment(kind: ExperimentKind, args: &ExperimentArgs) -> Result<()> {
    let settings = args.settings()?;
    let cfg = ExperimentConfig::resolve(kind, &settings)?;
    let out = settings.get("out").map(PathBuf::from);
    let format = match settings.get("format") {
        Some("csv") => Format::Csv,
        Some("json") => Format::Json,
        Some(other) => return Err(config(format!("unknown format {other:?} (csv, json)"))),
        None if out.as_ref().and_then(|p| p.extension()).is_some_and(|e| e == "json") => Format::Json,
        None => Format::Csv,
    };
    let per_trial = settings.flag("per-trial")?;
    if per_trial && format == Format::Csv {
        return Err(config("--per-trial needs --format json"));
    }
    let threads: Option<usize> = settings
        .get("threads")
        .map(|t| t.parse().map_err(|_| config(format!("threads: cannot parse {t:?}"))))
        .transpose()?;
    let report = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| config(format!("thread pool: {e}")))?
            .install(|| experiments::run(&cfg, per_trial))?,
        None => experiments::run(&cfg, per_trial)?,
    };
    let text = match format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json(),
    };
    emit(out.as_deref(), &text)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| io(path, e))
}

fn solve_lp(args: &SolveArgs) -> Result<()> {
    let lp = LinearProgram64::parse(&read(&args.file)?)?;
    let sol = solve(&lp, SeedSpec::new(args.seed, 0))?;
    let oracle = brute_force_optimum(&lp)?;
    let (value, point) = match &sol.status {
        LpStatus::Optimal { vertex, value } => (Some(*value), Some(vertex.point.to_f64())),
        _ => (None, None),
    };
    let ray = match &sol.status {
        LpStatus::Unbounded { ray } => Some(ray.to_f64()),
        _ => None,
    };
    let doc = json!({
        "status": sol.status.kind(),
        "value": value,
        "point": point,
        "ray": ray,
        "phase1_bases_examined": sol.phase1_bases_examined,
        "degenerate_ties": sol.trace.degenerate_ties,
        "trace": sol.trace.record(),
        "oracle_status": oracle.kind(),
        "oracle_value": oracle.value(),
    });
    emit(args.out.as_deref(), &(serde_json::to_string_pretty(&doc).expect("serializable") + "\n"))
}

fn run_perceptron_file(args: &PerceptronArgs) -> Result<()> {
    let inst = PerceptronInstance64::parse(&read(&args.file)?)?;
    let rule: SelectionRule = args.rule.parse()?;
    let run = run_perceptron_with_rule(&inst, SeedSpec::new(args.seed, 0), args.cap, rule)?;
    let cert = margin_certificate(&inst);
    let doc = json!({
        "status": run.status,
        "iterations": run.iterations,
        "final_x": run.final_x.map(|x| x.to_f64()),
        "nu": cert.nu,
        "iteration_bound": iteration_bound(cert.nu).ok(),
        "solved": run.status == RunStatus::Solved,
    });
    emit(args.out.as_deref(), &(serde_json::to_string_pretty(&doc).expect("serializable") + "\n"))
}

fn verify(args: &VerifyArgs) -> Result<()> {
    let report = replay::verify(&read(&args.report)?)?;
    eprintln!("replay ok: {} rows recomputed from per-trial records", report.rows.len());
    Ok(())
}

fn dispatch(cli: Cli) -> Result<()> {
    match &cli.command {
        Command::TailMatrix(a) => run_experiment(ExperimentKind::MatrixTail, a),
        Command::TailRademacher(a) => run_experiment(ExperimentKind::RademacherTail, a),
        Command::ShadowSize(a) => run_experiment(ExperimentKind::ShadowSize, a),
        Command::SimplexPivots(a) => run_experiment(ExperimentKind::SimplexPivots, a),
        Command::TailPerceptron(a) => run_experiment(ExperimentKind::PerceptronTail, a),
        Command::SubmatrixLemma(a) => run_experiment(ExperimentKind::SubmatrixLemma, a),
        Command::SmoothedProfile(a) => run_experiment(ExperimentKind::SmoothedProfile, a),
        Command::SolveLp(a) => solve_lp(a),
        Command::RunPerceptron(a) => run_perceptron_file(a),
        Command::Verify(a) => verify(a),
    }
}

/// Parses `argv`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("smoothlab: {e}");
            e.exit_code()
        }
    }
}
