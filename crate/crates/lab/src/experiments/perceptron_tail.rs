//! Tail of the perceptron condition number `1/ν` for Gaussian point sets,
//! iteration counts against `⌈1/ν²⌉`, and the fitted constant of the
//! smoothed iteration bound.

use serde::{Deserialize, Serialize};
use smoothlab::{
    blum_dunagan_tail, gaussian_points, iteration_bound, run_perceptron_with_rule, smoothed_iteration_shape,
    wiggle_room, PerceptronInstance64, RunStatus, SeedSpec, TailStatus,
};

use crate::centers::point_centers;
use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::report::{Cell, Report};
use crate::stats::{judge, proportion, quantile};

use super::{check_records, par_trials};

pub const COLUMNS: [&str; 8] = [
    "sigma",
    "threshold",
    "empirical",
    "stderr",
    "bound_bd",
    "bound_status",
    "feasible_trials",
    "infeasible_frequency",
];

/// Failure probabilities at which the iteration shape constant is fitted.
pub const DELTAS: [f64; 3] = [0.5, 0.1, 0.05];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PerceptronTrial {
    /// Certified margin; 0 marks an infeasible instance (not run).
    pub nu: f64,
    pub iterations: u64,
    pub solved: bool,
    /// `⌈1/ν²⌉` for feasible instances.
    pub bound: Option<u64>,
    /// The run stopped at the configured cap before reaching `bound`.
    pub cap_limited: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trials {
    pub per_sigma: Vec<Vec<PerceptronTrial>>,
}

fn check(cfg: &ExperimentConfig) -> Result<()> {
    for &sigma in &cfg.sigma_grid {
        for &t in &cfg.thresholds {
            blum_dunagan_tail(cfg.n, cfg.d, sigma, t)?;
        }
    }
    Ok(())
}

/// Feasible instances run until solved or `min(cap, ⌈1/ν²⌉)` updates, which
/// is enough to catch any run exceeding the bound.
pub fn measure(inst: &PerceptronInstance64, cfg: &ExperimentConfig, seed: SeedSpec) -> Result<PerceptronTrial> {
    let nu = wiggle_room(inst);
    if nu <= 0.0 {
        return Ok(PerceptronTrial { nu: 0.0, iterations: 0, solved: false, bound: None, cap_limited: false });
    }
    let bound = iteration_bound(nu)?;
    let cap = cfg.iteration_cap.min(bound);
    let run = run_perceptron_with_rule(inst, seed, cap, cfg.rule)?;
    let solved = run.status == RunStatus::Solved;
    Ok(PerceptronTrial { nu, iterations: run.iterations, solved, bound: Some(bound), cap_limited: !solved && cap < bound })
}

pub fn sample(cfg: &ExperimentConfig) -> Result<Trials> {
    check(cfg)?;
    let centers = point_centers(&cfg.centers[0], cfg.n, cfg.d)?;
    let per_sigma = cfg
        .sigma_grid
        .iter()
        .map(|&sigma| {
            par_trials(cfg.trials, |i| {
                let seed = SeedSpec::new(cfg.master_seed, i);
                let points = gaussian_points(&centers, sigma, seed)?.points;
                let inst = PerceptronInstance64::new(points)?;
                measure(&inst, cfg, seed)
            })
        })
        .collect::<Result<_>>()?;
    Ok(Trials { per_sigma })
}

#[derive(Debug, Serialize)]
struct SigmaSummary {
    sigma: f64,
    feasible: u64,
    infeasible: u64,
    block_novikoff_checked: u64,
    block_novikoff_violations: u64,
    cap_limited: u64,
    median_iterations: Option<f64>,
    max_iterations: Option<f64>,
    shape_fit: Vec<ShapeFit>,
}

#[derive(Debug, Serialize)]
struct ShapeFit {
    delta: f64,
    /// `(1-δ)`-quantile of iterations over all trials; `None` when it falls
    /// on an infeasible or capped trial.
    quantile: Option<f64>,
    shape: f64,
    fitted_c: Option<f64>,
}

pub fn aggregate(cfg: &ExperimentConfig, trials: &Trials) -> Result<Report> {
    check_records(cfg, &trials.per_sigma, cfg.sigma_grid.len())?;
    check(cfg)?;
    let mut report = Report::new(cfg, COLUMNS.to_vec());
    let mut summaries = Vec::new();
    let mut verdicts = Vec::new();
    for (&sigma, samples) in cfg.sigma_grid.iter().zip(&trials.per_sigma) {
        let feasible: Vec<&PerceptronTrial> = samples.iter().filter(|s| s.nu > 0.0).collect();
        let (infeasible_freq, _) = proportion((samples.len() - feasible.len()) as u64, samples.len() as u64);
        for &t in &cfg.thresholds {
            let hits = feasible.iter().filter(|s| 1.0 / s.nu > t).count() as u64;
            let (p, se) = proportion(hits, feasible.len() as u64);
            let b = blum_dunagan_tail(cfg.n, cfg.d, sigma, t)?;
            let status = match b.status {
                TailStatus::Informative => "informative",
                TailStatus::Vacuous => "vacuous",
                TailStatus::NegativeLog => "negative_log",
            };
            let empirical = if feasible.is_empty() { Cell::Na } else { Cell::Num(p) };
            let stderr = if feasible.is_empty() { Cell::Na } else { Cell::Num(se) };
            report.push(vec![
                sigma.into(),
                t.into(),
                empirical,
                stderr,
                b.raw.into(),
                status.into(),
                feasible.len().into(),
                infeasible_freq.into(),
            ]);
            let bound = (b.status == TailStatus::Informative).then_some(b.raw);
            verdicts.push(serde_json::json!({
                "sigma": sigma, "threshold": t, "verdict": judge(p, se, bound),
            }));
        }

        let checked: Vec<&&PerceptronTrial> = feasible.iter().filter(|s| !s.cap_limited).collect();
        let violations = checked
            .iter()
            .filter(|s| !s.solved || s.bound.is_some_and(|b| s.iterations > b))
            .count() as u64;
        // Unsolved trials sort last as +inf.
        let iterations: Vec<f64> =
            samples.iter().map(|s| if s.solved { s.iterations as f64 } else { f64::INFINITY }).collect();
        let solved: Vec<f64> = iterations.iter().copied().filter(|x| x.is_finite()).collect();
        let shape_fit = DELTAS
            .iter()
            .map(|&delta| {
                let shape = smoothed_iteration_shape(cfg.n, cfg.d, sigma, delta)?;
                let q = Some(quantile(&iterations, 1.0 - delta)).filter(|q| q.is_finite());
                Ok(ShapeFit { delta, quantile: q, shape, fitted_c: q.map(|q| q / shape) })
            })
            .collect::<Result<Vec<_>>>()?;
        summaries.push(SigmaSummary {
            sigma,
            feasible: feasible.len() as u64,
            infeasible: (samples.len() - feasible.len()) as u64,
            block_novikoff_checked: checked.len() as u64,
            block_novikoff_violations: violations,
            cap_limited: feasible.iter().filter(|s| s.cap_limited).count() as u64,
            median_iterations: (!solved.is_empty()).then(|| quantile(&solved, 0.5)),
            max_iterations: (!solved.is_empty()).then(|| crate::stats::max(&solved)),
            shape_fit,
        });
    }
    report.note("per_sigma", &summaries);
    report.note("verdicts", &verdicts);
    report.note("tail_population", "feasible trials only; infeasible trials are reported as a frequency");
    Ok(report)
}
