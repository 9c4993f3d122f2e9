//! Smoothed-complexity estimate over a finite center set: for each center
//! `x` and sigma, the mean of a measure over inputs `x + σ‖x‖ r`, and the
//! maximum of those means over the centers.

use serde::{Deserialize, Serialize};
use smoothlab::{
    run_perceptron_with_rule, smoothed_input, solve, LinearProgram64, PerceptronInstance64, SeedSpec, Vector64,
};

use crate::centers::{lp_center, point_centers};
use crate::config::{ExperimentConfig, Measure};
use crate::error::{config, LabError, Result};
use crate::report::Report;
use crate::stats;

use super::{check_records, par_trials};

pub const COLUMNS: [&str; 7] = ["center", "sigma", "trials", "mean", "half_width", "smoothed_estimate", "is_max"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trials {
    /// Measure per center, sigma and trial.
    pub per_center: Vec<Vec<Vec<f64>>>,
}

/// `(A row-major, b, z)` as one vector.
pub fn flatten_lp(lp: &LinearProgram64) -> Vector64 {
    let mut x: Vec<f64> = lp.rows().iter().flat_map(|a| a.entries().to_vec()).collect();
    x.extend_from_slice(lp.rhs());
    x.extend_from_slice(lp.objective().entries());
    Vector64::new(x).expect("finite data")
}

pub fn unflatten_lp(x: &Vector64, n: usize, d: usize) -> Result<LinearProgram64> {
    let e = x.entries();
    let rows = (0..n).map(|i| Vector64::new(e[i * d..(i + 1) * d].to_vec())).collect::<smoothlab::Result<_>>()?;
    let rhs = e[n * d..n * d + n].to_vec();
    let z = Vector64::new(e[n * d + n..].to_vec())?;
    Ok(LinearProgram64::new(rows, rhs, z)?)
}

enum Center {
    Program(LinearProgram64),
    Points(Vec<Vector64>),
}

impl Center {
    fn flat(&self) -> Vector64 {
        match self {
            Center::Program(lp) => flatten_lp(lp),
            Center::Points(p) => Vector64::new(p.iter().flat_map(|v| v.entries().to_vec()).collect()).expect("finite"),
        }
    }
}

fn evaluate(cfg: &ExperimentConfig, center: &Center, x: &Vector64, seed: SeedSpec) -> Result<f64> {
    match center {
        Center::Program(c) => {
            let lp = unflatten_lp(x, c.n(), c.d())?;
            Ok(solve(&lp, seed)?.trace.pivot_count() as f64)
        }
        Center::Points(p) => {
            let d = p[0].dim();
            let points = x.entries().chunks(d).map(|c| Vector64::new(c.to_vec())).collect::<smoothlab::Result<_>>()?;
            let inst = PerceptronInstance64::new(points)
                .map_err(|e| config(format!("perturbed perceptron center is invalid ({e}); use nonzero centers")))?;
            Ok(run_perceptron_with_rule(&inst, seed, cfg.iteration_cap, cfg.rule)?.iterations as f64)
        }
    }
}

/// Center `c`, trial `i` draws from stream `c * trials + i` (the same for
/// every sigma).
pub fn sample(cfg: &ExperimentConfig) -> Result<Trials> {
    let centers: Vec<Center> = cfg
        .centers
        .iter()
        .map(|c| match cfg.measure {
            Measure::SimplexPivots => lp_center(c, cfg.n, cfg.d).map(Center::Program),
            Measure::PerceptronIterations => point_centers(c, cfg.n, cfg.d).map(Center::Points),
        })
        .collect::<Result<_>>()?;
    let per_center = centers
        .iter()
        .enumerate()
        .map(|(ci, center)| {
            let flat = center.flat();
            cfg.sigma_grid
                .iter()
                .map(|&sigma| {
                    par_trials(cfg.trials, |i| {
                        let seed = SeedSpec::new(cfg.master_seed, ci as u64 * cfg.trials + i);
                        let x = smoothed_input(&flat, sigma, seed)?;
                        evaluate(cfg, center, &x, seed)
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(Trials { per_center })
}

#[derive(Debug, Serialize)]
struct Estimate {
    sigma: f64,
    smoothed_estimate: f64,
    argmax_center: String,
}

pub fn aggregate(cfg: &ExperimentConfig, trials: &Trials) -> Result<Report> {
    if trials.per_center.len() != cfg.centers.len() {
        return Err(LabError::Report("trial records do not match the center list".into()));
    }
    for per_sigma in &trials.per_center {
        check_records(cfg, per_sigma, cfg.sigma_grid.len())?;
    }
    let mut report = Report::new(cfg, COLUMNS.to_vec());
    let means: Vec<Vec<f64>> =
        trials.per_center.iter().map(|per_sigma| per_sigma.iter().map(|xs| stats::mean(xs)).collect()).collect();
    let mut estimates = Vec::new();
    for (si, &sigma) in cfg.sigma_grid.iter().enumerate() {
        // First center wins ties.
        let (best, best_mean) = means
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (ci, m)| if m[si] > acc.1 { (ci, m[si]) } else { acc });
        for (ci, center) in cfg.centers.iter().enumerate() {
            let xs = &trials.per_center[ci][si];
            report.push(vec![
                center.to_string().as_str().into(),
                sigma.into(),
                xs.len().into(),
                means[ci][si].into(),
                stats::half_width(xs).into(),
                best_mean.into(),
                (if ci == best { "true" } else { "false" }).into(),
            ]);
        }
        estimates.push(Estimate { sigma, smoothed_estimate: best_mean, argmax_center: cfg.centers[best].to_string() });
    }
    report.note("estimates", &estimates);
    report.note("label", "max over tested centers");
    report.note("perturbation", "x + sigma * |x| * r with r standard Gaussian");
    Ok(report)
}
