//! Tail of `‖A⁻¹‖` for Gaussian matrices around a fixed center, against the
//! Gaussian, smoothed (`1.823 √d/(xσ)` and `d^{3/2}/(xσ)`) and conjectured bounds.

use serde::{Deserialize, Serialize};
use smoothlab::{gaussian_matrix, inverse_norm, SeedSpec};

use crate::centers::matrix_center;
use crate::config::{CenterSource, ExperimentConfig};
use crate::error::Result;
use crate::report::{Cell, Report};
use crate::stats::{judge, proportion, Verdict};

use super::{check_records, par_trials};

pub const COLUMNS: [&str; 8] =
    ["sigma", "threshold", "empirical", "stderr", "bound_edelman", "bound_sst", "bound_thm43", "bound_conj1"];

/// Constant in the smoothed bound `1.823 √d / (xσ)`.
pub const SST_CONSTANT: f64 = 1.823;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trials {
    /// `‖A⁻¹‖` per sigma and trial; `None` for a singular sample.
    pub inverse_norms: Vec<Vec<Option<f64>>>,
}

pub fn sample(cfg: &ExperimentConfig) -> Result<Trials> {
    let center = matrix_center(&cfg.centers[0], cfg.d)?;
    let inverse_norms = cfg
        .sigma_grid
        .iter()
        .map(|&sigma| {
            par_trials(cfg.trials, |i| {
                let a = gaussian_matrix(&center, sigma, SeedSpec::new(cfg.master_seed, i))?;
                Ok(Some(inverse_norm(&a)?).filter(|v| v.is_finite()))
            })
        })
        .collect::<Result<_>>()?;
    Ok(Trials { inverse_norms })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    /// `√d / t`; only for the zero center with `σ = 1`.
    pub edelman: Option<f64>,
    pub sst: f64,
    pub thm43: f64,
    /// Conjectured, not proven.
    pub conj1: f64,
}

pub fn bounds(cfg: &ExperimentConfig, sigma: f64, t: f64) -> Bounds {
    let d = cfg.d as f64;
    let standard = cfg.centers[0] == CenterSource::Zero && sigma == 1.0;
    Bounds {
        edelman: standard.then(|| d.sqrt() / t),
        sst: SST_CONSTANT * d.sqrt() / (t * sigma),
        thm43: d.powf(1.5) / (t * sigma),
        conj1: d.sqrt() / (t * sigma),
    }
}

#[derive(Debug, Serialize)]
struct Verdicts {
    sigma: f64,
    threshold: f64,
    edelman: Verdict,
    sst: Verdict,
    thm43: Verdict,
    conj1: Verdict,
}

pub fn aggregate(cfg: &ExperimentConfig, trials: &Trials) -> Result<Report> {
    check_records(cfg, &trials.inverse_norms, cfg.sigma_grid.len())?;
    let mut report = Report::new(cfg, COLUMNS.to_vec());
    let mut verdicts = Vec::new();
    let mut singular = Vec::new();
    for (&sigma, samples) in cfg.sigma_grid.iter().zip(&trials.inverse_norms) {
        singular.push(samples.iter().filter(|v| v.is_none()).count());
        for &t in &cfg.thresholds {
            let hits = samples.iter().filter(|v| v.is_none_or(|x| x > t)).count() as u64;
            let (p, se) = proportion(hits, samples.len() as u64);
            let b = bounds(cfg, sigma, t);
            report.push(vec![
                sigma.into(),
                t.into(),
                p.into(),
                se.into(),
                Cell::opt(b.edelman),
                b.sst.into(),
                b.thm43.into(),
                b.conj1.into(),
            ]);
            verdicts.push(Verdicts {
                sigma,
                threshold: t,
                edelman: judge(p, se, b.edelman),
                sst: judge(p, se, Some(b.sst)),
                thm43: judge(p, se, Some(b.thm43)),
                conj1: judge(p, se, Some(b.conj1)),
            });
        }
    }
    report.note("verdicts", &verdicts);
    report.note("singular_trials", &singular);
    report.note("conjectural", ["bound_conj1"]);
    report.note("rule", "respected when empirical <= min(1, bound) + 3 stderr; bounds >= 1 are vacuous");
    Ok(report)
}
