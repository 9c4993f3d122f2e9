//! The d-subset indicator count for Gaussian point sets, evaluated as
//! literally stated: `X_I = 1` iff `‖[a_i : i ∈ I]⁻¹‖ >= σ²/(8 d^{3/2} n⁷)`,
//! and the event `(d/2) Σ_I X_I < ⌈(n-d-1)/2⌉ C(n, d-1)`.

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use smoothlab::perturb::shadow_regime_variance;
use smoothlab::polytope::binomial;
use smoothlab::{gaussian_points, inverse_norm, Error, Matrix64, SeedSpec};

use crate::centers::point_centers;
use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::report::Report;
use crate::stats::{self, proportion};

use super::{check_records, par_trials};

pub const COLUMNS: [&str; 10] = [
    "sigma",
    "trials",
    "indicator_threshold",
    "subsets",
    "mean_sum_x",
    "mean_lhs",
    "rhs",
    "event_frequency",
    "stderr",
    "stated_probability",
];

pub const SUBSET_BUDGET: u128 = 100_000;

/// Relative slack on the variance comparison so that the boundary sigma is
/// accepted.
const REGIME_SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trials {
    /// `Σ_I X_I` per sigma and trial.
    pub sum_x: Vec<Vec<u64>>,
}

pub fn indicator_threshold(n: usize, d: usize, sigma: f64) -> f64 {
    sigma * sigma / (8.0 * (d as f64).powf(1.5) * (n as f64).powi(7))
}

/// `⌈(n-d-1)/2⌉ · C(n, d-1)`
pub fn right_side(n: usize, d: usize) -> f64 {
    let half = (n.saturating_sub(d + 1)).div_ceil(2);
    half as f64 * binomial(n, d - 1) as f64
}

/// `1 - n^{-d} - n^{-n+d-1} - n^{-2.9d+1}`
pub fn stated_probability(n: usize, d: usize) -> f64 {
    let (nf, df) = (n as f64, d as f64);
    1.0 - nf.powf(-df) - nf.powf(-nf + df - 1.0) - nf.powf(-2.9 * df + 1.0)
}

fn check(cfg: &ExperimentConfig) -> Result<()> {
    let (n, d) = (cfg.n, cfg.d);
    if d > n {
        return Err(Error::OutOfRegime(format!("need d <= n, got n = {n}, d = {d}")).into());
    }
    let limit = shadow_regime_variance(n, d);
    for &sigma in &cfg.sigma_grid {
        if sigma * sigma > limit * (1.0 + REGIME_SLACK) {
            return Err(Error::OutOfRegime(format!("sigma^2 = {} exceeds 1/(9 d ln n) = {limit}", sigma * sigma)).into());
        }
    }
    let required = binomial(n, d);
    if required > SUBSET_BUDGET {
        return Err(Error::SizeLimit { what: "d-subsets C(n, d)", required, budget: SUBSET_BUDGET }.into());
    }
    Ok(())
}

pub fn sample(cfg: &ExperimentConfig) -> Result<Trials> {
    check(cfg)?;
    let centers = point_centers(&cfg.centers[0], cfg.n, cfg.d)?;
    let sum_x = cfg
        .sigma_grid
        .iter()
        .map(|&sigma| {
            let threshold = indicator_threshold(cfg.n, cfg.d, sigma);
            par_trials(cfg.trials, |i| {
                let points = gaussian_points(&centers, sigma, SeedSpec::new(cfg.master_seed, i))?.points;
                let mut count = 0u64;
                for subset in (0..cfg.n).combinations(cfg.d) {
                    let cols: Vec<_> = subset.iter().map(|&k| points[k].clone()).collect();
                    if inverse_norm(&Matrix64::from_columns(&cols)?)? >= threshold {
                        count += 1;
                    }
                }
                Ok(count)
            })
        })
        .collect::<Result<_>>()?;
    Ok(Trials { sum_x })
}

pub fn aggregate(cfg: &ExperimentConfig, trials: &Trials) -> Result<Report> {
    check_records(cfg, &trials.sum_x, cfg.sigma_grid.len())?;
    check(cfg)?;
    let (n, d) = (cfg.n, cfg.d);
    let rhs = right_side(n, d);
    let mut report = Report::new(cfg, COLUMNS.to_vec());
    for (&sigma, sums) in cfg.sigma_grid.iter().zip(&trials.sum_x) {
        let lhs: Vec<f64> = sums.iter().map(|&s| d as f64 / 2.0 * s as f64).collect();
        let events = lhs.iter().filter(|&&l| l < rhs).count() as u64;
        let (p, se) = proportion(events, sums.len() as u64);
        let sum_f: Vec<f64> = sums.iter().map(|&s| s as f64).collect();
        report.push(vec![
            sigma.into(),
            sums.len().into(),
            indicator_threshold(n, d, sigma).into(),
            (binomial(n, d) as u64).into(),
            stats::mean(&sum_f).into(),
            stats::mean(&lhs).into(),
            rhs.into(),
            p.into(),
            se.into(),
            stated_probability(n, d).into(),
        ]);
    }
    report.note(
        "direction",
        "evaluated literally; the indicator threshold is tiny, so X_I is almost always 1 and the event is rare",
    );
    Ok(report)
}
