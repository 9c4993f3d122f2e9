//! Tail of `‖A⁻¹‖` for uniform ±1 matrices, with the singular case counted
//! separately. Sampled, or exhaustive over all `2^(d²)` sign patterns.

use serde::{Deserialize, Serialize};
use smoothlab::{integer_determinant, inverse_norm, rademacher_matrix, Matrix64, SeedSpec};

use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::report::Report;
use crate::stats::proportion;

use super::{check_records, par_trials};

pub const COLUMNS: [&str; 6] =
    ["threshold", "empirical", "stderr", "singular_frequency", "bound_conjectured_leading", "bound_status"];

/// Largest `d²` enumerated in exhaustive mode.
pub const MAX_EXHAUSTIVE_ENTRIES: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trials {
    /// `‖A⁻¹‖` per trial; `None` when `det A = 0` exactly.
    pub inverse_norms: Vec<Option<f64>>,
}

/// The sign matrix whose entry `k` (row-major) is `-1` iff bit `k` of
/// `pattern` is set.
pub fn sign_matrix(d: usize, pattern: u64) -> Matrix64 {
    let data = (0..d * d).map(|k| if pattern >> k & 1 == 1 { -1.0 } else { 1.0 }).collect();
    Matrix64::new(d, d, data).expect("finite entries")
}

fn measure(a: &Matrix64) -> Result<Option<f64>> {
    if integer_determinant(a)? == 0 {
        return Ok(None);
    }
    Ok(Some(inverse_norm(a)?))
}

pub fn sample(cfg: &ExperimentConfig) -> Result<Trials> {
    let d = cfg.d;
    let inverse_norms = par_trials(cfg.trials, |i| {
        let a = if cfg.exhaustive { sign_matrix(d, i) } else { rademacher_matrix(d, SeedSpec::new(cfg.master_seed, i))? };
        measure(&a)
    })?;
    Ok(Trials { inverse_norms })
}

pub fn aggregate(cfg: &ExperimentConfig, trials: &Trials) -> Result<Report> {
    check_records(cfg, std::slice::from_ref(&trials.inverse_norms), 1)?;
    let mut report = Report::new(cfg, COLUMNS.to_vec());
    let total = trials.inverse_norms.len() as u64;
    let singular = trials.inverse_norms.iter().filter(|v| v.is_none()).count() as u64;
    let (sing_freq, sing_se) = proportion(singular, total);
    for &t in &cfg.thresholds {
        let hits = trials.inverse_norms.iter().filter(|v| v.is_none_or(|x| x > t)).count() as u64;
        let (p, se) = proportion(hits, total);
        report.push(vec![
            t.into(),
            p.into(),
            se.into(),
            sing_freq.into(),
            ((cfg.d as f64).sqrt() / t).into(),
            "conjectural".into(),
        ]);
    }
    report.note("mode", if cfg.exhaustive { "exhaustive" } else { "sampled" });
    report.note("matrices", total);
    report.note("singular_count", singular);
    report.note("singular_frequency", sing_freq);
    report.note("singular_stderr", sing_se);
    report.note(
        "bound_note",
        "conjectured tail sqrt(d)/t + alpha^n with an unspecified alpha < 1; only the sqrt(d)/t term is reported",
    );
    Ok(report)
}
