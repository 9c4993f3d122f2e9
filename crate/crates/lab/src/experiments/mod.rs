//! The seven experiments. Each has a `sample` step that runs the trials
//! (in parallel, trial `i` drawing from stream `i`) and returns typed
//! per-trial records, and a pure `aggregate` step that builds the report
//! from the config and those records alone. Replaying a report is
//! `aggregate` applied to the records it carries.

pub mod matrix_tail;
pub mod perceptron_tail;
pub mod rademacher_tail;
pub mod shadow_size;
pub mod simplex_pivots;
pub mod smoothed_profile;
pub mod submatrix_lemma;

use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use crate::config::{ExperimentConfig, ExperimentKind};
use crate::error::{LabError, Result};
use crate::report::Report;

/// Runs `trial(i)` for `i in 0..count` on the current rayon pool and
/// returns the results in index order.
pub(crate) fn par_trials<T, F>(count: u64, trial: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync + Send,
{
    (0..count).into_par_iter().map(trial).collect()
}

/// Checks that trial records form `outer` runs of `cfg.trials` each, so a
/// report cannot claim more (or fewer) trials than it carries.
pub(crate) fn check_records<X>(cfg: &ExperimentConfig, runs: &[Vec<X>], outer: usize) -> Result<()> {
    let ok = runs.len() == outer && runs.iter().all(|r| r.len() as u64 == cfg.trials);
    if ok {
        Ok(())
    } else {
        Err(LabError::Report(format!("trial records do not match {outer} x {} trials", cfg.trials)))
    }
}

fn finish<T: Serialize>(
    cfg: &ExperimentConfig,
    trials: &T,
    aggregate: fn(&ExperimentConfig, &T) -> Result<Report>,
    per_trial: bool,
) -> Result<Report> {
    let mut report = aggregate(cfg, trials)?;
    if per_trial {
        report.per_trial = Some(serde_json::to_value(trials).expect("trial records serialize"));
    }
    Ok(report)
}

fn replay_with<T: Serialize + DeserializeOwned>(
    cfg: &ExperimentConfig,
    records: &Value,
    aggregate: fn(&ExperimentConfig, &T) -> Result<Report>,
) -> Result<Report> {
    let trials: T =
        serde_json::from_value(records.clone()).map_err(|e| LabError::Report(format!("per-trial records: {e}")))?;
    finish(cfg, &trials, aggregate, true)
}

macro_rules! dispatch {
    ($kind:expr, $m:ident => $body:expr) => {
        match $kind {
            ExperimentKind::MatrixTail => { use matrix_tail as $m; $body }
            ExperimentKind::RademacherTail => { use rademacher_tail as $m; $body }
            ExperimentKind::ShadowSize => { use shadow_size as $m; $body }
            ExperimentKind::SimplexPivots => { use simplex_pivots as $m; $body }
            ExperimentKind::PerceptronTail => { use perceptron_tail as $m; $body }
            ExperimentKind::SubmatrixLemma => { use submatrix_lemma as $m; $body }
            ExperimentKind::SmoothedProfile => { use smoothed_profile as $m; $body }
        }
    };
}

/// Runs the experiment `cfg.kind`; `per_trial` attaches the trial records.
pub fn run(cfg: &ExperimentConfig, per_trial: bool) -> Result<Report> {
    dispatch!(cfg.kind, m => finish(cfg, &m::sample(cfg)?, m::aggregate, per_trial))
}

/// Rebuilds a report from its config echo and per-trial records.
pub fn replay(cfg: &ExperimentConfig, records: &Value) -> Result<Report> {
    dispatch!(cfg.kind, m => replay_with(cfg, records, m::aggregate))
}
