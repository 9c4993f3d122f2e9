//! Monte Carlo experiment harness over the `smoothlab` core: tail
//! experiments for condition numbers and perceptron margins, shadow-size and
//! pivot-count experiments, the literal submatrix-lemma check, and
//! smoothed-complexity profiles, with CSV/JSON reports that replay exactly
//! from their per-trial records.

pub mod centers;
pub mod cli;
pub mod config;
pub mod error;
pub mod experiments;
pub mod replay;
pub mod report;
pub mod stats;

pub use config::{CenterSource, ExperimentConfig, ExperimentKind, Measure, Settings};
pub use error::{LabError, Result};
pub use experiments::run;
pub use report::{Cell, Report};
