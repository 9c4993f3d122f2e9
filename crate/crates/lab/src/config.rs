//! Experiment configuration: a flat `key = value` settings map (from a
//! config file and/or command-line flags) resolved into an
//! [`ExperimentConfig`], which is echoed verbatim in every report.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use smoothlab::perturb::shadow_regime_variance;
use smoothlab::SelectionRule;

use crate::centers;
use crate::experiments::rademacher_tail::MAX_EXHAUSTIVE_ENTRIES;
use crate::error::{config, io, LabError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    MatrixTail,
    RademacherTail,
    ShadowSize,
    SimplexPivots,
    PerceptronTail,
    SubmatrixLemma,
    SmoothedProfile,
}

impl ExperimentKind {
    pub const ALL: [ExperimentKind; 7] = [
        ExperimentKind::MatrixTail,
        ExperimentKind::RademacherTail,
        ExperimentKind::ShadowSize,
        ExperimentKind::SimplexPivots,
        ExperimentKind::PerceptronTail,
        ExperimentKind::SubmatrixLemma,
        ExperimentKind::SmoothedProfile,
    ];

    /// The snake_case name used in config echoes.
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::MatrixTail => "matrix_tail",
            ExperimentKind::RademacherTail => "rademacher_tail",
            ExperimentKind::ShadowSize => "shadow_size",
            ExperimentKind::SimplexPivots => "simplex_pivots",
            ExperimentKind::PerceptronTail => "perceptron_tail",
            ExperimentKind::SubmatrixLemma => "submatrix_lemma",
            ExperimentKind::SmoothedProfile => "smoothed_profile",
        }
    }

    pub fn needs_thresholds(self) -> bool {
        matches!(self, ExperimentKind::MatrixTail | ExperimentKind::RademacherTail | ExperimentKind::PerceptronTail)
    }

    /// Report schema id, bumped whenever columns change.
    pub fn schema(self) -> &'static str {
        match self {
            ExperimentKind::MatrixTail => "smoothlab.tail-matrix.v1",
            ExperimentKind::RademacherTail => "smoothlab.tail-rademacher.v1",
            ExperimentKind::ShadowSize => "smoothlab.shadow-size.v1",
            ExperimentKind::SimplexPivots => "smoothlab.simplex-pivots.v1",
            ExperimentKind::PerceptronTail => "smoothlab.tail-perceptron.v1",
            ExperimentKind::SubmatrixLemma => "smoothlab.submatrix-lemma.v1",
            ExperimentKind::SmoothedProfile => "smoothlab.smoothed-profile.v1",
        }
    }
}

/// Where the unperturbed data comes from. What a preset means depends on the
/// experiment: see [`crate::centers`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum CenterSource {
    Zero,
    Ones,
    E1,
    KleeMinty,
    File(PathBuf),
}

impl fmt::Display for CenterSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CenterSource::Zero => f.write_str("zero"),
            CenterSource::Ones => f.write_str("ones"),
            CenterSource::E1 => f.write_str("e1"),
            CenterSource::KleeMinty => f.write_str("klee-minty"),
            CenterSource::File(p) => write!(f, "{}", p.display()),
        }
    }
}

impl FromStr for CenterSource {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "" => return Err(config("empty center")),
            "zero" => CenterSource::Zero,
            "ones" => CenterSource::Ones,
            "e1" => CenterSource::E1,
            "klee-minty" => CenterSource::KleeMinty,
            path => CenterSource::File(PathBuf::from(path)),
        })
    }
}

impl From<CenterSource> for String {
    fn from(c: CenterSource) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for CenterSource {
    type Error = LabError;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// What `smoothed-profile` measures per perturbed input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Measure {
    #[default]
    SimplexPivots,
    PerceptronIterations,
}

impl FromStr for Measure {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "simplex_pivots" | "simplex-pivots" => Ok(Measure::SimplexPivots),
            "perceptron_iterations" | "perceptron-iterations" => Ok(Measure::PerceptronIterations),
            _ => Err(config(format!("unknown measure {s:?} (simplex-pivots, perceptron-iterations)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub n: usize,
    pub d: usize,
    pub sigma_grid: Vec<f64>,
    pub thresholds: Vec<f64>,
    pub trials: u64,
    pub master_seed: u64,
    pub centers: Vec<CenterSource>,
    pub iteration_cap: u64,
    pub rule: SelectionRule,
    pub measure: Measure,
    pub exhaustive: bool,
}

pub const DEFAULT_TRIALS: u64 = 1000;
pub const DEFAULT_ITERATION_CAP: u64 = 100_000;

/// Keys accepted in config files (flags use the same names).
pub const KEYS: [&str; 16] = [
    "n", "d", "sigma", "threshold", "trials", "seed", "center", "out", "format", "per-trial", "threads", "cap",
    "rule", "measure", "exhaustive", "kind",
];

/// Raw `key = value` settings; later insertions override earlier ones.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Settings(BTreeMap<String, String>);

impl Settings {
    pub fn new() -> Self {
        Self::default()
    }

    /// `key = value` lines; `#` starts a comment. Unknown keys are errors.
    pub fn parse(text: &str) -> Result<Self> {
        let mut out = Settings::new();
        for (k, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| config(format!("config line {}: expected `key = value`", k + 1)))?;
            out.set(key.trim(), value.trim())
                .map_err(|e| config(format!("config line {}: {e}", k + 1)))?;
        }
        Ok(out)
    }

    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| io(path, e))?;
        Self::parse(&text)
    }

    pub fn set(&mut self, key: &str, value: impl Into<String>) -> Result<()> {
        let key = key.replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            return Err(config(format!("unknown setting {key:?}")));
        }
        self.0.insert(key, value.into());
        Ok(())
    }

    pub fn with(mut self, key: &str, value: impl Into<String>) -> Result<Self> {
        self.set(key, value)?;
        Ok(self)
    }

    pub fn merge(&mut self, other: &Settings) {
        for (k, v) in &other.0 {
            self.0.insert(k.clone(), v.clone());
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    fn parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        self.get(key)
            .map(|v| v.parse::<T>().map_err(|_| config(format!("{key}: cannot parse {v:?}"))))
            .transpose()
    }

    pub fn flag(&self, key: &str) -> Result<bool> {
        match self.get(key) {
            None => Ok(false),
            Some("true" | "1" | "yes" | "") => Ok(true),
            Some("false" | "0" | "no") => Ok(false),
            Some(v) => Err(config(format!("{key}: expected a boolean, got {v:?}"))),
        }
    }
}

fn parse_list(key: &str, text: &str) -> Result<Vec<String>> {
    let items: Vec<String> = text.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
    if items.is_empty() {
        return Err(config(format!("{key}: empty list")));
    }
    Ok(items)
}

fn default_sigma(kind: ExperimentKind) -> &'static str {
    match kind {
        ExperimentKind::MatrixTail | ExperimentKind::RademacherTail => "1",
        ExperimentKind::ShadowSize | ExperimentKind::SubmatrixLemma => "boundary",
        _ => "0.1",
    }
}

impl ExperimentConfig {
    /// Resolves settings for `kind`, filling defaults, expanding the
    /// `boundary` sigma token and checking the config invariants.
    pub fn resolve(kind: ExperimentKind, s: &Settings) -> Result<Self> {
        if let Some(k) = s.get("kind") {
            let named: ExperimentKind = serde_json::from_value(serde_json::Value::String(k.replace('-', "_")))
                .map_err(|_| config(format!("unknown experiment kind {k:?}")))?;
            if named != kind {
                return Err(config(format!("config file is for {k}, not {:?}", kind)));
            }
        }
        let centers: Vec<CenterSource> = parse_list("center", s.get("center").unwrap_or("zero"))?
            .iter()
            .map(|c| c.parse())
            .collect::<Result<_>>()?;
        if centers.len() > 1 && kind != ExperimentKind::SmoothedProfile {
            return Err(config("only smoothed-profile accepts several centers"));
        }
        let measure: Measure = s.parsed("measure")?.unwrap_or_default();

        let mut n: Option<usize> = s.parsed("n")?;
        let mut d: Option<usize> = s.parsed("d")?;
        for c in &centers {
            if let Some((cn, cd)) = centers::dims(kind, measure, c, d)? {
                if let Some(dd) = d.filter(|&dd| dd != cd) {
                    return Err(config(format!("center {c} has dimension {cd}, but d = {dd}")));
                }
                d = Some(cd);
                if let Some(cn) = cn {
                    if let Some(nn) = n.filter(|&nn| nn != cn) {
                        return Err(config(format!("center {c} has {cn} rows, but n = {nn}")));
                    }
                    n = Some(cn);
                }
            }
        }
        let d = d.unwrap_or(3);
        let n = match kind {
            ExperimentKind::MatrixTail | ExperimentKind::RademacherTail => {
                if n.is_some_and(|n| n != d) {
                    return Err(config("square-matrix experiments take n = d"));
                }
                d
            }
            _ => n.unwrap_or(8),
        };
        if n == 0 || d == 0 {
            return Err(config("n and d must be at least 1"));
        }

        let sigma_grid = parse_list("sigma", s.get("sigma").unwrap_or(default_sigma(kind)))?
            .iter()
            .map(|tok| match tok.as_str() {
                "boundary" => boundary_sigma(kind, n, d),
                t => t.parse::<f64>().map_err(|_| config(format!("sigma: cannot parse {t:?}"))),
            })
            .collect::<Result<Vec<f64>>>()?;
        if let Some(bad) = sigma_grid.iter().find(|s| !s.is_finite() || **s < 0.0) {
            return Err(config(format!("sigma must be finite and nonnegative, got {bad}")));
        }
        let positive_sigma = !matches!(kind, ExperimentKind::RademacherTail | ExperimentKind::SmoothedProfile);
        if positive_sigma && sigma_grid.contains(&0.0) {
            return Err(config("sigma must be positive for this experiment"));
        }

        let thresholds = match s.get("threshold") {
            Some(t) => parse_list("threshold", t)?
                .iter()
                .map(|x| x.parse::<f64>().map_err(|_| config(format!("threshold: cannot parse {x:?}"))))
                .collect::<Result<Vec<f64>>>()?,
            None if kind.needs_thresholds() => return Err(config("this experiment needs --threshold")),
            None => Vec::new(),
        };
        if thresholds.iter().any(|t| t.is_nan() || *t <= 0.0) {
            return Err(config("thresholds must be positive"));
        }

        let trials = s.parsed("trials")?.unwrap_or(DEFAULT_TRIALS);
        if trials == 0 {
            return Err(config("trials must be at least 1"));
        }
        let iteration_cap = s.parsed("cap")?.unwrap_or(DEFAULT_ITERATION_CAP);
        if iteration_cap == 0 {
            return Err(config("cap must be at least 1"));
        }
        let rule = match s.get("rule") {
            Some(r) => r.parse::<SelectionRule>().map_err(|e| config(e.to_string()))?,
            None => SelectionRule::default(),
        };
        let exhaustive = s.flag("exhaustive")?;
        if exhaustive && kind != ExperimentKind::RademacherTail {
            return Err(config("--exhaustive applies to tail-rademacher only"));
        }
        // Exhaustive mode enumerates every sign pattern once.
        let trials = if exhaustive {
            let entries = d * d;
            if entries > MAX_EXHAUSTIVE_ENTRIES {
                return Err(smoothlab::Error::SizeLimit {
                    what: "exhaustive sign matrices 2^(d^2)",
                    required: if entries < 128 { 1u128 << entries } else { u128::MAX },
                    budget: 1u128 << MAX_EXHAUSTIVE_ENTRIES,
                }
                .into());
            }
            1u64 << entries
        } else {
            trials
        };

        Ok(Self {
            kind,
            n,
            d,
            sigma_grid,
            thresholds,
            trials,
            master_seed: s.parsed("seed")?.unwrap_or(0),
            centers,
            iteration_cap,
            rule,
            measure,
            exhaustive,
        })
    }
}

/// The largest sigma allowed by the theorem an experiment checks.
fn boundary_sigma(kind: ExperimentKind, n: usize, d: usize) -> Result<f64> {
    match kind {
        ExperimentKind::ShadowSize
        | ExperimentKind::SubmatrixLemma
        | ExperimentKind::SimplexPivots
        | ExperimentKind::SmoothedProfile => Ok(shadow_regime_variance(n, d).sqrt()),
        // Strict inequality: this sigma itself is out of regime.
        ExperimentKind::PerceptronTail => Ok((1.0 / (2.0 * d as f64)).sqrt()),
        _ => Err(config("sigma `boundary` is not defined for this experiment")),
    }
}
