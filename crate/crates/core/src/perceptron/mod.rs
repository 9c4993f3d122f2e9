//! The perceptron algorithm, its wiggle-room margin `ν`, and the iteration
//! bounds stated in terms of `ν`.

mod margin;

pub use margin::{MarginCertificate, WOLFE_GAP_TOL, ZERO_MARGIN_TOL};

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::numkit::Vector;
use crate::perturb::SeedSpec;
use crate::polytope::{as_count, parse_numbers};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct PerceptronInstance<T> {
    points: Vec<Vector<T>>,
}

impl<T: Real> PerceptronInstance<T> {
    pub fn new(points: Vec<Vector<T>>) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(invalid("perceptron instance needs at least one point"));
        };
        let d = first.dim();
        for (i, p) in points.iter().enumerate() {
            if p.dim() != d {
                return Err(invalid(format!("point {i} has dimension {} but point 0 has {d}", p.dim())));
            }
            if p.norm() == T::zero() {
                return Err(invalid(format!("point {i} is the zero vector")));
            }
        }
        Ok(Self { points })
    }

    pub fn points(&self) -> &[Vector<T>] {
        &self.points
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn d(&self) -> usize {
        self.points[0].dim()
    }

    /// `a_i / ‖a_i‖`
    pub fn normalized_points(&self) -> Vec<Vector<T>> {
        self.points.iter().map(|p| p.normalized().expect("points are nonzero")).collect()
    }

    /// `x` is in the open cone `S` (every `⟨a_i, x⟩ > 0`).
    pub fn separates(&self, x: &Vector<T>) -> bool {
        self.points.iter().all(|a| a.dot(x) > T::zero())
    }

    /// Plain text: a line `n d`, then `n` lines of `d` numbers. Blank lines
    /// and `#` comments are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line, header) = lines.next().ok_or(Error::Parse { line: 0, msg: "empty input".into() })?;
        let dims = parse_numbers::<f64>(header, line)?;
        let [n, d] = dims[..] else {
            return Err(Error::Parse { line, msg: "header must be `n d`".into() });
        };
        let (n, d) = (as_count(n, line)?, as_count(d, line)?);
        let mut points = Vec::with_capacity(n);
        for _ in 0..n {
            let (line, l) = lines.next().ok_or(Error::Parse { line: 0, msg: format!("expected {n} points") })?;
            let vals = parse_numbers::<T>(l, line)?;
            if vals.len() != d {
                return Err(Error::Parse { line, msg: format!("expected {d} numbers, got {}", vals.len()) });
            }
            points.push(Vector::new(vals).map_err(|e| Error::Parse { line, msg: e.to_string() })?);
        }
        if let Some((line, _)) = lines.next() {
            return Err(Error::Parse { line, msg: "trailing content".into() });
        }
        Self::new(points)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.d());
        for p in &self.points {
            let row: Vec<String> = p.entries().iter().map(|v| v.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

/// `ν = max_{x ∈ S} min_i ⟨a_i, x⟩ / (‖a_i‖ ‖x‖)`, or 0 when `S` is empty
/// (the origin lies in, or within [`ZERO_MARGIN_TOL`] of, the hull of the
/// normalized points).
pub fn wiggle_room<T: Real>(inst: &PerceptronInstance<T>) -> T {
    margin_certificate(inst).nu
}

pub fn margin_certificate<T: Real>(inst: &PerceptronInstance<T>) -> MarginCertificate<T> {
    margin::min_norm_margin(&inst.normalized_points())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelectionRule {
    /// Lowest-index violated point.
    #[default]
    LowestIndex,
    /// Smallest `⟨a_i, x⟩ / ‖a_i‖`, lowest index on ties.
    MostViolated,
    /// Uniform over the violated points, drawn from the run's seed.
    RandomViolated,
}

impl std::str::FromStr for SelectionRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lowest-index" => Ok(Self::LowestIndex),
            "most-violated" => Ok(Self::MostViolated),
            "random-violated" => Ok(Self::RandomViolated),
            _ => Err(invalid(format!("unknown selection rule {s:?} (lowest-index, most-violated, random-violated)"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Solved,
    IterationCapReached,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerceptronRun<T> {
    pub iterations: u64,
    /// The separating vector when solved.
    pub final_x: Option<Vector<T>>,
    pub status: RunStatus,
}

pub fn run_perceptron<T: Real>(inst: &PerceptronInstance<T>, seed: SeedSpec, iteration_cap: u64) -> Result<PerceptronRun<T>> {
    run_perceptron_with_rule(inst, seed, iteration_cap, SelectionRule::default())
}

/// `x = 0`; while some `⟨a_i, x⟩ <= 0`, pick one by `rule` and add
/// `a_i / ‖a_i‖`. Stops after `iteration_cap` updates.
pub fn run_perceptron_with_rule<T: Real>(
    inst: &PerceptronInstance<T>,
    seed: SeedSpec,
    iteration_cap: u64,
    rule: SelectionRule,
) -> Result<PerceptronRun<T>> {
    if iteration_cap == 0 {
        return Err(invalid("iteration cap must be at least 1"));
    }
    let units = inst.normalized_points();
    let mut rng = seed.rng();
    let mut x = Vector::zeros(inst.d());
    let mut violated = Vec::with_capacity(inst.n());
    let mut iterations = 0;
    loop {
        violated.clear();
        violated.extend(inst.points.iter().enumerate().filter(|(_, a)| a.dot(&x) <= T::zero()).map(|(i, _)| i));
        if violated.is_empty() {
            return Ok(PerceptronRun { iterations, final_x: Some(x), status: RunStatus::Solved });
        }
        if iterations == iteration_cap {
            return Ok(PerceptronRun { iterations, final_x: None, status: RunStatus::IterationCapReached });
        }
        let pick = match rule {
            SelectionRule::LowestIndex => violated[0],
            SelectionRule::MostViolated => violated
                .iter()
                .copied()
                .fold(violated[0], |best, i| if units[i].dot(&x) < units[best].dot(&x) { i } else { best }),
            SelectionRule::RandomViolated => violated[rng.random_range(0..violated.len())],
        };
        x = x.add(&units[pick]);
        iterations += 1;
    }
}

/// `⌈1/ν²⌉`, with a relative slack of 1e-9 so that `ν = 1/√2` gives 2.
pub fn iteration_bound<T: Real>(nu: T) -> Result<u64> {
    let nu = nu.to_f64_lossy();
    if nu.is_nan() || nu <= 0.0 {
        return Err(Error::InfeasibleMargin(nu));
    }
    let raw = (1.0 - 1e-9) / (nu * nu);
    Ok(raw.ceil().max(1.0) as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailStatus {
    /// Value in `[0, 1]`.
    Informative,
    /// Value above 1.
    Vacuous,
    /// `σt / d^1.5 <= 1`, so the log factor is not positive.
    NegativeLog,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TailBound {
    /// The formula evaluated literally.
    pub raw: f64,
    pub status: TailStatus,
}

impl TailBound {
    /// `raw` clamped to `[0, 1]`.
    pub fn clamped(&self) -> f64 {
        self.raw.clamp(0.0, 1.0)
    }
}

/// Upper bound on `P(1/ν > t)` for Gaussian points of variance `σ² < 1/(2d)`
/// around centers of norm at most 1: `(n d^1.5 / (σ t)) · ln(σ t / d^1.5)`.
pub fn blum_dunagan_tail(n: usize, d: usize, sigma: f64, t: f64) -> Result<TailBound> {
    if n == 0 || d == 0 {
        return Err(invalid("n and d must be at least 1"));
    }
    if !t.is_finite() || t <= 0.0 {
        return Err(invalid(format!("threshold must be positive, got {t}")));
    }
    if !sigma.is_finite() || sigma <= 0.0 {
        return Err(invalid(format!("sigma must be positive, got {sigma}")));
    }
    let limit = 1.0 / (2.0 * d as f64);
    if sigma * sigma >= limit {
        return Err(Error::OutOfRegime(format!("sigma² = {} is not below 1/(2d) = {limit}", sigma * sigma)));
    }
    let d15 = (d as f64).powf(1.5);
    let ratio = sigma * t / d15;
    let raw = n as f64 * d15 / (sigma * t) * ratio.ln();
    let status = if ratio <= 1.0 {
        TailStatus::NegativeLog
    } else if raw > 1.0 {
        TailStatus::Vacuous
    } else {
        TailStatus::Informative
    };
    Ok(TailBound { raw, status })
}

/// `d³ n² ln²(n/δ) / (δ² σ²)`: the iteration count that is exceeded with
/// probability at most `δ`, up to an unspecified constant factor.
pub fn smoothed_iteration_shape(n: usize, d: usize, sigma: f64, delta: f64) -> Result<f64> {
    if n == 0 || d == 0 {
        return Err(invalid("n and d must be at least 1"));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(invalid(format!("delta must lie in (0, 1), got {delta}")));
    }
    if !sigma.is_finite() || sigma <= 0.0 {
        return Err(invalid(format!("sigma must be positive, got {sigma}")));
    }
    let limit = 1.0 / (2.0 * d as f64);
    if sigma * sigma >= limit {
        return Err(Error::OutOfRegime(format!("sigma² = {} is not below 1/(2d) = {limit}", sigma * sigma)));
    }
    let (n, d) = (n as f64, d as f64);
    let log = (n / delta).ln();
    Ok(d.powi(3) * n * n * log * log / (delta * delta * sigma * sigma))
}
