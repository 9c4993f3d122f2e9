//! Summary statistics and the bound-comparison rule.

use serde::{Deserialize, Serialize};

/// Fraction of `hits` out of `trials` with its binomial standard error
/// `√(p(1-p)/trials)`.
pub fn proportion(hits: u64, trials: u64) -> (f64, f64) {
    if trials == 0 {
        return (f64::NAN, f64::NAN);
    }
    let p = hits as f64 / trials as f64;
    (p, (p * (1.0 - p) / trials as f64).sqrt())
}

pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample standard deviation (`n - 1` denominator); 0 for a single value.
pub fn std_dev(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    (xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - 1) as f64).sqrt()
}

/// Half-width of the normal-approximation 95% interval for the mean.
pub fn half_width(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    1.96 * std_dev(xs) / (xs.len() as f64).sqrt()
}

/// Nearest-rank quantile: the smallest value with at least `q` of the
/// sample at or below it.
pub fn quantile(xs: &[f64], q: f64) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    let mut sorted = xs.to_vec();
    sorted.sort_by(f64::total_cmp);
    let rank = ((q * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len());
    sorted[rank - 1]
}

pub fn max(xs: &[f64]) -> f64 {
    xs.iter().copied().fold(f64::NAN, f64::max)
}

pub fn min(xs: &[f64]) -> f64 {
    xs.iter().copied().fold(f64::NAN, f64::min)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// `empirical <= bound + 3·SE`.
    Respected,
    Violated,
    /// The bound is at least 1 and says nothing.
    Vacuous,
    NotApplicable,
}

/// Compares an empirical exceedance against an upper bound on it.
pub fn judge(empirical: f64, stderr: f64, bound: Option<f64>) -> Verdict {
    match bound {
        None => Verdict::NotApplicable,
        Some(b) if b.is_nan() => Verdict::NotApplicable,
        Some(b) if b >= 1.0 => Verdict::Vacuous,
        Some(b) if empirical <= b.max(0.0) + 3.0 * stderr => Verdict::Respected,
        Some(_) => Verdict::Violated,
    }
}
