use crate::error::{Error, Result};
use crate::perturb::{shadow_regime_variance, REGIME_SLACK};

/// Leading constant of the smoothed shadow-size bound.
pub const SHADOW_SIZE_CONSTANT: f64 = 58_888_678.0;

/// Upper bound `58888678 n d³ / σ⁶` on the expected shadow vertex count,
/// valid for `d >= 3`, `n > d` and `0 < σ² <= 1/(9 d ln n)`.
pub fn shadow_size_bound(n: usize, d: usize, sigma: f64) -> Result<f64> {
    if d < 3 {
        return Err(Error::OutOfRegime(format!("shadow-size bound needs d >= 3, got d = {d}")));
    }
    if n <= d {
        return Err(Error::OutOfRegime(format!("shadow-size bound needs n > d, got n = {n}, d = {d}")));
    }
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::OutOfRegime(format!("shadow-size bound needs sigma > 0, got {sigma}")));
    }
    let limit = shadow_regime_variance(n, d);
    if sigma * sigma > limit * (1.0 + REGIME_SLACK) {
        return Err(Error::OutOfRegime(format!(
            "shadow-size bound needs sigma^2 <= 1/(9 d ln n) = {limit}, got {}",
            sigma * sigma
        )));
    }
    Ok(SHADOW_SIZE_CONSTANT * n as f64 * (d as f64).powi(3) / sigma.powi(6))
}
