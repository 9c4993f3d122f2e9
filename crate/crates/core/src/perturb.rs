//! Reproducible random models: Gaussian perturbations of center data and
//! Rademacher sign matrices.
//!
//! Every draw comes from a ChaCha8 generator keyed by a [`SeedSpec`]: the
//! master seed selects the key, the stream index selects the ChaCha stream.
//! Standard normals use `rand_distr::StandardNormal` (ziggurat method).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::numkit::{Matrix, Vector};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeedSpec {
    pub master_seed: u64,
    pub stream_index: u64,
}

impl SeedSpec {
    pub fn new(master_seed: u64, stream_index: u64) -> Self {
        Self { master_seed, stream_index }
    }

    /// The generator for this (seed, stream) pair. Identical specs give
    /// bit-identical sequences.
    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_index);
        rng
    }
}

/// Conditions under which a perturbation leaves the hypotheses of the
/// shadow-size theorem; reported, never fatal.
#[derive(Debug, Clone, PartialEq)]
pub enum RegimeWarning {
    CenterNormAboveOne { index: usize, norm: f64 },
    VarianceAboveShadowRegime { variance: f64, limit: f64 },
}

#[derive(Debug, Clone)]
pub struct PerturbedPoints<T> {
    pub points: Vec<Vector<T>>,
    pub warnings: Vec<RegimeWarning>,
}

/// Largest variance allowed by the shadow-size hypotheses, `1/(9 d ln n)`;
/// `+inf` when `n <= 1`.
pub fn shadow_regime_variance(n: usize, d: usize) -> f64 {
    if n <= 1 {
        return f64::INFINITY;
    }
    1.0 / (9.0 * d as f64 * (n as f64).ln())
}

/// Relative slack when comparing a variance against a regime boundary, so
/// `sigma = sqrt(limit)` squares back inside.
pub(crate) const REGIME_SLACK: f64 = 1e-12;

fn check_sigma<T: Real>(sigma: T) -> Result<()> {
    if !sigma.is_finite() || sigma < T::zero() {
        return Err(invalid(format!("sigma must be finite and nonnegative, got {sigma}")));
    }
    Ok(())
}

fn normal<T: Real, R: Rng + ?Sized>(rng: &mut R) -> T {
    T::lit(rng.sample::<f64, _>(StandardNormal))
}

/// Entrywise `N(center_ij, sigma²)`.
pub fn gaussian_matrix<T: Real>(center: &Matrix<T>, sigma: T, seed: SeedSpec) -> Result<Matrix<T>> {
    gaussian_matrix_with(center, sigma, &mut seed.rng())
}

pub fn gaussian_matrix_with<T: Real, R: Rng + ?Sized>(center: &Matrix<T>, sigma: T, rng: &mut R) -> Result<Matrix<T>> {
    check_sigma(sigma)?;
    if sigma == T::zero() {
        return Ok(center.clone());
    }
    let data = center.as_slice().iter().map(|&c| c + sigma * normal::<T, _>(rng)).collect();
    Matrix::new(center.rows(), center.cols(), data)
}

/// `a_i = center_i + sigma g_i` for standard Gaussian `g_i`, with regime
/// warnings for centers of norm above 1 or variance above `1/(9 d ln n)`.
pub fn gaussian_points<T: Real>(centers: &[Vector<T>], sigma: T, seed: SeedSpec) -> Result<PerturbedPoints<T>> {
    gaussian_points_with(centers, sigma, &mut seed.rng())
}

pub fn gaussian_points_with<T: Real, R: Rng + ?Sized>(
    centers: &[Vector<T>],
    sigma: T,
    rng: &mut R,
) -> Result<PerturbedPoints<T>> {
    check_sigma(sigma)?;
    let d = centers.first().map(Vector::dim).ok_or_else(|| invalid("no centers"))?;
    if centers.iter().any(|c| c.dim() != d) {
        return Err(invalid("centers have different dimensions"));
    }
    let mut warnings = Vec::new();
    for (index, c) in centers.iter().enumerate() {
        let norm = c.norm().to_f64_lossy();
        if norm > 1.0 + REGIME_SLACK {
            warnings.push(RegimeWarning::CenterNormAboveOne { index, norm });
        }
    }
    let limit = shadow_regime_variance(centers.len(), d);
    let variance = sigma.to_f64_lossy().powi(2);
    if variance > limit * (1.0 + REGIME_SLACK) {
        warnings.push(RegimeWarning::VarianceAboveShadowRegime { variance, limit });
    }
    let points = centers
        .iter()
        .map(|c| {
            if sigma == T::zero() {
                c.clone()
            } else {
                Vector::from_vec_unchecked(c.entries().iter().map(|&x| x + sigma * normal::<T, _>(rng)).collect())
            }
        })
        .collect();
    Ok(PerturbedPoints { points, warnings })
}

/// A standard Gaussian vector in R^dim.
pub fn gaussian_vector_with<T: Real, R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Vector<T> {
    Vector::from_vec_unchecked((0..dim.max(1)).map(|_| normal::<T, _>(rng)).collect())
}

/// `d x d` matrix of independent uniform `±1` entries.
pub fn rademacher_matrix<T: Real>(d: usize, seed: SeedSpec) -> Result<Matrix<T>> {
    rademacher_matrix_with(d, &mut seed.rng())
}

pub fn rademacher_matrix_with<T: Real, R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<Matrix<T>> {
    if d < 1 {
        return Err(invalid("rademacher matrix needs d >= 1"));
    }
    let data = (0..d * d).map(|_| if rng.random::<bool>() { T::one() } else { -T::one() }).collect();
    Matrix::new(d, d, data)
}

/// `x + sigma ‖x‖ g`: perturbation relative to the magnitude of the input.
pub fn smoothed_input<T: Real>(center_x: &Vector<T>, sigma: T, seed: SeedSpec) -> Result<Vector<T>> {
    smoothed_input_with(center_x, sigma, &mut seed.rng())
}

pub fn smoothed_input_with<T: Real, R: Rng + ?Sized>(center_x: &Vector<T>, sigma: T, rng: &mut R) -> Result<Vector<T>> {
    check_sigma(sigma)?;
    let scale = sigma * center_x.norm();
    if scale == T::zero() {
        return Ok(center_x.clone());
    }
    let g = gaussian_vector_with::<T, _>(center_x.dim(), rng);
    Ok(center_x.axpy(scale, &g))
}
