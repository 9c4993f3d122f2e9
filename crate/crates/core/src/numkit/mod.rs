//! Dense small-dimension linear algebra: operator norm, inverse norm and
//! condition number via one-sided Jacobi singular values, and the column
//! height quantity built from distances to spans.

mod exact;
mod lu;
mod matrix;
mod span;
mod svd;
mod vector;

pub use exact::integer_determinant;
pub use lu::Lu;
pub use matrix::Matrix;
pub use span::{complement_direction, orthonormal_basis, residual};
pub use svd::{singular_values, SingularSpectrum};
pub use vector::Vector;

use crate::error::{invalid, Result};
use crate::scalar::Real;

/// Absolute smallest singular value below which a matrix is reported
/// singular (`+inf` inverse norm).
pub const SINGULARITY_THRESHOLD: f64 = 1e-300;

/// Relative tolerance for dropping dependent vectors when building spans.
const SPAN_RANK_TOL: f64 = 1e-13;

/// Largest singular value, `max ‖Mx‖/‖x‖`.
pub fn operator_norm<T: Real>(m: &Matrix<T>) -> T {
    singular_values(m).largest()
}

/// `‖M⁻¹‖ = 1/σ_min(M)`; `+inf` when `σ_min` is below [`SINGULARITY_THRESHOLD`].
pub fn inverse_norm<T: Real>(m: &Matrix<T>) -> Result<T> {
    if !m.is_square() {
        return Err(invalid(format!("inverse norm needs a square matrix, got {}x{}", m.rows(), m.cols())));
    }
    Ok(reciprocal_smallest(&singular_values(m)))
}

/// `κ(M) = ‖M‖ ‖M⁻¹‖`, `+inf` for singular `M`.
pub fn condition_number<T: Real>(m: &Matrix<T>) -> Result<T> {
    if !m.is_square() {
        return Err(invalid(format!("condition number needs a square matrix, got {}x{}", m.rows(), m.cols())));
    }
    let s = singular_values(m);
    let inv = reciprocal_smallest(&s);
    if inv.is_infinite() {
        return Ok(T::infinity());
    }
    Ok((s.largest() * inv).max(T::one()))
}

fn reciprocal_smallest<T: Real>(s: &SingularSpectrum<T>) -> T {
    let smin = s.smallest();
    if smin == T::zero() || smin < T::lit(SINGULARITY_THRESHOLD) {
        T::infinity()
    } else {
        T::one() / smin
    }
}

/// Euclidean distance from `v` to the linear span of `basis` (which may be
/// empty, giving `‖v‖`).
pub fn distance_to_span<T: Real>(v: &Vector<T>, basis: &[Vector<T>]) -> Result<T> {
    if let Some(b) = basis.iter().find(|b| b.dim() != v.dim()) {
        return Err(invalid(format!("dimension mismatch: {} vs {}", b.dim(), v.dim())));
    }
    let q = orthonormal_basis(basis, T::lit(SPAN_RANK_TOL));
    Ok(residual(v, &q).norm())
}

/// `min_i dist(a_i, span{a_j : j ≠ i})` over `d` vectors in R^d.
pub fn height<T: Real>(columns: &[Vector<T>]) -> Result<T> {
    let d = columns.len();
    if d == 0 {
        return Err(invalid("height needs at least one vector"));
    }
    if let Some(c) = columns.iter().find(|c| c.dim() != d) {
        return Err(invalid(format!("height needs {d} vectors of dimension {d}, found dimension {}", c.dim())));
    }
    let mut best = T::infinity();
    for i in 0..d {
        let others: Vec<Vector<T>> = columns
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, c)| c.clone())
            .collect();
        best = best.min(distance_to_span(&columns[i], &others)?);
    }
    Ok(best)
}

/// Height of the columns of a square matrix.
pub fn matrix_height<T: Real>(m: &Matrix<T>) -> Result<T> {
    if !m.is_square() {
        return Err(invalid("height needs a square matrix"));
    }
    height(&m.columns())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    /// Power iteration on MᵀM.
    fn power_norm(m: &Matrix<f64>) -> f64 {
        let mtm = m.transpose().mul(m).unwrap();
        let mut x = Vector::new(vec![1.0; m.cols()]).unwrap();
        let mut lambda = 0.0;
        for _ in 0..5000 {
            let y = mtm.mul_vec(&x).unwrap();
            lambda = y.norm();
            x = y.scaled(1.0 / lambda);
        }
        lambda.sqrt()
    }

    /// Inverse iteration on MᵀM, using an LU solve each step.
    fn inverse_power_smallest(m: &Matrix<f64>) -> f64 {
        let mtm = m.transpose().mul(m).unwrap();
        let lu = Lu::factor(&mtm, 1e-15).unwrap();
        let mut x = Vector::new(vec![1.0; m.cols()]).unwrap();
        let mut mu = 0.0;
        for _ in 0..5000 {
            let y = lu.solve(x.entries());
            mu = y.norm();
            x = y.scaled(1.0 / mu);
        }
        (1.0 / mu).sqrt()
    }

    fn fixed_matrix(d: usize, salt: u64) -> Matrix<f64> {
        // Deterministic pseudo-random entries from a splitmix-style hash.
        let mut s = salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        let data = (0..d * d)
            .map(|_| {
                s = s.wrapping_add(0x9E37_79B9_7F4A_7C15);
                let mut z = s;
                z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
                z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
                z ^= z >> 31;
                (z >> 11) as f64 / (1u64 << 53) as f64 * 2.0 - 1.0
            })
            .collect();
        Matrix::new(d, d, data).unwrap()
    }

    #[test]
    fn operator_norm_examples() {
        assert_eq!(operator_norm(&Matrix::<f64>::identity(3)), 1.0);
        assert_eq!(operator_norm(&Matrix::<f64>::diagonal(&[3.0, 1.0])), 3.0);
        assert_eq!(operator_norm(&Matrix::<f64>::zeros(2, 3)), 0.0);
    }

    #[test]
    fn operator_norm_matches_power_iteration() {
        for salt in 1..6 {
            let m = fixed_matrix(4, salt);
            let oracle = power_norm(&m);
            assert!(rel(operator_norm(&m), oracle) < 1e-10, "salt {salt}");
        }
    }

    #[test]
    fn inverse_norm_examples() {
        assert_eq!(inverse_norm(&Matrix::<f64>::identity(5)).unwrap(), 1.0);
        assert_eq!(inverse_norm(&Matrix::<f64>::diagonal(&[2.0, 0.5])).unwrap(), 2.0);
        assert!(inverse_norm(&Matrix::<f64>::filled(2, 2, 1.0)).unwrap().is_infinite());
        assert!(inverse_norm(&Matrix::<f64>::zeros(2, 3)).is_err());
    }

    #[test]
    fn condition_number_examples() {
        assert_eq!(condition_number(&Matrix::<f64>::identity(4)).unwrap(), 1.0);
        assert_eq!(condition_number(&Matrix::<f64>::diagonal(&[4.0, 1.0])).unwrap(), 4.0);
        assert!(condition_number(&Matrix::<f64>::filled(3, 3, 1.0)).unwrap().is_infinite());
        assert!(condition_number(&Matrix::<f64>::zeros(3, 2)).is_err());
    }

    #[test]
    fn condition_number_matches_independent_extremes() {
        for salt in 10..15 {
            let m = fixed_matrix(5, salt);
            let oracle = power_norm(&m) / inverse_power_smallest(&m);
            assert!(rel(condition_number(&m).unwrap(), oracle) < 1e-9, "salt {salt}");
        }
    }

    #[test]
    fn distance_examples() {
        let e1 = Vector::new(vec![1.0, 0.0]).unwrap();
        let e2 = Vector::new(vec![0.0, 1.0]).unwrap();
        assert_eq!(distance_to_span(&e2, std::slice::from_ref(&e1)).unwrap(), 1.0);
        assert_eq!(distance_to_span(&e1, std::slice::from_ref(&e1)).unwrap(), 0.0);
        let diag = Vector::new(vec![1.0, 1.0]).unwrap();
        let d = distance_to_span(&e1, &[diag]).unwrap();
        assert!((d - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert_eq!(distance_to_span(&e1, &[]).unwrap(), 1.0);
        let e3 = Vector::new(vec![0.0, 0.0, 1.0]).unwrap();
        assert!(distance_to_span(&e1, &[e3]).is_err());
    }

    #[test]
    fn height_examples() {
        let id = Matrix::<f64>::identity(3);
        assert_eq!(matrix_height(&id).unwrap(), 1.0);
        let cols = vec![Vector::new(vec![1.0, 0.0]).unwrap(), Vector::new(vec![1.0, 1.0]).unwrap()];
        assert!((height(&cols).unwrap() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        let cols = vec![Vector::new(vec![1.0, 0.0]).unwrap(), Vector::new(vec![2.0, 0.0]).unwrap()];
        assert_eq!(height(&cols).unwrap(), 0.0);
        let wrong = vec![Vector::new(vec![1.0, 0.0, 0.0]).unwrap(), Vector::new(vec![0.0, 1.0, 0.0]).unwrap()];
        assert!(height(&wrong).is_err());
    }

    #[test]
    fn height_equals_reciprocal_inverse_row_norms() {
        // dist(a_i, span of the others) = 1 / ‖row i of A⁻¹‖.
        for salt in 20..26 {
            let m = fixed_matrix(4, salt);
            let lu = Lu::factor(&m, 1e-14).unwrap();
            let inv_t_cols: Vec<Vector<f64>> =
                (0..4).map(|i| lu.solve_transpose(Vector::<f64>::unit(4, i).entries())).collect();
            let oracle = inv_t_cols.iter().map(|r| 1.0 / r.norm()).fold(f64::INFINITY, f64::min);
            assert!(rel(matrix_height(&m).unwrap(), oracle) < 1e-12);
        }
    }

    #[test]
    fn works_in_single_precision() {
        let m = Matrix::<f32>::diagonal(&[4.0, 2.0]);
        assert_eq!(condition_number(&m).unwrap(), 2.0f32);
        assert_eq!(inverse_norm(&m).unwrap(), 0.5f32);
    }
}
