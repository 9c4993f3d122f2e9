//! One-sided Jacobi (Hestenes) singular values.
//!
//! The columns of the working copy are rotated pairwise until every pair is
//! numerically orthogonal; the singular values are then the column norms.
//! Relative accuracy of the small singular values is what the tail
//! experiments depend on, and one-sided Jacobi delivers it at d <= ~50.

use crate::scalar::Real;

use super::vector::{dot, norm};
use super::Matrix;

const MAX_SWEEPS: usize = 80;

/// Singular values of a matrix, nonincreasing, all nonnegative.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularSpectrum<T> {
    values: Vec<T>,
}

impl<T: Real> SingularSpectrum<T> {
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn largest(&self) -> T {
        self.values[0]
    }

    pub fn smallest(&self) -> T {
        *self.values.last().expect("spectrum is nonempty")
    }
}

pub fn singular_values<T: Real>(m: &Matrix<T>) -> SingularSpectrum<T> {
    // Work on the orientation with at least as many rows as columns.
    let tall = if m.rows() >= m.cols() { m.clone() } else { m.transpose() };
    let mut cols: Vec<Vec<T>> = tall.columns().into_iter().map(|c| c.into_entries()).collect();
    let n = cols.len();
    let eps = T::epsilon();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha = dot(&cols[p], &cols[p]);
                let beta = dot(&cols[q], &cols[q]);
                let gamma = dot(&cols[p], &cols[q]);
                if gamma == T::zero() || gamma.abs() <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (gamma + gamma);
                let sign = if zeta >= T::zero() { T::one() } else { -T::one() };
                let t = sign / (zeta.abs() + T::one().hypot(zeta));
                let c = T::one() / T::one().hypot(t);
                let s = c * t;
                let (left, right) = cols.split_at_mut(q);
                let (cp, cq) = (&mut left[p], &mut right[0]);
                for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
                    let (a, b) = (*x, *y);
                    *x = c * a - s * b;
                    *y = s * a + c * b;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut values: Vec<T> = cols.iter().map(|c| norm(c)).collect();
    values.sort_by(|a, b| b.partial_cmp(a).expect("finite singular values"));
    SingularSpectrum { values }
}
