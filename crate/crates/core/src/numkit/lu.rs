use crate::scalar::Real;

use super::{Matrix, Vector};

/// LU factorization with partial pivoting of a square matrix, `PA = LU`.
#[derive(Debug, Clone)]
pub struct Lu<T> {
    n: usize,
    lu: Vec<T>,
    perm: Vec<usize>,
}

impl<T: Real> Lu<T> {
    /// Factors `m`; `None` if a pivot falls below `rel_tol` times the
    /// largest entry magnitude (numerically singular).
    pub fn factor(m: &Matrix<T>, rel_tol: T) -> Option<Self> {
        if !m.is_square() {
            return None;
        }
        let n = m.rows();
        let mut lu = m.as_slice().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = lu.iter().fold(T::zero(), |acc, v| acc.max(v.abs()));
        if scale == T::zero() {
            return None;
        }
        let threshold = rel_tol * scale;
        for k in 0..n {
            let (piv, piv_abs) = (k..n)
                .map(|i| (i, lu[i * n + k].abs()))
                .fold((k, -T::one()), |best, cur| if cur.1 > best.1 { cur } else { best });
            if piv_abs <= threshold {
                return None;
            }
            if piv != k {
                for j in 0..n {
                    lu.swap(k * n + j, piv * n + j);
                }
                perm.swap(k, piv);
            }
            let pivot = lu[k * n + k];
            for i in (k + 1)..n {
                let f = lu[i * n + k] / pivot;
                lu[i * n + k] = f;
                for j in (k + 1)..n {
                    lu[i * n + j] = lu[i * n + j] - f * lu[k * n + j];
                }
            }
        }
        Some(Self { n, lu, perm })
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[T]) -> Vector<T> {
        let n = self.n;
        let mut x: Vec<T> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for j in 0..i {
                x[i] = x[i] - self.lu[i * n + j] * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in (i + 1)..n {
                x[i] = x[i] - self.lu[i * n + j] * x[j];
            }
            x[i] = x[i] / self.lu[i * n + i];
        }
        Vector::from_vec_unchecked(x)
    }

    /// Solves `Aᵀ y = c`.
    pub fn solve_transpose(&self, c: &[T]) -> Vector<T> {
        let n = self.n;
        // Uᵀ w = c
        let mut w = c.to_vec();
        for i in 0..n {
            for j in 0..i {
                w[i] = w[i] - self.lu[j * n + i] * w[j];
            }
            w[i] = w[i] / self.lu[i * n + i];
        }
        // Lᵀ v = w
        for i in (0..n).rev() {
            for j in (i + 1)..n {
                w[i] = w[i] - self.lu[j * n + i] * w[j];
            }
        }
        // y = Pᵀ v
        let mut y = vec![T::zero(); n];
        for (k, &p) in self.perm.iter().enumerate() {
            y[p] = w[k];
        }
        Vector::from_vec_unchecked(y)
    }
}
