//! Exact determinants of integer-valued matrices (fraction-free Bareiss
//! elimination in `i128`), used to decide singularity of sign matrices
//! without any floating-point threshold.

use crate::error::{invalid, Error, Result};
use crate::scalar::Real;

use super::Matrix;

pub fn integer_determinant<T: Real>(m: &Matrix<T>) -> Result<i128> {
    if !m.is_square() {
        return Err(invalid("determinant needs a square matrix"));
    }
    let n = m.rows();
    let mut a: Vec<i128> = Vec::with_capacity(n * n);
    for &v in m.as_slice() {
        if v.fract() != T::zero() || v.abs() > T::lit(1e15) {
            return Err(invalid("exact determinant needs integer entries of magnitude <= 1e15"));
        }
        a.push(v.to_i128().expect("integral value"));
    }
    let overflow = || Error::SizeLimit {
        what: "exact determinant (i128 Bareiss)",
        required: u128::MAX,
        budget: i128::MAX as u128,
    };

    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k * n + k] == 0 {
            match ((k + 1)..n).find(|&i| a[i * n + k] != 0) {
                Some(i) => {
                    for j in 0..n {
                        a.swap(k * n + j, i * n + j);
                    }
                    sign = -sign;
                }
                None => return Ok(0),
            }
        }
        let pivot = a[k * n + k];
        for i in (k + 1)..n {
            for j in (k + 1)..n {
                let lhs = pivot.checked_mul(a[i * n + j]).ok_or_else(overflow)?;
                let rhs = a[i * n + k].checked_mul(a[k * n + j]).ok_or_else(overflow)?;
                // Bareiss guarantees exact division.
                a[i * n + j] = lhs.checked_sub(rhs).ok_or_else(overflow)? / prev;
            }
            a[i * n + k] = 0;
        }
        prev = pivot;
    }
    Ok(sign * a[n * n - 1])
}
