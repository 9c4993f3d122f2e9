//! Wolfe's minimum-norm-point algorithm on the normalized points. When the
//! origin is outside their convex hull, the min-norm point `x*` gives the
//! margin: `ν = ‖x*‖`, attained at `x = x*/‖x*‖`.

use crate::numkit::{Lu, Matrix, Vector};
use crate::scalar::Real;

/// Stop when `‖x‖² - min_i ⟨x, u_i⟩` falls below this.
pub const WOLFE_GAP_TOL: f64 = 1e-12;

/// Origin within this distance of the hull: margin reported as zero.
pub const ZERO_MARGIN_TOL: f64 = 1e-8;

const MAX_MAJOR: usize = 10_000;
const MAX_MINOR: usize = 1_000;

#[derive(Debug, Clone, PartialEq)]
pub struct MarginCertificate<T> {
    /// Certified lower bound `max(0, min_i ⟨u_i, x̂⟩)` on the margin.
    pub nu: T,
    /// `‖x‖` at termination, an upper bound on the margin.
    pub upper: T,
    /// Unit direction achieving `nu`; `None` when the margin is zero.
    pub direction: Option<Vector<T>>,
    pub iterations: usize,
}

/// Affine minimizer of `‖Σ w_k p_k‖` over `Σ w_k = 1`, from the bordered
/// Gram system. `None` if the active points are affinely dependent.
fn affine_minimizer<T: Real>(points: &[Vector<T>], active: &[usize]) -> Option<Vec<T>> {
    let k = active.len();
    let m = k + 1;
    let mut data = vec![T::zero(); m * m];
    for (r, &i) in active.iter().enumerate() {
        for (c, &j) in active.iter().enumerate() {
            // Shift by 1 keeps the system well scaled; it cancels because Σw = 1.
            data[r * m + c] = points[i].dot(&points[j]) + T::one();
        }
        data[r * m + k] = T::one();
        data[k * m + r] = T::one();
    }
    let lu = Lu::factor(&Matrix::from_raw(m, m, data), T::tolerance(1e-14))?;
    let mut rhs = vec![T::zero(); m];
    rhs[k] = T::one();
    let sol = lu.solve(&rhs);
    Some(sol.entries()[..k].to_vec())
}

fn combine<T: Real>(points: &[Vector<T>], active: &[usize], weights: &[T]) -> Vector<T> {
    let dim = points[0].dim();
    active.iter().zip(weights).fold(Vector::zeros(dim), |acc, (&i, &w)| acc.axpy(w, &points[i]))
}

/// Min-norm point of `conv(units)`; `units` must be unit vectors.
pub(crate) fn min_norm_margin<T: Real>(units: &[Vector<T>]) -> MarginCertificate<T> {
    let gap_tol = T::tolerance(WOLFE_GAP_TOL);
    let first = 0;
    let mut active = vec![first];
    let mut lambda = vec![T::one()];
    let mut x = units[first].clone();
    let mut iterations = 0;

    'major: while iterations < MAX_MAJOR {
        iterations += 1;
        let (j, best) = units
            .iter()
            .enumerate()
            .map(|(i, u)| (i, x.dot(u)))
            .fold((0, T::infinity()), |acc, cur| if cur.1 < acc.1 { cur } else { acc });
        let xx = x.dot(&x);
        if xx - best <= gap_tol || active.contains(&j) || xx <= T::lit(ZERO_MARGIN_TOL * ZERO_MARGIN_TOL) {
            break;
        }
        active.push(j);
        lambda.push(T::zero());

        for _ in 0..MAX_MINOR {
            let Some(w) = affine_minimizer(units, &active) else { break 'major };
            if w.iter().all(|&v| v > T::zero()) {
                lambda = w;
                x = combine(units, &active, &lambda);
                continue 'major;
            }
            // Move toward w until the first weight hits zero, then drop it.
            let theta = lambda
                .iter()
                .zip(&w)
                .filter(|(_, &wk)| wk <= T::zero())
                .map(|(&lk, &wk)| if lk - wk > T::zero() { lk / (lk - wk) } else { T::zero() })
                .fold(T::one(), T::min);
            for (lk, &wk) in lambda.iter_mut().zip(&w) {
                *lk = *lk + theta * (wk - *lk);
            }
            // The weight that hit zero leaves, with any others driven to zero.
            let hit = (0..lambda.len()).fold(0, |m, k| if lambda[k] < lambda[m] { k } else { m });
            let (keep, kept_lambda): (Vec<usize>, Vec<T>) = active
                .iter()
                .zip(&lambda)
                .enumerate()
                .filter(|&(k, (_, &lk))| k != hit && lk > T::zero())
                .map(|(_, (&i, &lk))| (i, lk))
                .unzip();
            if keep.is_empty() {
                break 'major;
            }
            let total: T = kept_lambda.iter().copied().sum();
            active = keep;
            lambda = kept_lambda.into_iter().map(|l| l / total).collect();
            x = combine(units, &active, &lambda);
        }
    }

    let upper = x.norm();
    if upper <= T::lit(ZERO_MARGIN_TOL) {
        return MarginCertificate { nu: T::zero(), upper, direction: None, iterations };
    }
    let dir = x.scaled(T::one() / upper);
    let lower = units.iter().map(|u| u.dot(&dir)).fold(T::infinity(), T::min);
    if lower <= T::zero() {
        return MarginCertificate { nu: T::zero(), upper, direction: None, iterations };
    }
    MarginCertificate { nu: lower.min(T::one()), upper, direction: Some(dir), iterations }
}
