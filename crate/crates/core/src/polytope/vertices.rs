use itertools::Itertools;

use crate::error::{Error, Result};
use crate::numkit::{Lu, Matrix, Vector};
use crate::scalar::Real;

use super::{LinearProgram, PolytopeVertex, COINCIDENCE_TOL, FEASIBILITY_TOL};

/// Default cap on the number of candidate bases `C(n, d)`.
pub const DEFAULT_VERTEX_BUDGET: u128 = 1_000_000;

/// Pivot threshold (relative) below which a tight set counts as dependent.
const INDEPENDENCE_TOL: f64 = 1e-12;

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul((n - i) as u128) {
            Some(v) => v / (i as u128 + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Every basic feasible solution of the polytope, each exactly once, in
/// lexicographic order of tight sets.
pub fn enumerate_vertices<T: Real>(lp: &LinearProgram<T>) -> Result<Vec<PolytopeVertex<T>>> {
    enumerate_vertices_with_budget(lp, DEFAULT_VERTEX_BUDGET)
}

pub fn enumerate_vertices_with_budget<T: Real>(lp: &LinearProgram<T>, budget: u128) -> Result<Vec<PolytopeVertex<T>>> {
    enumerate_raw(lp.rows(), lp.rhs(), budget)
}

pub(crate) fn check_budget(what: &'static str, required: u128, budget: u128) -> Result<()> {
    if required > budget {
        return Err(Error::SizeLimit { what, required, budget });
    }
    Ok(())
}

pub(crate) fn enumerate_raw<T: Real>(rows: &[Vector<T>], rhs: &[T], budget: u128) -> Result<Vec<PolytopeVertex<T>>> {
    let n = rows.len();
    let d = rows[0].dim();
    if n < d {
        return Ok(Vec::new());
    }
    check_budget("vertex enumeration C(n, d)", binomial(n, d), budget)?;
    let tol = T::tolerance(FEASIBILITY_TOL);
    let mut out = Vec::new();
    for tight in (0..n).combinations(d) {
        let Some(x) = basic_solution(rows, rhs, &tight) else { continue };
        let feasible = rows.iter().zip(rhs).all(|(a, &b)| b - a.dot(&x) >= -tol);
        if feasible {
            out.push(PolytopeVertex { point: x, tight_set: tight });
        }
    }
    Ok(out)
}

/// Solves the tight system `a_iᵀx = b_i, i ∈ tight`; `None` when the rows are
/// dependent or the solution misses a tight constraint by more than the
/// feasibility tolerance.
pub(crate) fn basic_solution<T: Real>(rows: &[Vector<T>], rhs: &[T], tight: &[usize]) -> Option<Vector<T>> {
    let d = rows[0].dim();
    if tight.len() != d {
        return None;
    }
    let data: Vec<T> = tight.iter().flat_map(|&i| rows[i].entries().iter().copied()).collect();
    let basis = Matrix::from_raw(d, d, data);
    let lu = Lu::factor(&basis, T::tolerance(INDEPENDENCE_TOL))?;
    let b: Vec<T> = tight.iter().map(|&i| rhs[i]).collect();
    let x = lu.solve(&b);
    if x.entries().iter().any(|v| !v.is_finite()) {
        return None;
    }
    let tol = T::tolerance(FEASIBILITY_TOL);
    tight.iter().all(|&i| (rows[i].dot(&x) - rhs[i]).abs() <= tol).then_some(x)
}

/// Index pairs of vertices whose points coincide within `1e-7` (a primal
/// degeneracy, or a numerically fragile instance).
pub fn degenerate_pairs<T: Real>(vertices: &[PolytopeVertex<T>]) -> Vec<(usize, usize)> {
    let tol = T::tolerance(COINCIDENCE_TOL);
    let mut pairs = Vec::new();
    for i in 0..vertices.len() {
        for j in (i + 1)..vertices.len() {
            if vertices[i].point.sub(&vertices[j].point).norm() <= tol {
                pairs.push((i, j));
            }
        }
    }
    pairs
}
