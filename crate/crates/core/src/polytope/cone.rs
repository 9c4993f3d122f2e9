//! Lineality reduction, extreme rays of the recession cone, and the
//! brute-force LP oracle built on them.

use itertools::Itertools;

use crate::error::Result;
use crate::numkit::{complement_direction, orthonormal_basis, residual, Vector};
use crate::scalar::Real;

use super::vertices::{binomial, check_budget, enumerate_raw, DEFAULT_VERTEX_BUDGET};
use super::{LinearProgram, LpStatus, PolytopeVertex, FEASIBILITY_TOL};

const RANK_TOL: f64 = 1e-12;

/// Coordinates on the row space of the constraint matrix. A polyhedron with
/// rank-deficient rows has no vertices; writing `x = Q y + l` with `Q` an
/// orthonormal basis of the row space and `l` in the null space gives a
/// pointed polyhedron in `y` with the same constraint values.
pub(crate) struct Reduction<T> {
    /// `None` when the rows have full rank (identity coordinates).
    basis: Option<Vec<Vector<T>>>,
    pub rows: Vec<Vector<T>>,
    pub rank: usize,
    dim: usize,
}

impl<T: Real> Reduction<T> {
    pub fn of(rows: &[Vector<T>]) -> Self {
        let dim = rows[0].dim();
        let q = orthonormal_basis(rows, T::lit(RANK_TOL));
        let rank = q.len();
        if rank == dim {
            return Self { basis: None, rows: rows.to_vec(), rank, dim };
        }
        let reduced = if rank == 0 { Vec::new() } else { rows.iter().map(|a| project(&q, a)).collect() };
        Self { basis: Some(q), rows: reduced, rank, dim }
    }

    pub fn is_identity(&self) -> bool {
        self.basis.is_none()
    }

    /// `Qᵀ v`
    pub fn reduce(&self, v: &Vector<T>) -> Vector<T> {
        match &self.basis {
            None => v.clone(),
            Some(q) => project(q, v),
        }
    }

    /// `Q y`
    pub fn lift(&self, y: &Vector<T>) -> Vector<T> {
        match &self.basis {
            None => y.clone(),
            Some(q) => q
                .iter()
                .zip(y.entries())
                .fold(Vector::zeros(self.dim), |acc, (qk, &yk)| acc.axpy(yk, qk)),
        }
    }

    /// Component of `v` in the null space of the rows (the lineality space).
    pub fn lineality_component(&self, v: &Vector<T>) -> Vector<T> {
        match &self.basis {
            None => Vector::zeros(self.dim),
            Some(q) => residual(v, q),
        }
    }

    pub fn lift_vertex(&self, v: PolytopeVertex<T>) -> PolytopeVertex<T> {
        PolytopeVertex { point: self.lift(&v.point), tight_set: v.tight_set }
    }
}

fn project<T: Real>(q: &[Vector<T>], v: &Vector<T>) -> Vector<T> {
    Vector::from_vec_unchecked(q.iter().map(|qk| qk.dot(v)).collect())
}

/// Unit extreme rays of the pointed cone `{w : a_iᵀw <= 0}` (rows of full
/// rank): directions with `dim - 1` independent tight rows and every other
/// row nonpositive. An empty result means the cone is `{0}`.
pub(crate) fn extreme_rays<T: Real>(rows: &[Vector<T>], budget: u128) -> Result<Vec<Vector<T>>> {
    let dim = rows[0].dim();
    let n = rows.len();
    check_budget("recession-cone rays C(n, d - 1)", binomial(n, dim - 1), budget)?;
    let tol = T::tolerance(FEASIBILITY_TOL);
    let mut rays = Vec::new();
    for subset in (0..n).combinations(dim - 1) {
        let sub: Vec<Vector<T>> = subset.iter().map(|&i| rows[i].clone()).collect();
        let q = orthonormal_basis(&sub, T::lit(RANK_TOL));
        if q.len() != dim - 1 {
            continue;
        }
        let Some(w) = complement_direction(&q, dim) else { continue };
        for sign in [T::one(), -T::one()] {
            let cand = w.scaled(sign);
            if rows.iter().all(|a| a.dot(&cand) <= tol * a.norm()) {
                rays.push(cand);
            }
        }
    }
    Ok(rays)
}

/// Brute-force LP oracle: optimum over all enumerated vertices, with
/// unboundedness certified by a lineality direction or an extreme ray of the
/// recession cone that improves the objective.
pub fn brute_force_optimum<T: Real>(lp: &LinearProgram<T>) -> Result<LpStatus<T>> {
    let tol = T::tolerance(FEASIBILITY_TOL);
    let z = lp.objective();
    let red = Reduction::of(lp.rows());

    if red.rank == 0 {
        if lp.rhs().iter().any(|&b| b < -tol) {
            return Ok(LpStatus::Infeasible);
        }
        return Ok(match z.normalized() {
            Some(ray) => LpStatus::Unbounded { ray },
            None => LpStatus::Optimal {
                vertex: PolytopeVertex { point: Vector::zeros(lp.d()), tight_set: Vec::new() },
                value: T::zero(),
            },
        });
    }

    let vertices = enumerate_raw(&red.rows, lp.rhs(), DEFAULT_VERTEX_BUDGET)?;
    if vertices.is_empty() {
        // A nonempty pointed polyhedron always has a vertex.
        return Ok(LpStatus::Infeasible);
    }
    let z_scale = T::one().max(z.norm());
    let along_lineality = red.lineality_component(z);
    if along_lineality.norm() > tol * z_scale {
        let ray = along_lineality.normalized().expect("nonzero");
        return Ok(LpStatus::Unbounded { ray });
    }
    let z_red = red.reduce(z);
    for ray in extreme_rays(&red.rows, DEFAULT_VERTEX_BUDGET)? {
        if z_red.dot(&ray) > tol * z_scale {
            return Ok(LpStatus::Unbounded { ray: red.lift(&ray) });
        }
    }
    let best = vertices
        .into_iter()
        .map(|v| (z_red.dot(&v.point), v))
        .reduce(|best, cur| if cur.0 > best.0 { cur } else { best })
        .expect("nonempty");
    let vertex = red.lift_vertex(best.1);
    let value = z.dot(&vertex.point);
    Ok(LpStatus::Optimal { vertex, value })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::super::{enumerate_vertices, StatusKind};
    use super::*;

    #[test]
    fn box_optimum() {
        let status = brute_force_optimum(&cube(2, vec![1.0, 1.0])).unwrap();
        let LpStatus::Optimal { vertex, value } = status else { panic!("{status:?}") };
        assert_eq!(vertex.point, vec2(1.0, 1.0));
        assert_eq!(value, 2.0);
    }

    #[test]
    fn open_direction_is_unbounded() {
        let lp = LinearProgram::unit_rhs(vec![vec2(1.0, 0.0)], vec2(0.0, 1.0)).unwrap();
        let LpStatus::Unbounded { ray } = brute_force_optimum(&lp).unwrap() else { panic!() };
        assert!(ray.dot(lp.objective()) > 0.0);
        assert!(lp.rows()[0].dot(&ray) <= 1e-12);
        // Bounded along z even though the polytope has no vertex.
        let lp = LinearProgram::unit_rhs(vec![vec2(1.0, 0.0)], vec2(2.0, 0.0)).unwrap();
        let status = brute_force_optimum(&lp).unwrap();
        assert_eq!(status.value(), Some(2.0));
    }

    #[test]
    fn contradictory_pair_is_infeasible() {
        let rows = vec![Vector::new(vec![1.0]).unwrap(), Vector::new(vec![-1.0]).unwrap()];
        let lp = LinearProgram::new(rows, vec![-1.0, -2.0], Vector::new(vec![1.0]).unwrap()).unwrap();
        assert_eq!(brute_force_optimum(&lp).unwrap(), LpStatus::Infeasible);
        // Same pair embedded in R^2: rank-deficient and still infeasible.
        let lp = LinearProgram::new(vec![vec2(1.0, 0.0), vec2(-1.0, 0.0)], vec![-1.0, -2.0], vec2(0.0, 1.0)).unwrap();
        assert_eq!(brute_force_optimum(&lp).unwrap(), LpStatus::Infeasible);
    }

    #[test]
    fn cone_recession_detected() {
        // x >= 0, y >= 0 with z = (1, 1): unbounded along an extreme ray.
        let lp = LinearProgram::new(vec![vec2(-1.0, 0.0), vec2(0.0, -1.0)], vec![0.0, 0.0], vec2(1.0, 1.0)).unwrap();
        assert_eq!(brute_force_optimum(&lp).unwrap().kind(), StatusKind::Unbounded);
        // Pointing into the cone's polar: optimum at the apex.
        let lp = lp.with_objective(vec2(-1.0, -0.5)).unwrap();
        assert_eq!(brute_force_optimum(&lp).unwrap().value(), Some(0.0));
    }

    #[test]
    fn zero_rows() {
        let lp = LinearProgram::new(vec![vec2(0.0, 0.0)], vec![0.0], vec2(0.0, 0.0)).unwrap();
        assert_eq!(brute_force_optimum(&lp).unwrap().value(), Some(0.0));
        let lp = LinearProgram::new(vec![vec2(0.0, 0.0)], vec![-1.0], vec2(0.0, 0.0)).unwrap();
        assert_eq!(brute_force_optimum(&lp).unwrap(), LpStatus::Infeasible);
    }

    #[test]
    fn optimum_is_max_over_vertices() {
        let lp = cube(3, vec![0.3, -0.7, 0.2]);
        let best = enumerate_vertices(&lp)
            .unwrap()
            .iter()
            .map(|v| v.point.dot(lp.objective()))
            .fold(f64::NEG_INFINITY, f64::max);
        assert!((brute_force_optimum(&lp).unwrap().value().unwrap() - best).abs() < 1e-15);
    }
}
