use itertools::Itertools;
use rand::Rng;

use crate::error::{invalid, Error, Result};
use crate::numkit::{Lu, Matrix, Vector};
use crate::perturb::SeedSpec;
use crate::polytope::{
    basic_solution, binomial, check_budget, enumerate_raw, LinearProgram, LpStatus, PolytopeVertex, Reduction,
    DEFAULT_VERTEX_BUDGET, FEASIBILITY_TOL,
};
use crate::scalar::Real;

use super::{InitialVertex, PhaseOne, PivotTrace, Solution, TraceOutcome, TIE_TOL};

/// Minimum sine between `t` and `z` for a proper shadow plane.
const PLANE_SINE_TOL: f64 = 1e-9;
const BASIS_PIVOT_TOL: f64 = 1e-13;
const TILT_ATTEMPTS: usize = 16;

fn basis_lu<T: Real>(rows: &[Vector<T>], basis: &[usize]) -> Option<Lu<T>> {
    let d = rows[0].dim();
    let data: Vec<T> = basis.iter().flat_map(|&i| rows[i].entries().iter().copied()).collect();
    Lu::factor(&Matrix::from_raw(d, d, data), T::tolerance(BASIS_PIVOT_TOL))
}

fn nearly_parallel<T: Real>(t: &Vector<T>, z: &Vector<T>) -> bool {
    let (tn, zn) = (t.norm(), z.norm());
    if tn == T::zero() || zn == T::zero() {
        return true;
    }
    let u = t.scaled(T::one() / tn);
    z.axpy(-z.dot(&u), &u).norm() < T::lit(PLANE_SINE_TOL) * zn
}

/// First feasible basis in lexicographic tight-set order, with the sum of
/// its normals as the auxiliary objective. When that sum is parallel to `z`
/// (and `d >= 2`) the normals are reweighted with factors drawn from `rng`
/// so the walk has a proper shadow plane.
fn phase_one_raw<T: Real, R: Rng + ?Sized>(
    rows: &[Vector<T>],
    rhs: &[T],
    z: &Vector<T>,
    rng: &mut R,
) -> PhaseOne<T> {
    let n = rows.len();
    let d = rows[0].dim();
    let tol = T::tolerance(FEASIBILITY_TOL);
    let mut examined = 0u64;
    if n >= d {
        for tight in (0..n).combinations(d) {
            examined += 1;
            let Some(x) = basic_solution(rows, rhs, &tight) else { continue };
            if !rows.iter().zip(rhs).all(|(a, &b)| b - a.dot(&x) >= -tol) {
                continue;
            }
            let mut t = tight.iter().fold(Vector::zeros(d), |acc, &i| acc.add(&rows[i]));
            if d >= 2 {
                for _ in 0..TILT_ATTEMPTS {
                    if !nearly_parallel(&t, z) {
                        break;
                    }
                    t = tight
                        .iter()
                        .fold(Vector::zeros(d), |acc, &i| acc.axpy(T::lit(rng.random_range(0.5..1.5)), &rows[i]));
                }
            }
            return PhaseOne::Found(InitialVertex {
                vertex: PolytopeVertex { point: x, tight_set: tight },
                objective: t,
                bases_examined: examined,
            });
        }
    }
    PhaseOne::Infeasible { bases_examined: examined }
}

/// Phase I: a feasible vertex together with an objective certifying its
/// optimality, or infeasibility. The constraint rows must have full rank
/// (otherwise the polytope has no vertex at all).
pub fn find_initial_vertex<T: Real>(lp: &LinearProgram<T>, seed: SeedSpec) -> Result<PhaseOne<T>> {
    check_budget("bases C(n, d)", binomial(lp.n(), lp.d()), DEFAULT_VERTEX_BUDGET)?;
    let red = Reduction::of(lp.rows());
    if red.rank < lp.d() {
        let tol = T::tolerance(FEASIBILITY_TOL);
        let feasible = if red.rank == 0 {
            lp.rhs().iter().all(|&b| b >= -tol)
        } else {
            !enumerate_raw(&red.rows, lp.rhs(), DEFAULT_VERTEX_BUDGET)?.is_empty()
        };
        if !feasible {
            return Ok(PhaseOne::Infeasible { bases_examined: binomial(lp.n(), lp.d()) as u64 });
        }
        return Err(invalid(format!(
            "constraint rows have rank {} < d = {}; the polytope has no vertex",
            red.rank,
            lp.d()
        )));
    }
    Ok(phase_one_raw(lp.rows(), lp.rhs(), lp.objective(), &mut seed.rng()))
}

/// Phase II walk from `start`, which must be a vertex of `lp` optimal for
/// `start_objective`, to the optimum of `lp.objective()` (or an unbounded
/// edge).
pub fn shadow_pivot_walk<T: Real>(
    lp: &LinearProgram<T>,
    start: &PolytopeVertex<T>,
    start_objective: &Vector<T>,
) -> Result<PivotTrace<T>> {
    let d = lp.d();
    let n = lp.n();
    let bad = |msg: String| Err(Error::InvalidStart(msg));
    if start_objective.dim() != d || start.point.dim() != d {
        return bad("dimension mismatch".into());
    }
    let tight = &start.tight_set;
    if tight.len() != d {
        return bad(format!("a vertex needs {d} tight constraints, got {}", tight.len()));
    }
    if tight.windows(2).any(|w| w[0] >= w[1]) || tight.iter().any(|&i| i >= n) {
        return bad("tight set must be sorted, distinct and in range".into());
    }
    let tol = T::tolerance(FEASIBILITY_TOL);
    let slacks = lp.slacks(&start.point);
    if let Some(&i) = tight.iter().find(|&&i| slacks[i].abs() > tol) {
        return bad(format!("constraint {i} is not tight at the start point"));
    }
    if let Some(i) = slacks.iter().position(|&s| s < -tol) {
        return bad(format!("start point violates constraint {i}"));
    }
    let Some(lu) = basis_lu(lp.rows(), tight) else {
        return bad("tight constraints are linearly dependent".into());
    };
    let y = lu.solve_transpose(start_objective.entries());
    let y_scale = y.entries().iter().fold(T::one(), |m, v| m.max(v.abs()));
    if y.entries().iter().any(|&v| v < -tol * y_scale) {
        return bad("start objective is not in the cone of the tight normals".into());
    }
    walk_raw(lp.rows(), lp.rhs(), start.clone(), start_objective, lp.objective())
}

/// The λ-sweep itself; assumes `start` is a valid `t`-optimal vertex.
fn walk_raw<T: Real>(
    rows: &[Vector<T>],
    rhs: &[T],
    start: PolytopeVertex<T>,
    t: &Vector<T>,
    z: &Vector<T>,
) -> Result<PivotTrace<T>> {
    let n = rows.len();
    let d = rows[0].dim();
    let tie = T::tolerance(TIE_TOL);
    let dir_tol = T::tolerance(1e-12);
    let pivot_limit = binomial(n, d).min(10_000_000) as usize + 1;

    let mut basis = start.tight_set.clone();
    let mut visited = vec![start];
    let mut breakpoints = Vec::new();
    let mut ties = 0usize;
    let mut lambda = T::zero();

    let outcome = loop {
        let lu = basis_lu(rows, &basis).ok_or_else(|| invalid("basis became numerically singular"))?;
        let y_t = lu.solve_transpose(t.entries());
        let y_z = lu.solve_transpose(z.entries());

        // Largest λ keeping every multiplier y_t + λ (y_z - y_t) nonnegative.
        let mut leaving: Option<(usize, T)> = None;
        for pos in 0..d {
            let slope = y_z[pos] - y_t[pos];
            if slope >= T::zero() {
                continue;
            }
            let root = (y_t[pos] / (y_t[pos] - y_z[pos])).max(lambda);
            match leaving {
                Some((_, best)) if root > best - tie => {
                    if (root - best).abs() <= tie {
                        ties += 1;
                    }
                }
                _ => leaving = Some((pos, root)),
            }
        }
        let Some((pos, lambda_star)) = leaving.filter(|&(_, l)| l < T::one()) else {
            break TraceOutcome::Optimal;
        };
        lambda = lambda_star;
        breakpoints.push(lambda);

        // Edge leaving constraint basis[pos]: A_B w = -e_pos.
        let mut e = vec![T::zero(); d];
        e[pos] = -T::one();
        let w = lu.solve(&e);
        let x = &visited.last().expect("nonempty").point;
        let w_norm = w.norm();
        let mut entering: Option<(usize, T)> = None;
        for i in 0..n {
            if basis.binary_search(&i).is_ok() {
                continue;
            }
            let aw = rows[i].dot(&w);
            if aw <= dir_tol * rows[i].norm() * w_norm {
                continue;
            }
            let ratio = ((rhs[i] - rows[i].dot(x)) / aw).max(T::zero());
            match entering {
                Some((_, best)) if ratio > best - tie * (T::one() + best.abs()) => {
                    if (ratio - best).abs() <= tie * (T::one() + best.abs()) {
                        ties += 1;
                    }
                }
                _ => entering = Some((i, ratio)),
            }
        }
        let Some((enter, _)) = entering else {
            break TraceOutcome::Unbounded { ray: w.normalized().expect("edge direction is nonzero") };
        };

        basis[pos] = enter;
        basis.sort_unstable();
        let lu = basis_lu(rows, &basis).ok_or_else(|| invalid("entering basis is numerically singular"))?;
        let b: Vec<T> = basis.iter().map(|&i| rhs[i]).collect();
        visited.push(PolytopeVertex { point: lu.solve(&b), tight_set: basis.clone() });
        if visited.len() > pivot_limit {
            return Err(invalid("pivot limit exceeded; the walk is cycling on a degenerate instance"));
        }
    };

    Ok(PivotTrace {
        visited,
        lambda_breakpoints: breakpoints,
        outcome,
        start_objective: Some(t.clone()),
        degenerate_ties: ties,
        parallel_plane: nearly_parallel(t, z),
    })
}

/// Two-phase solve: Phase I by [`find_initial_vertex`]'s canonical search,
/// Phase II by the shadow-vertex walk toward `lp.objective()`. Rank-deficient
/// constraint rows are handled in row-space coordinates, with unboundedness
/// along the lineality space detected up front.
pub fn solve<T: Real>(lp: &LinearProgram<T>, seed: SeedSpec) -> Result<Solution<T>> {
    let z = lp.objective();
    let tol = T::tolerance(FEASIBILITY_TOL);
    let red = Reduction::of(lp.rows());
    check_budget("bases C(n, d)", binomial(lp.n(), lp.d()), DEFAULT_VERTEX_BUDGET)?;

    if red.rank == 0 {
        if lp.rhs().iter().any(|&b| b < -tol) {
            return Ok(Solution { status: LpStatus::Infeasible, trace: PivotTrace::failed(), phase1_bases_examined: 0 });
        }
        let origin = PolytopeVertex { point: Vector::zeros(lp.d()), tight_set: Vec::new() };
        let (status, outcome) = match z.normalized() {
            Some(ray) => (LpStatus::Unbounded { ray: ray.clone() }, TraceOutcome::Unbounded { ray }),
            None => (LpStatus::Optimal { vertex: origin.clone(), value: T::zero() }, TraceOutcome::Optimal),
        };
        let trace = PivotTrace {
            visited: vec![origin],
            lambda_breakpoints: Vec::new(),
            outcome,
            start_objective: None,
            degenerate_ties: 0,
            parallel_plane: true,
        };
        return Ok(Solution { status, trace, phase1_bases_examined: 0 });
    }

    let z_red = red.reduce(z);
    let mut rng = seed.rng();
    let initial = match phase_one_raw(&red.rows, lp.rhs(), &z_red, &mut rng) {
        PhaseOne::Found(init) => init,
        PhaseOne::Infeasible { bases_examined } => {
            return Ok(Solution {
                status: LpStatus::Infeasible,
                trace: PivotTrace::failed(),
                phase1_bases_examined: bases_examined,
            })
        }
    };
    let examined = initial.bases_examined;

    let along_lineality = red.lineality_component(z);
    if along_lineality.norm() > tol * T::one().max(z.norm()) {
        let ray = along_lineality.normalized().expect("nonzero");
        let trace = PivotTrace {
            visited: vec![red.lift_vertex(initial.vertex)],
            lambda_breakpoints: Vec::new(),
            outcome: TraceOutcome::Unbounded { ray: ray.clone() },
            start_objective: Some(red.lift(&initial.objective)),
            degenerate_ties: 0,
            parallel_plane: false,
        };
        return Ok(Solution { status: LpStatus::Unbounded { ray }, trace, phase1_bases_examined: examined });
    }

    let mut trace = walk_raw(&red.rows, lp.rhs(), initial.vertex, &initial.objective, &z_red)?;
    if !red.is_identity() {
        trace.visited = trace.visited.into_iter().map(|v| red.lift_vertex(v)).collect();
        trace.start_objective = trace.start_objective.map(|t| red.lift(&t));
        if let TraceOutcome::Unbounded { ray } = &trace.outcome {
            trace.outcome = TraceOutcome::Unbounded { ray: red.lift(ray) };
        }
    }
    let status = match &trace.outcome {
        TraceOutcome::Optimal => {
            let vertex = trace.visited.last().expect("walk visits its start").clone();
            let value = z.dot(&vertex.point);
            LpStatus::Optimal { vertex, value }
        }
        TraceOutcome::Unbounded { ray } => LpStatus::Unbounded { ray: ray.clone() },
        TraceOutcome::Phase1Failed => LpStatus::Infeasible,
    };
    Ok(Solution { status, trace, phase1_bases_examined: examined })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{brute_force_optimum, StatusKind};

    fn v(xs: &[f64]) -> Vector<f64> {
        Vector::new(xs.to_vec()).unwrap()
    }

    /// Rows `+e1, -e1, +e2, -e2`, all `<= 1`.
    fn unit_box(z: &[f64]) -> LinearProgram<f64> {
        let rows = vec![v(&[1.0, 0.0]), v(&[-1.0, 0.0]), v(&[0.0, 1.0]), v(&[0.0, -1.0])];
        LinearProgram::unit_rhs(rows, v(z)).unwrap()
    }

    #[test]
    fn square_walk_from_opposite_corner() {
        let lp = unit_box(&[1.0, 1.0]);
        let start = PolytopeVertex { point: v(&[-1.0, -1.0]), tight_set: vec![1, 3] };
        let trace = shadow_pivot_walk(&lp, &start, &v(&[-1.0, -1.0])).unwrap();
        assert_eq!(trace.outcome, TraceOutcome::Optimal);
        assert_eq!(trace.pivot_count(), 2);
        let path: Vec<Vec<usize>> = trace.visited.iter().map(|v| v.tight_set.clone()).collect();
        assert_eq!(path, vec![vec![1, 3], vec![0, 3], vec![0, 2]]);
        assert_eq!(trace.visited[1].point, v(&[1.0, -1.0]));
        assert_eq!(trace.visited[2].point, v(&[1.0, 1.0]));
        assert!(trace.parallel_plane);
        assert!(trace.degenerate_ties > 0);
    }

    #[test]
    fn already_optimal_start() {
        let lp = unit_box(&[1.0, 1.0]);
        let start = PolytopeVertex { point: v(&[1.0, 1.0]), tight_set: vec![0, 2] };
        let trace = shadow_pivot_walk(&lp, &start, &v(&[1.0, 0.3])).unwrap();
        assert_eq!(trace.pivot_count(), 0);
        assert_eq!(trace.outcome, TraceOutcome::Optimal);
        assert!(trace.lambda_breakpoints.is_empty());
    }

    #[test]
    fn non_vertex_start_rejected() {
        let lp = LinearProgram::unit_rhs(vec![v(&[1.0, 0.0])], v(&[0.0, 1.0])).unwrap();
        let start = PolytopeVertex { point: v(&[1.0, 5.0]), tight_set: vec![0] };
        assert!(matches!(shadow_pivot_walk(&lp, &start, &v(&[1.0, 0.0])), Err(Error::InvalidStart(_))));
    }

    #[test]
    fn start_objective_outside_cone_rejected() {
        let lp = unit_box(&[1.0, 1.0]);
        let start = PolytopeVertex { point: v(&[1.0, 1.0]), tight_set: vec![0, 2] };
        let err = shadow_pivot_walk(&lp, &start, &v(&[-1.0, 0.5])).unwrap_err();
        assert!(matches!(err, Error::InvalidStart(_)));
    }

    #[test]
    fn phase_one_on_box() {
        let lp = unit_box(&[1.0, 1.0]);
        let PhaseOne::Found(init) = find_initial_vertex(&lp, SeedSpec::new(0, 0)).unwrap() else { panic!() };
        assert_eq!(init.vertex.tight_set, vec![0, 2]);
        // The sum of the tight normals is parallel to z here, so it was tilted.
        assert!(!nearly_parallel(&init.objective, lp.objective()));
        let rows = [&lp.rows()[0], &lp.rows()[2]];
        let lu = basis_lu(lp.rows(), &init.vertex.tight_set).unwrap();
        assert!(lu.solve_transpose(init.objective.entries()).entries().iter().all(|&y| y > 0.0), "{rows:?}");
    }

    #[test]
    fn phase_one_infeasible() {
        let lp = LinearProgram::new(vec![v(&[1.0]), v(&[-1.0])], vec![-1.0, -2.0], v(&[1.0])).unwrap();
        assert!(matches!(find_initial_vertex(&lp, SeedSpec::new(0, 0)).unwrap(), PhaseOne::Infeasible { .. }));
        let lp = LinearProgram::new(vec![v(&[1.0, 0.0]), v(&[-1.0, 0.0])], vec![-1.0, -2.0], v(&[1.0, 0.0])).unwrap();
        assert!(matches!(find_initial_vertex(&lp, SeedSpec::new(0, 0)).unwrap(), PhaseOne::Infeasible { .. }));
    }

    #[test]
    fn solve_examples() {
        let sol = solve(&unit_box(&[1.0, 1.0]), SeedSpec::new(1, 0)).unwrap();
        assert_eq!(sol.status.value(), Some(2.0));
        let LpStatus::Optimal { vertex, .. } = &sol.status else { panic!() };
        assert_eq!(vertex.point, v(&[1.0, 1.0]));

        let open = LinearProgram::unit_rhs(vec![v(&[1.0, 0.0])], v(&[0.0, 1.0])).unwrap();
        let sol = solve(&open, SeedSpec::new(1, 0)).unwrap();
        assert_eq!(sol.status.kind(), StatusKind::Unbounded);

        let infeasible = LinearProgram::new(vec![v(&[1.0]), v(&[-1.0])], vec![-1.0, -2.0], v(&[1.0])).unwrap();
        let sol = solve(&infeasible, SeedSpec::new(1, 0)).unwrap();
        assert_eq!(sol.status, LpStatus::Infeasible);
        assert_eq!(sol.trace.outcome, TraceOutcome::Phase1Failed);
    }

    #[test]
    fn one_dimensional_walk_crosses_zero_objective() {
        // -1 <= x <= 2, maximize x; Phase I lands on x = 2 or x = -1.
        let lp = LinearProgram::new(vec![v(&[1.0]), v(&[-1.0])], vec![2.0, 1.0], v(&[1.0])).unwrap();
        let sol = solve(&lp, SeedSpec::new(0, 0)).unwrap();
        assert_eq!(sol.status.value(), Some(2.0));
        let lp = lp.with_objective(v(&[-3.0])).unwrap();
        let sol = solve(&lp, SeedSpec::new(0, 0)).unwrap();
        assert_eq!(sol.status.value(), Some(3.0));
        assert_eq!(sol.trace.pivot_count(), 1);
    }

    #[test]
    fn cube_solve_matches_oracle() {
        let mut rows = Vec::new();
        for k in 0..3 {
            rows.push(Vector::unit(3, k));
            rows.push(Vector::unit(3, k).scaled(-1.0));
        }
        let lp = LinearProgram::unit_rhs(rows, v(&[0.3, -0.5, 0.9])).unwrap();
        let sol = solve(&lp, SeedSpec::new(3, 1)).unwrap();
        let oracle = brute_force_optimum(&lp).unwrap();
        assert!((sol.status.value().unwrap() - oracle.value().unwrap()).abs() < 1e-12);
        let record = sol.trace.record();
        assert_eq!(record.pivot_count, sol.trace.pivot_count());
        let json = serde_json::to_value(&record).unwrap();
        assert_eq!(json["status"], "optimal");
        assert!(json["visited_tight_sets"].is_array());
    }
}
