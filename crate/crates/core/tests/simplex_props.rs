mod common;

use common::perturbed_lp;
use smoothlab::simplex::TIE_TOL;
use smoothlab::{
    brute_force_optimum, find_initial_vertex, shadow_polygon_of, solve, Error, LpStatus, PhaseOne, SeedSpec,
    TraceOutcome,
};

#[test]
fn solve_agrees_with_oracle_on_perturbed_instances() {
    let mut counts = [0usize; 3];
    for seed in 0..500u64 {
        let n = 3 + (seed % 8) as usize;
        let d = 1 + (seed % 3) as usize;
        let lp = perturbed_lp(n, d, 0.5, seed);
        let sol = solve(&lp, SeedSpec::new(seed, 0)).unwrap();
        let oracle = brute_force_optimum(&lp).unwrap();
        assert_eq!(sol.status.kind(), oracle.kind(), "seed {seed}");
        match (&sol.status, &oracle) {
            (LpStatus::Optimal { vertex, value }, LpStatus::Optimal { value: best, .. }) => {
                assert!((value - best).abs() <= 1e-6 * best.abs().max(1.0), "seed {seed}: {value} vs {best}");
                assert!(lp.is_feasible(&vertex.point));
                counts[0] += 1;
            }
            (LpStatus::Unbounded { ray }, _) => {
                assert!(lp.objective().dot(ray) > 0.0);
                assert!(lp.rows().iter().all(|a| a.dot(ray) <= 1e-9));
                counts[1] += 1;
            }
            _ => counts[2] += 1,
        }
    }
    assert!(counts[0] > 100 && counts[1] > 10, "{counts:?}");
}

#[test]
fn walk_follows_the_shadow() {
    let mut checked = 0;
    for seed in 0..400u64 {
        let n = 4 + (seed % 7) as usize;
        let d = 2 + (seed % 2) as usize;
        let lp = perturbed_lp(n, d, 0.3, seed);
        let sol = solve(&lp, SeedSpec::new(seed, 0)).unwrap();
        let trace = &sol.trace;
        if trace.outcome != TraceOutcome::Optimal || trace.degenerate_ties > 0 || trace.parallel_plane {
            continue;
        }
        let t = trace.start_objective.clone().unwrap();
        let shadow = match shadow_polygon_of(&lp, &t, lp.objective()) {
            Ok(s) => s,
            Err(Error::UnboundedShadow) => continue,
            Err(e) => panic!("seed {seed}: {e}"),
        };
        for v in &trace.visited {
            let p = shadow.project(&v.point);
            assert!(shadow.nearest_vertex_distance(p) < 1e-7, "seed {seed}");
        }
        assert!(trace.pivot_count() <= shadow.vertex_count());
        assert!(trace.lambda_breakpoints.windows(2).all(|w| w[0] <= w[1]));
        assert!(trace.lambda_breakpoints.iter().all(|&l| (0.0..=1.0).contains(&l)));
        for pair in trace.visited.windows(2) {
            let (a, b) = (&pair[0], &pair[1]);
            assert!(lp.objective().dot(&b.point) >= lp.objective().dot(&a.point) + 1e-12, "seed {seed}");
            let shared = a.tight_set.iter().filter(|i| b.tight_set.contains(i)).count();
            assert_eq!(shared, d - 1);
        }
        checked += 1;
    }
    assert!(checked > 150, "only {checked} instances checked");
}

#[test]
fn phase_one_vertex_is_certified() {
    for seed in 0..50u64 {
        let lp = perturbed_lp(8, 3, 0.5, seed);
        let PhaseOne::Found(init) = find_initial_vertex(&lp, SeedSpec::new(seed, 0)).unwrap() else {
            continue;
        };
        assert!(lp.is_feasible(&init.vertex.point));
        let vertices = smoothlab::enumerate_vertices(&lp).unwrap();
        assert!(vertices.iter().any(|v| v.tight_set == init.vertex.tight_set));
        let best = vertices.iter().map(|v| init.objective.dot(&v.point)).fold(f64::NEG_INFINITY, f64::max);
        assert!(init.objective.dot(&init.vertex.point) >= best - TIE_TOL);
    }
}

#[test]
fn traces_serialize() {
    let lp = perturbed_lp(6, 2, 0.3, 11);
    let sol = solve(&lp, SeedSpec::new(11, 0)).unwrap();
    let record = sol.trace.record();
    let json = serde_json::to_string(&record).unwrap();
    let back: smoothlab::simplex::TraceRecord = serde_json::from_str(&json).unwrap();
    assert_eq!(back, record);
}
