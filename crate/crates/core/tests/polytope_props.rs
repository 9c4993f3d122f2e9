mod common;

use common::{gaussian, perturbed_lp};
use proptest::prelude::*;
use smoothlab::polytope::convex_hull;
use smoothlab::{brute_force_optimum, enumerate_vertices, shadow_polygon_of, Error, LpStatus, Vector64};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn shadow_is_hull_of_projected_vertices(seed in any::<u64>(), n in 4usize..10, d in 2usize..4) {
        let lp = perturbed_lp(n, d, 0.3, seed);
        let (t, z) = (gaussian(d, seed, 7), gaussian(d, seed, 8));
        let shadow = match shadow_polygon_of(&lp, &t, &z) {
            Ok(s) => s,
            Err(Error::UnboundedShadow) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let vertices = enumerate_vertices(&lp).unwrap();
        prop_assert!(shadow.vertex_count() <= vertices.len());
        for (p, pre) in shadow.hull_points.iter().zip(&shadow.preimages) {
            let q = shadow.project(&pre.point);
            prop_assert!((p[0] - q[0]).hypot(p[1] - q[1]) < 1e-9);
            prop_assert!(vertices.iter().any(|v| v.tight_set == pre.tight_set));
        }
        for v in &vertices {
            prop_assert!(shadow.contains(shadow.project(&v.point), 1e-9));
        }
    }

    #[test]
    fn shadow_count_ignores_plane_basis(
        seed in any::<u64>(),
        n in 4usize..10,
        d in 2usize..4,
        mix in prop::array::uniform4(-2.0f64..2.0),
    ) {
        let [a, b, c, e] = mix;
        prop_assume!((a * e - b * c).abs() > 0.1);
        let lp = perturbed_lp(n, d, 0.3, seed);
        let (t, z) = (gaussian(d, seed, 7), gaussian(d, seed, 8));
        let (t2, z2) = (t.scaled(a).axpy(b, &z), t.scaled(c).axpy(e, &z));
        match (shadow_polygon_of(&lp, &t, &z), shadow_polygon_of(&lp, &t2, &z2)) {
            (Ok(s), Ok(s2)) => prop_assert_eq!(s.vertex_count(), s2.vertex_count()),
            (Err(Error::UnboundedShadow), Err(Error::UnboundedShadow)) => {}
            (x, y) => prop_assert!(false, "mismatch: {:?} vs {:?}", x.map(|s| s.vertex_count()), y.map(|s| s.vertex_count())),
        }
    }

    #[test]
    fn planar_shadow_is_the_polygon(seed in any::<u64>(), n in 3usize..9) {
        let lp = perturbed_lp(n, 2, 0.3, seed);
        let (e1, e2) = (Vector64::unit(2, 0), Vector64::unit(2, 1));
        let Ok(shadow) = shadow_polygon_of(&lp, &e1, &e2) else { return Ok(()) };
        let vertices = enumerate_vertices(&lp).unwrap();
        let pts: Vec<[f64; 2]> = vertices.iter().map(|v| [v.point[0], v.point[1]]).collect();
        let (hull, _) = convex_hull(&pts);
        let expected: Vec<[f64; 2]> = hull.iter().map(|&i| pts[i]).collect();
        prop_assert_eq!(shadow.hull_points, expected);
    }

    #[test]
    fn oracle_optimum_is_best_vertex(seed in any::<u64>(), n in 3usize..10, d in 1usize..4) {
        let lp = perturbed_lp(n, d, 0.5, seed);
        if let LpStatus::Optimal { vertex, value } = brute_force_optimum(&lp).unwrap() {
            prop_assert!(lp.is_feasible(&vertex.point));
            for v in enumerate_vertices(&lp).unwrap() {
                prop_assert!(lp.objective().dot(&v.point) <= value + 1e-9);
            }
        }
    }
}
