// Shared helpers for the integration tests; each test binary uses a subset.
#![allow(dead_code)]

use smoothlab::perturb::gaussian_vector_with;
use smoothlab::{gaussian_points, LinearProgram64, SeedSpec, Vector64};

/// `{x : a_iᵀx <= 1}` with `a_i` Gaussian around centers of norm at most 1,
/// plus a Gaussian objective.
pub fn perturbed_lp(n: usize, d: usize, sigma: f64, seed: u64) -> LinearProgram64 {
    let mut rng = SeedSpec::new(seed, 0).rng();
    let centers: Vec<Vector64> = (0..n)
        .map(|_| {
            let g: Vector64 = gaussian_vector_with(d, &mut rng);
            let norm = g.norm();
            g.scaled(0.9 / norm.max(0.9))
        })
        .collect();
    let rows = gaussian_points(&centers, sigma, SeedSpec::new(seed, 1)).unwrap().points;
    let z = gaussian_vector_with(d, &mut rng);
    LinearProgram64::unit_rhs(rows, z).unwrap()
}

pub fn gaussian(d: usize, seed: u64, stream: u64) -> Vector64 {
    gaussian_vector_with(d, &mut SeedSpec::new(seed, stream).rng())
}
