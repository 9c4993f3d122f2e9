//! Shadow vertex counts of `{x : a_iᵀx <= 1}` on a random plane, against the
//! smoothed shadow-size bound.

use serde::{Deserialize, Serialize};
use smoothlab::perturb::{gaussian_points_with, gaussian_vector_with};
use smoothlab::polytope::binomial;
use smoothlab::{shadow_polygon, shadow_size_bound, Error, SeedSpec, Vector64};

use crate::centers::point_centers;
use crate::config::ExperimentConfig;
use crate::error::Result;
use crate::report::{Cell, Report};
use crate::stats;

use super::{check_records, par_trials};

pub const COLUMNS: [&str; 7] =
    ["sigma", "trials", "bounded_trials", "mean_count", "max_count", "min_count", "bound_shadow"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShadowTrial {
    /// Hull vertex count; `None` when the shadow is unbounded.
    pub count: Option<u64>,
    /// Vertices whose projections coincided.
    pub collisions: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trials {
    pub per_sigma: Vec<Vec<ShadowTrial>>,
}

fn check(cfg: &ExperimentConfig) -> Result<Vec<f64>> {
    let bounds = cfg
        .sigma_grid
        .iter()
        .map(|&s| shadow_size_bound(cfg.n, cfg.d, s))
        .collect::<smoothlab::Result<Vec<f64>>>()?;
    let required = binomial(cfg.n, cfg.d);
    if required > smoothlab::polytope::DEFAULT_VERTEX_BUDGET {
        return Err(Error::SizeLimit {
            what: "vertex enumeration C(n, d)",
            required,
            budget: smoothlab::polytope::DEFAULT_VERTEX_BUDGET,
        }
        .into());
    }
    Ok(bounds)
}

/// Trial `i`: the points first, then `t` and `z`, all from stream `i`.
pub fn sample(cfg: &ExperimentConfig) -> Result<Trials> {
    check(cfg)?;
    let centers = point_centers(&cfg.centers[0], cfg.n, cfg.d)?;
    let per_sigma = cfg
        .sigma_grid
        .iter()
        .map(|&sigma| {
            par_trials(cfg.trials, |i| {
                let mut rng = SeedSpec::new(cfg.master_seed, i).rng();
                let rows = gaussian_points_with(&centers, sigma, &mut rng)?.points;
                let t: Vector64 = gaussian_vector_with(cfg.d, &mut rng);
                let z: Vector64 = gaussian_vector_with(cfg.d, &mut rng);
                match shadow_polygon(&rows, &t, &z) {
                    Ok(s) => Ok(ShadowTrial { count: Some(s.vertex_count() as u64), collisions: s.collisions as u64 }),
                    Err(Error::UnboundedShadow) => Ok(ShadowTrial { count: None, collisions: 0 }),
                    Err(e) => Err(e.into()),
                }
            })
        })
        .collect::<Result<_>>()?;
    Ok(Trials { per_sigma })
}

pub fn aggregate(cfg: &ExperimentConfig, trials: &Trials) -> Result<Report> {
    check_records(cfg, &trials.per_sigma, cfg.sigma_grid.len())?;
    let bounds = check(cfg)?;
    let mut report = Report::new(cfg, COLUMNS.to_vec());
    let mut below_bound = Vec::new();
    let mut small_polygons = 0u64;
    for ((&sigma, samples), &bound) in cfg.sigma_grid.iter().zip(&trials.per_sigma).zip(&bounds) {
        let counts: Vec<f64> = samples.iter().filter_map(|s| s.count).map(|c| c as f64).collect();
        small_polygons += counts.iter().filter(|&&c| c < 3.0).count() as u64;
        let some = |v: f64| if counts.is_empty() { Cell::Na } else { Cell::Num(v) };
        let mean = stats::mean(&counts);
        report.push(vec![
            sigma.into(),
            samples.len().into(),
            counts.len().into(),
            some(mean),
            some(stats::max(&counts)),
            some(stats::min(&counts)),
            bound.into(),
        ]);
        below_bound.push(counts.is_empty() || mean <= bound);
    }
    let collisions: u64 = trials.per_sigma.iter().flatten().map(|s| s.collisions).sum();
    report.note("mean_within_bound", &below_bound);
    report.note("bounded_polygons_with_fewer_than_3_vertices", small_polygons);
    report.note("projection_collisions", collisions);
    report.note("plane", "t and z drawn fresh per trial, independent of the constraint rows");
    Ok(report)
}
