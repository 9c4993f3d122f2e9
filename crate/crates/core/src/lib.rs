//! Condition numbers, Gaussian perturbations, brute-force polytopes, the
//! shadow-vertex simplex method and the perceptron, generic over `f32`/`f64`.
//!
//! The crate root re-exports the main items and provides `f64` aliases
//! (`Matrix64`, `LinearProgram64`, ...).

pub mod error;
pub mod numkit;
pub mod perceptron;
pub mod perturb;
pub mod polytope;
pub mod scalar;
pub mod simplex;

pub use error::{Error, Result};
pub use numkit::{
    condition_number, distance_to_span, height, integer_determinant, inverse_norm, matrix_height, operator_norm,
    singular_values, Matrix, SingularSpectrum, Vector,
};
pub use perceptron::{
    blum_dunagan_tail, iteration_bound, margin_certificate, run_perceptron, run_perceptron_with_rule,
    smoothed_iteration_shape, wiggle_room, MarginCertificate, PerceptronInstance, PerceptronRun, RunStatus,
    SelectionRule, TailBound, TailStatus,
};
pub use perturb::{
    gaussian_matrix, gaussian_points, rademacher_matrix, shadow_regime_variance, smoothed_input, PerturbedPoints,
    RegimeWarning, SeedSpec,
};
pub use polytope::{
    brute_force_optimum, enumerate_vertices, shadow_polygon, shadow_polygon_of, shadow_size_bound, LinearProgram,
    LpStatus, PolytopeVertex, ShadowPolygon, StatusKind,
};
pub use scalar::Real;
pub use simplex::{find_initial_vertex, shadow_pivot_walk, solve, PhaseOne, PivotTrace, Solution, TraceOutcome};

pub type Vector64 = Vector<f64>;
pub type Matrix64 = Matrix<f64>;
pub type LinearProgram64 = LinearProgram<f64>;
pub type PolytopeVertex64 = PolytopeVertex<f64>;
pub type ShadowPolygon64 = ShadowPolygon<f64>;
pub type PivotTrace64 = PivotTrace<f64>;
pub type PerceptronInstance64 = PerceptronInstance<f64>;

pub type Vector32 = Vector<f32>;
pub type Matrix32 = Matrix<f32>;
