//! The shadow-vertex simplex method.
//!
//! Starting from a vertex optimal for an auxiliary objective `t`, the walk
//! rotates the objective `q(λ) = (1 - λ) t + λ z` from `t` to the target `z`.
//! At each vertex the largest `λ` keeping the basis `q(λ)`-optimal is found
//! from the basis multipliers (which are affine in `λ`); the multiplier that
//! hits zero first leaves, and a primal ratio test along the resulting edge
//! picks the entering constraint. The vertices visited are the preimages of
//! consecutive vertices of the shadow of the polytope on `span(t, z)`.

mod walk;

pub use walk::{find_initial_vertex, shadow_pivot_walk, solve};

use serde::{Deserialize, Serialize};

use crate::numkit::Vector;
use crate::polytope::{LpStatus, PolytopeVertex, StatusKind};
use crate::scalar::Real;

/// Ratio-test and breakpoint ties closer than this are broken by the
/// smallest constraint index and counted.
pub const TIE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub enum TraceOutcome<T> {
    Optimal,
    Unbounded { ray: Vector<T> },
    Phase1Failed,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PivotTrace<T> {
    pub visited: Vec<PolytopeVertex<T>>,
    /// `λ` at each pivot attempt; one more than `pivot_count` when the walk
    /// ends on an unbounded edge.
    pub lambda_breakpoints: Vec<T>,
    pub outcome: TraceOutcome<T>,
    /// The auxiliary objective `t` the walk started from.
    pub start_objective: Option<Vector<T>>,
    /// Ratio-test or breakpoint ties resolved by index order.
    pub degenerate_ties: usize,
    /// `t` and `z` were parallel, so no proper shadow plane exists.
    pub parallel_plane: bool,
}

impl<T: Real> PivotTrace<T> {
    pub fn pivot_count(&self) -> usize {
        self.visited.len().saturating_sub(1)
    }

    pub fn status_kind(&self) -> StatusKind {
        match self.outcome {
            TraceOutcome::Optimal => StatusKind::Optimal,
            TraceOutcome::Unbounded { .. } => StatusKind::Unbounded,
            TraceOutcome::Phase1Failed => StatusKind::Infeasible,
        }
    }

    pub fn record(&self) -> TraceRecord {
        TraceRecord {
            status: self.status_kind(),
            pivot_count: self.pivot_count(),
            lambda_breakpoints: self.lambda_breakpoints.iter().map(|l| l.to_f64_lossy()).collect(),
            visited_tight_sets: self.visited.iter().map(|v| v.tight_set.clone()).collect(),
        }
    }

    pub(crate) fn failed() -> Self {
        Self {
            visited: Vec::new(),
            lambda_breakpoints: Vec::new(),
            outcome: TraceOutcome::Phase1Failed,
            start_objective: None,
            degenerate_ties: 0,
            parallel_plane: false,
        }
    }
}

/// JSON form of a trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub status: StatusKind,
    pub pivot_count: usize,
    pub lambda_breakpoints: Vec<f64>,
    pub visited_tight_sets: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
pub struct InitialVertex<T> {
    pub vertex: PolytopeVertex<T>,
    /// An objective for which `vertex` is optimal: a positive combination of
    /// its tight constraint normals.
    pub objective: Vector<T>,
    pub bases_examined: u64,
}

#[derive(Debug, Clone)]
pub enum PhaseOne<T> {
    Found(InitialVertex<T>),
    Infeasible { bases_examined: u64 },
}

#[derive(Debug, Clone)]
pub struct Solution<T> {
    pub status: LpStatus<T>,
    pub trace: PivotTrace<T>,
    pub phase1_bases_examined: u64,
}
