//! Linear programs `max zᵀx s.t. a_iᵀx <= b_i`, brute-force vertex
//! enumeration, the brute-force optimum oracle, and exact shadow polygons.

mod bounds;
mod cone;
mod hull;
mod shadow;
mod vertices;

pub use bounds::{shadow_size_bound, SHADOW_SIZE_CONSTANT};
pub use cone::brute_force_optimum;
pub(crate) use cone::Reduction;
pub use hull::convex_hull;
pub use shadow::{shadow_polygon, shadow_polygon_of, ShadowPolygon};
pub use vertices::{
    binomial, degenerate_pairs, enumerate_vertices, enumerate_vertices_with_budget, DEFAULT_VERTEX_BUDGET,
};
pub(crate) use vertices::{basic_solution, check_budget, enumerate_raw};

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::numkit::Vector;
use crate::scalar::Real;

/// Absolute tolerance on constraint residuals (tightness and feasibility).
pub const FEASIBILITY_TOL: f64 = 1e-9;

/// Two vertices closer than this are reported as degenerate.
pub const COINCIDENCE_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram<T> {
    rows: Vec<Vector<T>>,
    rhs: Vec<T>,
    objective: Vector<T>,
}

impl<T: Real> LinearProgram<T> {
    pub fn new(rows: Vec<Vector<T>>, rhs: Vec<T>, objective: Vector<T>) -> Result<Self> {
        if rows.is_empty() {
            return Err(invalid("linear program needs at least one constraint"));
        }
        if rows.len() != rhs.len() {
            return Err(invalid(format!("{} constraint rows but {} right-hand sides", rows.len(), rhs.len())));
        }
        let d = objective.dim();
        if let Some(i) = rows.iter().position(|r| r.dim() != d) {
            return Err(invalid(format!("row {i} has dimension {} but the objective has {d}", rows[i].dim())));
        }
        if rhs.iter().any(|b| !b.is_finite()) {
            return Err(invalid("right-hand side is not finite"));
        }
        Ok(Self { rows, rhs, objective })
    }

    /// `{x : a_iᵀx <= 1}` with the given objective.
    pub fn unit_rhs(rows: Vec<Vector<T>>, objective: Vector<T>) -> Result<Self> {
        let n = rows.len();
        Self::new(rows, vec![T::one(); n], objective)
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn d(&self) -> usize {
        self.objective.dim()
    }

    pub fn rows(&self) -> &[Vector<T>] {
        &self.rows
    }

    pub fn rhs(&self) -> &[T] {
        &self.rhs
    }

    pub fn objective(&self) -> &Vector<T> {
        &self.objective
    }

    pub fn with_objective(&self, objective: Vector<T>) -> Result<Self> {
        Self::new(self.rows.clone(), self.rhs.clone(), objective)
    }

    /// `b_i - a_iᵀx` for every constraint.
    pub fn slacks(&self, x: &Vector<T>) -> Vec<T> {
        self.rows.iter().zip(&self.rhs).map(|(a, &b)| b - a.dot(x)).collect()
    }

    pub fn is_feasible(&self, x: &Vector<T>) -> bool {
        let tol = T::tolerance(FEASIBILITY_TOL);
        self.slacks(x).iter().all(|&s| s >= -tol)
    }

    /// Parses the plain-text fixture format: a line `n d`, then `n` lines of
    /// `d + 1` numbers (`a_i` then `b_i`), then one line of `d` numbers (`z`).
    /// Blank lines and lines starting with `#` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (line, header) = lines.next().ok_or(Error::Parse { line: 0, msg: "empty input".into() })?;
        let dims = parse_numbers::<f64>(header, line)?;
        let [n, d] = dims[..] else {
            return Err(Error::Parse { line, msg: "header must be `n d`".into() });
        };
        let (n, d) = (as_count(n, line)?, as_count(d, line)?);
        let mut rows = Vec::with_capacity(n);
        let mut rhs = Vec::with_capacity(n);
        for _ in 0..n {
            let (line, l) = lines.next().ok_or(Error::Parse { line: 0, msg: "missing constraint rows".into() })?;
            let mut vals = parse_numbers::<T>(l, line)?;
            if vals.len() != d + 1 {
                return Err(Error::Parse { line, msg: format!("expected {} numbers, got {}", d + 1, vals.len()) });
            }
            rhs.push(vals.pop().expect("nonempty"));
            rows.push(Vector::new(vals).map_err(|e| Error::Parse { line, msg: e.to_string() })?);
        }
        let (line, l) = lines.next().ok_or(Error::Parse { line: 0, msg: "missing objective line".into() })?;
        let z = parse_numbers::<T>(l, line)?;
        if z.len() != d {
            return Err(Error::Parse { line, msg: format!("objective needs {d} numbers, got {}", z.len()) });
        }
        if let Some((line, _)) = lines.next() {
            return Err(Error::Parse { line, msg: "trailing content".into() });
        }
        Self::new(rows, rhs, Vector::new(z)?)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.d());
        for (a, b) in self.rows.iter().zip(&self.rhs) {
            let mut first = true;
            for v in a.entries().iter().chain(std::iter::once(b)) {
                if !first {
                    out.push(' ');
                }
                first = false;
                let _ = write!(out, "{v}");
            }
            out.push('\n');
        }
        let z: Vec<String> = self.objective.entries().iter().map(|v| v.to_string()).collect();
        out.push_str(&z.join(" "));
        out.push('\n');
        out
    }
}

pub(crate) fn parse_numbers<T: Real>(line: &str, line_no: usize) -> Result<Vec<T>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse::<f64>()
                .map(T::lit)
                .map_err(|_| Error::Parse { line: line_no, msg: format!("not a number: {tok:?}") })
        })
        .collect()
}

pub(crate) fn as_count(v: f64, line: usize) -> Result<usize> {
    if v >= 1.0 && v.fract() == 0.0 && v < 1e9 {
        Ok(v as usize)
    } else {
        Err(Error::Parse { line, msg: format!("expected a positive integer, got {v}") })
    }
}

/// A basic feasible solution: `d` linearly independent tight constraints.
#[derive(Debug, Clone, PartialEq)]
pub struct PolytopeVertex<T> {
    pub point: Vector<T>,
    /// Sorted constraint indices.
    pub tight_set: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatusKind {
    Optimal,
    Unbounded,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpStatus<T> {
    Optimal { vertex: PolytopeVertex<T>, value: T },
    /// `ray` is a feasible direction of unbounded improvement.
    Unbounded { ray: Vector<T> },
    Infeasible,
}

impl<T: Real> LpStatus<T> {
    pub fn kind(&self) -> StatusKind {
        match self {
            LpStatus::Optimal { .. } => StatusKind::Optimal,
            LpStatus::Unbounded { .. } => StatusKind::Unbounded,
            LpStatus::Infeasible => StatusKind::Infeasible,
        }
    }

    pub fn value(&self) -> Option<T> {
        match self {
            LpStatus::Optimal { value, .. } => Some(*value),
            _ => None,
        }
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn vec2(x: f64, y: f64) -> Vector<f64> {
        Vector::new(vec![x, y]).unwrap()
    }

    /// `|x_k| <= 1` in R^d, rows ordered `+e_1, -e_1, +e_2, -e_2, ...`.
    pub fn cube(d: usize, objective: Vec<f64>) -> LinearProgram<f64> {
        let mut rows = Vec::new();
        for k in 0..d {
            rows.push(Vector::unit(d, k));
            rows.push(Vector::unit(d, k).scaled(-1.0));
        }
        LinearProgram::unit_rhs(rows, Vector::new(objective).unwrap()).unwrap()
    }
}
