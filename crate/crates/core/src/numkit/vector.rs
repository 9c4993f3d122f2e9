use std::ops::Index;

use crate::error::{invalid, Result};
use crate::scalar::Real;

/// Dense real vector with finite entries and positive dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector<T> {
    entries: Vec<T>,
}

impl<T: Real> Vector<T> {
    pub fn new(entries: Vec<T>) -> Result<Self> {
        if entries.is_empty() {
            return Err(invalid("vector must have positive dimension"));
        }
        if let Some(k) = entries.iter().position(|v| !v.is_finite()) {
            return Err(invalid(format!("vector entry {k} is not finite")));
        }
        Ok(Self { entries })
    }

    /// Builds from `f64` values, converting to `T`.
    pub fn from_f64(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| T::lit(v)).collect())
    }

    /// Caller guarantees nonempty, finite entries.
    pub(crate) fn from_vec_unchecked(entries: Vec<T>) -> Self {
        debug_assert!(!entries.is_empty());
        Self { entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Self::from_vec_unchecked(vec![T::zero(); dim.max(1)])
    }

    /// The `k`-th standard basis vector of R^dim.
    pub fn unit(dim: usize, k: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.entries[k] = T::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<T> {
        self.entries
    }

    pub fn dot(&self, other: &Self) -> T {
        dot(&self.entries, &other.entries)
    }

    pub fn norm(&self) -> T {
        norm(&self.entries)
    }

    pub fn scaled(&self, c: T) -> Self {
        Self::from_vec_unchecked(self.entries.iter().map(|&v| v * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_vec_unchecked(
            self.entries.iter().zip(&other.entries).map(|(&a, &b)| a + b).collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_vec_unchecked(
            self.entries.iter().zip(&other.entries).map(|(&a, &b)| a - b).collect(),
        )
    }

    /// `self + c * other`
    pub fn axpy(&self, c: T, other: &Self) -> Self {
        Self::from_vec_unchecked(
            self.entries.iter().zip(&other.entries).map(|(&a, &b)| a + c * b).collect(),
        )
    }

    /// Unit vector in the same direction, or `None` for the zero vector.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        (n > T::zero()).then(|| self.scaled(T::one() / n))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(|v| v.to_f64_lossy()).collect()
    }
}

impl<T> Index<usize> for Vector<T> {
    type Output = T;

    fn index(&self, k: usize) -> &T {
        &self.entries[k]
    }
}

pub(crate) fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

/// Euclidean norm, scaled to avoid overflow/underflow.
pub(crate) fn norm<T: Real>(a: &[T]) -> T {
    let scale = a.iter().fold(T::zero(), |m, v| m.max(v.abs()));
    if scale == T::zero() {
        return T::zero();
    }
    let sum: T = a.iter().map(|&v| (v / scale) * (v / scale)).sum();
    scale * sum.sqrt()
}
