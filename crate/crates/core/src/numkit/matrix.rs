use crate::error::{invalid, Result};
use crate::scalar::Real;

use super::Vector;

/// Dense row-major real matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Real> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(invalid("matrix dimensions must be positive"));
        }
        if rows * cols != data.len() {
            return Err(invalid(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(k) = data.iter().position(|v| !v.is_finite()) {
            return Err(invalid(format!(
                "matrix entry ({}, {}) is not finite",
                k / cols,
                k % cols
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(invalid("ragged rows"));
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    pub fn from_f64_rows(rows: &[&[f64]]) -> Result<Self> {
        let rows: Vec<Vec<T>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| T::lit(v)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vector<T>]) -> Result<Self> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vector::dim);
        if columns.iter().any(|c| c.dim() != rows) {
            return Err(invalid("columns have different dimensions"));
        }
        if cols == 0 {
            return Err(invalid("no columns"));
        }
        let mut data = vec![T::zero(); rows * cols];
        for (j, c) in columns.iter().enumerate() {
            for (i, &v) in c.entries().iter().enumerate() {
                data[i * cols + j] = v;
            }
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows: rows.max(1), cols: cols.max(1), data: vec![T::zero(); rows.max(1) * cols.max(1)] }
    }

    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        let mut m = Self::zeros(rows, cols);
        m.data.iter_mut().for_each(|v| *v = value);
        m
    }

    pub fn identity(d: usize) -> Self {
        Self::diagonal(&vec![T::one(); d.max(1)])
    }

    pub fn diagonal(values: &[T]) -> Self {
        let d = values.len().max(1);
        let mut m = Self::zeros(d, d);
        for (k, &v) in values.iter().enumerate() {
            m.data[k * d + k] = v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> Vector<T> {
        Vector::from_vec_unchecked(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn column(&self, j: usize) -> Vector<T> {
        Vector::from_vec_unchecked((0..self.rows).map(|i| self.get(i, j)).collect())
    }

    pub fn columns(&self) -> Vec<Vector<T>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j));
            }
        }
        Self { rows: self.cols, cols: self.rows, data }
    }

    pub fn scaled(&self, c: T) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&v| v * c).collect() }
    }

    pub fn mul_vec(&self, x: &Vector<T>) -> Result<Vector<T>> {
        if x.dim() != self.cols {
            return Err(invalid("dimension mismatch in matrix-vector product"));
        }
        Ok(Vector::from_vec_unchecked(
            (0..self.rows)
                .map(|i| super::vector::dot(&self.data[i * self.cols..(i + 1) * self.cols], x.entries()))
                .collect(),
        ))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(invalid("dimension mismatch in matrix product"));
        }
        let mut data = vec![T::zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                for j in 0..other.cols {
                    data[i * other.cols + j] = data[i * other.cols + j] + a * other.get(k, j);
                }
            }
        }
        Ok(Self { rows: self.rows, cols: other.cols, data })
    }

    /// Same matrix with columns reordered: column `k` of the result is column
    /// `perm[k]` of `self`.
    pub fn permute_columns(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.cols {
            return Err(invalid("permutation length mismatch"));
        }
        let cols: Vec<Vector<T>> = perm.iter().map(|&j| self.column(j)).collect();
        Self::from_columns(&cols)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(invalid("shape mismatch in matrix sum"));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect(),
        })
    }

    pub(crate) fn from_raw(rows: usize, cols: usize, data: Vec<T>) -> Self {
        debug_assert_eq!(rows * cols, data.len());
        Self { rows, cols, data }
    }
}
