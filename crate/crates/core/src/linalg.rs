//! Dense vectors and small-matrix helpers.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Deref, Index, Mul, Neg, Sub};


use crate::{Error, Result};

/// Dense column-major matrix (linear maps `T`, Auerbach bases).
pub type Matrix = nalgebra::DMatrix<f64>;

/// A point or functional in `R^n`, stored densely.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Vector(Vec<f64>);

impl Vector {
    /// Builds a vector, rejecting NaN and infinite coordinates.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.iter().all(|c| c.is_finite()) {
            Ok(Vector(coords))
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![0.0; dim])
    }

    /// `k`-th canonical basis vector of `R^dim`.
    pub fn basis(dim: usize, k: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[k] = 1.0;
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn coords_mut(&mut self) -> &mut [f64] {
        &mut self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.is_finite())
    }

    pub fn dot(&self, other: &Vector) -> f64 {
        dot(&self.0, &other.0)
    }

    pub fn scale(&self, alpha: f64) -> Vector {
        Vector(self.0.iter().map(|c| alpha * c).collect())
    }

    pub fn euclidean_norm(&self) -> f64 {
        dot(&self.0, &self.0).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// `self + alpha * other`.
    pub fn axpy(&self, alpha: f64, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + alpha * b).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0.0)
    }

    pub(crate) fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() == expected {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected, found: self.dim() })
        }
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl From<Vec<f64>> for Vector {
    fn from(coords: Vec<f64>) -> Self {
        Vector(coords)
    }
}

impl From<&[f64]> for Vector {
    fn from(coords: &[f64]) -> Self {
        Vector(coords.to_vec())
    }
}

impl<const N: usize> From<[f64; N]> for Vector {
    fn from(coords: [f64; N]) -> Self {
        Vector(coords.to_vec())
    }
}

impl Deref for Vector {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl Index<usize> for Vector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

impl Add for &Vector {
    type Output = Vector;

    fn add(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;

    fn sub(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Vector {
    type Output = Vector;

    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|c| -c).collect())
    }
}

impl Mul<f64> for &Vector {
    type Output = Vector;

    fn mul(self, rhs: f64) -> Vector {
        self.scale(rhs)
    }
}

/// Matrix whose columns are the given vectors.
pub fn from_columns(columns: &[Vector]) -> Matrix {
    let rows = columns.first().map_or(0, Vector::dim);
    Matrix::from_fn(rows, columns.len(), |i, j| columns[j][i])
}

pub fn column(m: &Matrix, j: usize) -> Vector {
    Vector(m.column(j).iter().copied().collect())
}

pub fn row(m: &Matrix, i: usize) -> Vector {
    Vector(m.row(i).iter().copied().collect())
}

pub fn mat_vec(m: &Matrix, v: &Vector) -> Vector {
    Vector((0..m.nrows()).map(|i| (0..m.ncols()).map(|j| m[(i, j)] * v[j]).sum()).collect())
}

/// `m^T v`.
pub fn mat_t_vec(m: &Matrix, v: &Vector) -> Vector {
    Vector((0..m.ncols()).map(|j| (0..m.nrows()).map(|i| m[(i, j)] * v[i]).sum()).collect())
}

/// Numerical rank of the matrix whose rows are `rows`.
pub fn rank(rows: &[Vector], dim: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let m = Matrix::from_fn(rows.len(), dim, |i, j| rows[i][j]);
    let scale = m.amax().max(1.0);
    m.rank(1e-10 * scale)
}

/// Inverse via LU with partial pivoting; `None` when a pivot vanishes.
pub fn inverse(m: &Matrix) -> Option<Matrix> {
    if !m.is_square() {
        return None;
    }
    let lu = m.clone().lu();
    let u = lu.u();
    let scale = m.amax().max(f64::MIN_POSITIVE);
    if (0..u.nrows()).any(|i| u[(i, i)].abs() <= 1e-14 * scale) {
        return None;
    }
    lu.try_inverse()
}
