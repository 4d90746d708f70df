//! Dense exact vectors and matrices.

use std::ops::Index;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector<T>(Vec<T>);

impl<T: Scalar> Vector<T> {
    pub fn new(entries: Vec<T>) -> Self {
        Self(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![T::zero(); dim])
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[axis] = T::one();
        v
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        Self(entries.iter().map(|&x| T::from_int(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[T] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<T> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.0.iter()
    }

    pub fn dot(&self, other: &Self) -> T {
        debug_assert_eq!(self.dim(), other.dim());
        let mut acc = T::zero();
        for (a, b) in self.0.iter().zip(&other.0) {
            if !a.is_zero() && !b.is_zero() {
                acc = acc + a.mul_ref(b);
            }
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a.add_ref(b)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a.sub_ref(b)).collect())
    }

    pub fn scale(&self, factor: &T) -> Self {
        Self(self.0.iter().map(|a| a.mul_ref(factor)).collect())
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|a| -a.clone()).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Concatenation `(self, other)`.
    pub fn concat(&self, other: &Self) -> Self {
        Self(self.0.iter().chain(&other.0).cloned().collect())
    }
}

impl<T> Index<usize> for Vector<T> {
    type Output = T;

    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

impl<T> FromIterator<T> for Vector<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl<'a, T> IntoIterator for &'a Vector<T> {
    type Item = &'a T;
    type IntoIter = std::slice::Iter<'a, T>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    nrows: usize,
    ncols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self { nrows, ncols, data: vec![T::zero(); nrows * ncols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    /// Builds a matrix from rows; `ncols` is needed for the zero-row case.
    pub fn from_rows(ncols: usize, rows: Vec<Vector<T>>) -> Result<Self> {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.dim() != ncols {
                return Err(Error::DimensionMismatch { expected: ncols, found: row.dim() });
            }
            data.extend(row.0);
        }
        Ok(Self { nrows, ncols, data })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let rows = rows.iter().map(|r| Vector::from_ints(r)).collect();
        Self::from_rows(ncols, rows).expect("rectangular integer matrix")
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(nrows: usize, cols: &[Vector<T>]) -> Result<Self> {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            if c.dim() != nrows {
                return Err(Error::DimensionMismatch { expected: nrows, found: c.dim() });
            }
            for i in 0..nrows {
                m.set(i, j, c[i].clone());
            }
        }
        Ok(m)
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.ncols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.ncols + j] = value;
    }

    pub fn row(&self, i: usize) -> Vector<T> {
        Vector(self.data[i * self.ncols..(i + 1) * self.ncols].to_vec())
    }

    pub fn row_slice(&self, i: usize) -> &[T] {
        &self.data[i * self.ncols..(i + 1) * self.ncols]
    }

    pub fn column(&self, j: usize) -> Vector<T> {
        (0..self.nrows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn rows(&self) -> impl Iterator<Item = Vector<T>> + '_ {
        (0..self.nrows).map(|i| self.row(i))
    }

    pub fn columns(&self) -> impl Iterator<Item = Vector<T>> + '_ {
        (0..self.ncols).map(|j| self.column(j))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ncols, self.nrows);
        for i in 0..self.nrows {
            for j in 0..self.ncols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &Vector<T>) -> Result<Vector<T>> {
        if v.dim() != self.ncols {
            return Err(Error::DimensionMismatch { expected: self.ncols, found: v.dim() });
        }
        Ok((0..self.nrows).map(|i| self.row(i).dot(v)).collect())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if other.nrows != self.ncols {
            return Err(Error::DimensionMismatch { expected: self.ncols, found: other.nrows });
        }
        let mut out = Self::zeros(self.nrows, other.ncols);
        for i in 0..self.nrows {
            for k in 0..self.ncols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.ncols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let cur = out.get(i, j).add_ref(&a.mul_ref(b));
                        out.set(i, j, cur);
                    }
                }
            }
        }
        Ok(out)
    }

    fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.nrows).map(|i| self.row_slice(i).to_vec()).collect()
    }

    /// Rank over the field, by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let mut rows = self.to_rows();
        bareiss_forward(&mut rows, self.ncols).len()
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> Result<T> {
        if self.nrows != self.ncols {
            return Err(Error::DimensionMismatch { expected: self.nrows, found: self.ncols });
        }
        let n = self.nrows;
        if n == 0 {
            return Ok(T::one());
        }
        let mut rows = self.to_rows();
        let mut sign = T::one();
        let mut prev = T::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !rows[i][k].is_zero()) else {
                return Ok(T::zero());
            };
            if p != k {
                rows.swap(p, k);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let mut v = rows[i][j].mul_ref(&rows[k][k]);
                    v.sub_mul_assign(&rows[i][k], &rows[k][j]);
                    rows[i][j] = v.div_ref(&prev);
                }
                rows[i][k] = T::zero();
            }
            prev = rows[k][k].clone();
        }
        Ok(sign * rows[n - 1][n - 1].clone())
    }

    /// Unique solution of the square system `self * x = rhs`, or `None` when
    /// the matrix is singular.
    pub fn solve(&self, rhs: &Vector<T>) -> Result<Option<Vector<T>>> {
        if self.nrows != self.ncols {
            return Err(Error::DimensionMismatch { expected: self.nrows, found: self.ncols });
        }
        if rhs.dim() != self.nrows {
            return Err(Error::DimensionMismatch { expected: self.nrows, found: rhs.dim() });
        }
        let n = self.nrows;
        let mut rows: Vec<Vec<T>> = (0..n)
            .map(|i| {
                let mut r = self.row_slice(i).to_vec();
                r.push(rhs[i].clone());
                r
            })
            .collect();
        let pivots = bareiss_forward(&mut rows, n);
        if pivots.len() < n {
            return Ok(None);
        }
        // upper triangular with pivots on the diagonal
        let mut x = vec![T::zero(); n];
        for i in (0..n).rev() {
            let mut acc = rows[i][n].clone();
            for j in i + 1..n {
                acc.sub_mul_assign(&rows[i][j], &x[j]);
            }
            x[i] = acc.div_ref(&rows[i][i]);
        }
        Ok(Some(Vector(x)))
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut rows = self.to_rows();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == self.nrows {
                break;
            }
            let Some(p) = (r..self.nrows).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(p, r);
            let inv = T::one().div_ref(&rows[r][c]);
            for v in rows[r].iter_mut() {
                *v = v.mul_ref(&inv);
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    v.sub_mul_assign(&f, p);
                }
            }
            pivots.push(c);
            r += 1;
        }
        let data = rows.into_iter().flatten().collect();
        (Self { nrows: self.nrows, ncols: self.ncols, data }, pivots)
    }

    /// Basis of the null space as the columns of an `n x (n - d)` matrix.
    ///
    /// Requires full row rank `d < n`. Basis vectors come from the free
    /// columns of the reduced row echelon form, so a coordinate projection
    /// yields the complementary unit vectors.
    pub fn kernel_basis(&self) -> Result<Self> {
        let (d, n) = (self.nrows, self.ncols);
        let (r, pivots) = self.rref();
        if pivots.len() < d {
            return Err(Error::RankDeficient { rank: pivots.len(), expected: d });
        }
        if d >= n {
            return Err(Error::InvalidInput(format!(
                "kernel basis needs fewer rows than columns ({d} x {n})"
            )));
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(n, free.len());
        for (col, &f) in free.iter().enumerate() {
            k.set(f, col, T::one());
            for (row, &p) in pivots.iter().enumerate() {
                k.set(p, col, -r.get(row, f).clone());
            }
        }
        Ok(k)
    }
}

/// Bareiss forward elimination in place on the first `ncols` columns (any
/// extra columns are carried along). Returns the pivot columns; the rows are
/// reordered so that pivot `i` sits in row `i`.
fn bareiss_forward<T: Scalar>(rows: &mut [Vec<T>], ncols: usize) -> Vec<usize> {
    let nrows = rows.len();
    let width = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut prev = T::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(p, r);
        for i in r + 1..nrows {
            for j in c + 1..width {
                let mut v = rows[i][j].mul_ref(&rows[r][c]);
                v.sub_mul_assign(&rows[i][c], &rows[r][j]);
                rows[i][j] = v.div_ref(&prev);
            }
            rows[i][c] = T::zero();
        }
        prev = rows[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    pivots
}
