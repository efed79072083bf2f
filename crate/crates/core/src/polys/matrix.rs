use std::ops::{Index, IndexMut};

use super::field::PrimeField;
use crate::error::{Error, Result};

/// Dense row-major matrix over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatFp {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl MatFp {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        MatFp {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from signed integer rows, reducing mod p.
    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = field.from_i64(v);
            }
        }
        m
    }

    pub fn diagonal(field: PrimeField, diag: &[i64]) -> Self {
        let mut m = Self::zeros(field, diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = field.from_i64(d);
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
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

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn mul(&self, other: &MatFp) -> Result<MatFp> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] = f.add(out[(i, j)], f.mul(a, other[(k, j)]));
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &MatFp, op: impl Fn(u64, u64) -> u64) -> Result<MatFp> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| op(a, b)).collect();
        Ok(MatFp { data, ..self.clone() })
    }

    pub fn add(&self, other: &MatFp) -> Result<MatFp> {
        let f = self.field;
        self.zip_with(other, |a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &MatFp) -> Result<MatFp> {
        let f = self.field;
        self.zip_with(other, |a, b| f.sub(a, b))
    }

    /// Row echelon form in place; returns (rank, sign of the row permutation
    /// times the product of the pivots).
    fn eliminate(&mut self) -> (usize, u64) {
        let f = self.field;
        let mut rank = 0;
        let mut det = 1;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(piv) = (rank..self.rows).find(|&r| self[(r, col)] != 0) else {
                det = 0;
                continue;
            };
            if piv != rank {
                for j in 0..self.cols {
                    self.data.swap(piv * self.cols + j, rank * self.cols + j);
                }
                det = f.neg(det);
            }
            let p = self[(rank, col)];
            det = f.mul(det, p);
            let inv = f.inv(p);
            for r in rank + 1..self.rows {
                let factor = f.mul(self[(r, col)], inv);
                if factor == 0 {
                    continue;
                }
                for j in col..self.cols {
                    let v = f.mul(factor, self[(rank, j)]);
                    self[(r, j)] = f.sub(self[(r, j)], v);
                }
            }
            rank += 1;
        }
        (rank, det)
    }

    pub fn rank(&self) -> usize {
        self.clone().eliminate().0
    }

    pub fn determinant(&self) -> Result<u64> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let (rank, det) = self.clone().eliminate();
        Ok(if rank < self.rows { 0 } else { det })
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<MatFp> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "inverse of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let f = self.field;
        let mut a = self.clone();
        let mut inv = Self::identity(f, n);
        for col in 0..n {
            let piv = (col..n).find(|&r| a[(r, col)] != 0).ok_or(Error::Singular)?;
            for j in 0..n {
                a.data.swap(piv * n + j, col * n + j);
                inv.data.swap(piv * n + j, col * n + j);
            }
            let s = f.inv(a[(col, col)]);
            for j in 0..n {
                a[(col, j)] = f.mul(a[(col, j)], s);
                inv[(col, j)] = f.mul(inv[(col, j)], s);
            }
            for r in 0..n {
                if r == col || a[(r, col)] == 0 {
                    continue;
                }
                let factor = a[(r, col)];
                for j in 0..n {
                    let va = f.mul(factor, a[(col, j)]);
                    a[(r, j)] = f.sub(a[(r, j)], va);
                    let vi = f.mul(factor, inv[(col, j)]);
                    inv[(r, j)] = f.sub(inv[(r, j)], vi);
                }
            }
        }
        Ok(inv)
    }

    /// `M^T M = I`.
    pub fn is_orthogonal(&self) -> bool {
        self.is_square()
            && self
                .transpose()
                .mul(self)
                .is_ok_and(|p| p == Self::identity(self.field, self.rows))
    }
}

impl Index<(usize, usize)> for MatFp {
    type Output = u64;

    fn index(&self, (i, j): (usize, usize)) -> &u64 {
        assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for MatFp {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u64 {
        assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}
