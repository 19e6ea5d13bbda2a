use alloc::vec::Vec;

use crate::error::{Error, Result};

use super::{Field, PrimeField};

/// Dense row-major matrix over a finite field.
///
/// Operators act on column vectors: column `j` holds the image of basis
/// vector `j`.
#[derive(Debug, Clone, PartialEq)]
pub struct FpMatrix<F: Field = PrimeField> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> FpMatrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let z = field.zero();
        Self {
            field,
            rows,
            cols,
            data: alloc::vec![z; rows * cols],
        }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        let one = m.field.one();
        for i in 0..n {
            m.set(i, i, one);
        }
        m
    }

    pub fn from_fn(field: F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { field, rows, cols, data }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(field: F, rows: usize, columns: &[Vec<F::Elem>]) -> Self {
        Self::from_fn(field, rows, columns.len(), |i, j| columns[j][i])
    }

    pub fn field(&self) -> &F {
        &self.field
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

    pub fn get(&self, i: usize, j: usize) -> F::Elem {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field.clone(), self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn scale(&self, lambda: F::Elem) -> Self {
        let mut out = self.clone();
        for x in out.data.iter_mut() {
            *x = self.field.mul(*x, lambda);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch("product"));
        }
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(l, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch("matrix-vector product"));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(f.zero(), |acc, j| f.add(acc, f.mul(self.get(i, j), v[j])))
            })
            .collect())
    }

    pub fn pow(&self, e: u64) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("power of a non-square matrix"));
        }
        let mut acc = Self::identity(self.field.clone(), self.rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Rank by Gaussian elimination on a copy.
    pub fn rank(&self) -> usize {
        let f = &self.field;
        let mut a = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pivot) = (rank..rows).find(|&r| !f.is_zero(a[r * cols + col])) else {
                continue;
            };
            for j in 0..cols {
                a.swap(pivot * cols + j, rank * cols + j);
            }
            let inv = f.inv(a[rank * cols + col]).expect("pivot is nonzero");
            for j in col..cols {
                a[rank * cols + j] = f.mul(a[rank * cols + j], inv);
            }
            for r in rank + 1..rows {
                let factor = a[r * cols + col];
                if f.is_zero(factor) {
                    continue;
                }
                for j in col..cols {
                    let v = f.mul(factor, a[rank * cols + j]);
                    a[r * cols + j] = f.sub(a[r * cols + j], v);
                }
            }
            rank += 1;
        }
        rank
    }

    /// `[rank(M^0), rank(M^1), ..., rank(M^e)]`.
    pub fn power_rank_profile(&self, e: usize) -> Result<Vec<usize>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("rank profile of a non-square matrix"));
        }
        let mut out = Vec::with_capacity(e + 1);
        let mut power = Self::identity(self.field.clone(), self.rows);
        out.push(self.rows);
        for _ in 0..e {
            power = power.mul(self)?;
            out.push(power.rank());
        }
        Ok(out)
    }
}

impl FpMatrix<PrimeField> {
    /// Convenience constructor reducing integer rows mod `p`.
    pub fn from_int_rows(field: PrimeField, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows"));
        }
        Ok(Self::from_fn(field, rows.len(), cols, |i, j| field.reduce(rows[i][j])))
    }
}
