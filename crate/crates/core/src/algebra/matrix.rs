use std::collections::BTreeMap;

use super::poly::NCPoly;
use super::scalar::Scalar;
use super::var::{same_table, TableRef};
use crate::error::{Error, Result};

/// Square matrix over the free algebra. Storage is row-sparse; absent entries
/// are zero. Products multiply the left factor's entry on the left.
#[derive(Clone, Debug)]
pub struct PolyMatrix {
    dim: usize,
    table: TableRef,
    rows: Vec<BTreeMap<usize, NCPoly>>,
}

impl PolyMatrix {
    pub fn zero(dim: usize, table: &TableRef) -> Self {
        PolyMatrix {
            dim,
            table: table.clone(),
            rows: vec![BTreeMap::new(); dim],
        }
    }

    pub fn identity(dim: usize, table: &TableRef) -> Self {
        let mut m = Self::zero(dim, table);
        for i in 0..dim {
            m.set(i, i, NCPoly::one(table));
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn table(&self) -> &TableRef {
        &self.table
    }

    pub fn get(&self, i: usize, j: usize) -> NCPoly {
        self.rows[i]
            .get(&j)
            .cloned()
            .unwrap_or_else(|| NCPoly::zero(&self.table))
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&NCPoly> {
        self.rows[i].get(&j)
    }

    pub fn set(&mut self, i: usize, j: usize, p: NCPoly) {
        assert!(i < self.dim && j < self.dim, "index out of range");
        if p.is_zero() {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, p);
        }
    }

    /// Adds `p` into entry (i, j).
    pub fn accumulate(&mut self, i: usize, j: usize, p: &NCPoly) {
        match self.rows[i].get_mut(&j) {
            Some(e) => {
                e.add_assign_unchecked(p);
                if e.is_zero() {
                    self.rows[i].remove(&j);
                }
            }
            None if !p.is_zero() => {
                self.rows[i].insert(j, p.clone());
            }
            None => {}
        }
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, &NCPoly)> {
        self.rows[i].iter().map(|(j, p)| (*j, p))
    }

    /// Nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &NCPoly)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, p)| (i, *j, p)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    /// Largest degree of any entry (-1 for the zero matrix).
    pub fn max_entry_degree(&self) -> i64 {
        self.entries().map(|(_, _, p)| p.degree()).max().unwrap_or(-1)
    }

    fn check(&self, other: &PolyMatrix) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        if !same_table(&self.table, &other.table) {
            return Err(Error::TableMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.check(other)?;
        let mut out = self.clone();
        for (i, j, p) in other.entries() {
            out.accumulate(i, j, p);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        self.check(other)?;
        let mut out = PolyMatrix::zero(self.dim, &self.table);
        for (i, row) in self.rows.iter().enumerate() {
            for (k, a) in row {
                for (j, b) in &other.rows[*k] {
                    out.accumulate(i, *j, &a.mul_unchecked(b));
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> PolyMatrix {
        let mut out = PolyMatrix::zero(self.dim, &self.table);
        for (i, j, p) in self.entries() {
            out.set(i, j, p.scale(c));
        }
        out
    }

    /// Left-multiplies every entry by a polynomial: entry -> p * entry.
    pub fn left_mul_poly(&self, p: &NCPoly) -> PolyMatrix {
        let mut out = PolyMatrix::zero(self.dim, &self.table);
        for (i, j, e) in self.entries() {
            out.set(i, j, p.mul_unchecked(e));
        }
        out
    }
}

impl PartialEq for PolyMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && same_table(&self.table, &other.table) && self.rows == other.rows
    }
}

pub fn mat_mul(a: &PolyMatrix, b: &PolyMatrix) -> Result<PolyMatrix> {
    a.mul(b)
}

pub fn mat_add(a: &PolyMatrix, b: &PolyMatrix) -> Result<PolyMatrix> {
    a.add(b)
}

pub fn mat_scale(a: &PolyMatrix, c: &Scalar) -> PolyMatrix {
    a.scale(c)
}

/// Dense rectangular scalar matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<Scalar>>,
}

impl ScalarMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ScalarMatrix {
            rows,
            cols,
            data: vec![vec![Scalar::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(data: Vec<Vec<Scalar>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, Vec::len);
        assert!(data.iter().all(|r| r.len() == cols), "ragged rows");
        ScalarMatrix { rows, cols, data }
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i][j] = v;
    }

    pub fn mul(&self, other: &ScalarMatrix) -> Result<ScalarMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(self.cols, other.rows));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] = &out.data[i][j] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        exact_rank(self)
    }
}

/// Rank over the coefficient field by Gaussian elimination with exact pivots.
pub fn exact_rank(m: &ScalarMatrix) -> usize {
    let mut a = m.data.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        let inv = a[rank][col].inverse().expect("nonzero pivot");
        let (top, below) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in below.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] * &inv;
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if p.is_zero() {
                    continue;
                }
                *x = &*x - &(&factor * p);
            }
        }
        rank += 1;
    }
    rank
}
