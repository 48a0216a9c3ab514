//! Exact linear algebra over the rationals: an incremental reduced row
//! echelon form over sparse rows, and small dense matrices.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_traits::{One, Zero};

use crate::Q;

pub type SparseRow = BTreeMap<usize, Q>;

/// Incrementally maintained reduced row echelon form.
///
/// The pivot of each row is its smallest column; every stored row has a 1 at
/// its pivot and zeros at all other pivot columns.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    ncols: usize,
    rows: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ncols
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn row(&self, pivot: usize) -> Option<&SparseRow> {
        self.rows.get(&pivot)
    }

    /// Rows keyed by pivot column.
    pub fn rows(&self) -> impl Iterator<Item = (&usize, &SparseRow)> {
        self.rows.iter()
    }

    pub fn non_pivots(&self) -> Vec<usize> {
        (0..self.ncols)
            .filter(|c| !self.rows.contains_key(c))
            .collect()
    }

    /// Eliminates every pivot column from `row`.
    pub fn reduce(&self, row: &SparseRow) -> SparseRow {
        let mut out = row.clone();
        let hits: Vec<(usize, Q)> = row
            .iter()
            .filter(|(c, _)| self.rows.contains_key(c))
            .map(|(c, v)| (*c, v.clone()))
            .collect();
        for (p, factor) in hits {
            for (c, v) in &self.rows[&p] {
                axpy_entry(&mut out, *c, &(-&factor * v));
            }
        }
        out
    }

    /// Adds a row to the span; returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut r = self.reduce(&row);
        let Some((&p, lead)) = r.iter().next() else {
            return false;
        };
        if !lead.is_one() {
            let inv = lead.recip();
            for v in r.values_mut() {
                *v *= &inv;
            }
        }
        for existing in self.rows.values_mut() {
            if let Some(factor) = existing.get(&p).cloned() {
                for (c, v) in &r {
                    axpy_entry(existing, *c, &(-&factor * v));
                }
            }
        }
        self.rows.insert(p, r);
        true
    }
}

fn axpy_entry(row: &mut SparseRow, col: usize, delta: &Q) {
    if delta.is_zero() {
        return;
    }
    let entry = row.entry(col).or_insert_with(Q::zero);
    *entry += delta;
    if entry.is_zero() {
        row.remove(&col);
    }
}

/// A dense rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: &Q) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|v| v * k).collect(),
        }
    }

    pub fn to_rows(&self) -> Vec<Vec<Q>> {
        self.data
            .chunks(self.cols.max(1))
            .take(self.rows)
            .map(<[Q]>::to_vec)
            .collect()
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "shape mismatch"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.to_rows().iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", cells.join(", "))?;
        }
        write!(f, "]")
    }
}
