//! Dense matrices over `GF(q)` with Gaussian elimination.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::field::Field;
use crate::error::{Error, Result};

/// Row-major matrix over a small finite field.
#[derive(Clone)]
pub struct MatGF {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl PartialEq for MatGF {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
            && (Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field)
    }
}

impl Eq for MatGF {}

impl Hash for MatGF {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rows.hash(state);
        self.cols.hash(state);
        self.data.hash(state);
    }
}

impl fmt::Debug for MatGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatGF {}x{} over GF({})", self.rows, self.cols, self.field.order())?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Rank of GF(2) row vectors packed into machine words. Destroys the input.
pub(crate) fn rank_packed(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let pivot = rows[i];
        if pivot == 0 {
            continue;
        }
        rank += 1;
        let low = pivot & pivot.wrapping_neg();
        for row in rows[i + 1..].iter_mut() {
            if *row & low != 0 {
                *row ^= pivot;
            }
        }
    }
    rank
}

pub(crate) fn same_field(a: &Field, b: &Field) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl MatGF {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        MatGF { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_vec(field: &Field, rows: usize, cols: usize, data: Vec<u8>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {}x{} matrix",
                data.len(),
                rows,
                cols
            )));
        }
        if let Some(&bad) = data.iter().find(|&&v| !field.contains(v as u64)) {
            return Err(Error::ElementOutOfRange { value: bad as u64, q: field.order() });
        }
        Ok(MatGF { field: field.clone(), rows, cols, data })
    }

    pub fn from_rows<R: AsRef<[u8]>>(field: &Field, rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let data = rows.iter().flat_map(|r| r.as_ref().iter().copied()).collect();
        Self::from_vec(field, rows.len(), cols, data)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        debug_assert!(self.field.contains(v as u64));
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    /// Transpose about the anti-diagonal: entry `(r, c)` moves to
    /// `(cols - 1 - c, rows - 1 - r)`. Preserves rank and maps Ferrers
    /// diagrams to Ferrers diagrams.
    pub fn anti_transpose(&self) -> Self {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(self.cols - 1 - c, self.rows - 1 - r, self.get(r, c));
            }
        }
        t
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if !same_field(&self.field, &other.field) {
            return Err(Error::DimensionMismatch("matrices over different fields".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(other, 1)?;
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(other, self.field.neg(1))?;
        Ok(out)
    }

    pub fn scale(&self, s: u8) -> Self {
        let row = self.field.mul_row(s);
        let data = self.data.iter().map(|&v| row[v as usize]).collect();
        MatGF { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, other: &Self, s: u8) -> Result<()> {
        self.check_same_shape(other)?;
        self.add_scaled_unchecked(other, s);
        Ok(())
    }

    #[inline]
    pub(crate) fn add_scaled_unchecked(&mut self, other: &Self, s: u8) {
        if s == 0 {
            return;
        }
        let f = &self.field;
        if f.order() == 2 {
            for (a, &b) in self.data.iter_mut().zip(&other.data) {
                *a ^= b;
            }
            return;
        }
        let mrow = f.mul_row(s);
        for (a, &b) in self.data.iter_mut().zip(&other.data) {
            *a = f.add(*a, mrow[b as usize]);
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows || !same_field(&self.field, &other.field) {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                let mrow = f.mul_row(a);
                for c in 0..other.cols {
                    let idx = r * other.cols + c;
                    out.data[idx] = f.add(out.data[idx], mrow[other.get(k, c) as usize]);
                }
            }
        }
        Ok(out)
    }

    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows || !same_field(&self.field, &other.field) {
            return Err(Error::DimensionMismatch("hstack needs equal row counts".into()));
        }
        let mut out = Self::zeros(&self.field, self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            let dst = &mut out.data[r * out.cols..(r + 1) * out.cols];
            dst[..self.cols].copy_from_slice(self.row(r));
            dst[self.cols..].copy_from_slice(other.row(r));
        }
        Ok(out)
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols || !same_field(&self.field, &other.field) {
            return Err(Error::DimensionMismatch("vstack needs equal column counts".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(MatGF { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut out = Self::zeros(&self.field, self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.data[r * cols.len() + j] = self.get(r, c);
            }
        }
        out
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        let mut out = Self::zeros(&self.field, r1 - r0, c1 - c0);
        for r in r0..r1 {
            for c in c0..c1 {
                out.set(r - r0, c - c0, self.get(r, c));
            }
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn place(&mut self, block: &Self, r0: usize, c0: usize) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c));
            }
        }
    }

    fn packed_rows(&self) -> Option<Vec<u64>> {
        if self.field.order() != 2 || self.cols > 64 {
            return None;
        }
        Some(
            (0..self.rows)
                .map(|r| {
                    self.row(r)
                        .iter()
                        .enumerate()
                        .fold(0u64, |acc, (c, &v)| acc | ((v as u64) << c))
                })
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        if let Some(mut packed) = self.packed_rows() {
            return rank_packed(&mut packed);
        }
        self.rref().1.len()
    }

    /// Reduced row echelon form and pivot columns. Pivots are chosen as the
    /// leftmost column with a nonzero entry at or below the current row,
    /// taking the topmost such row.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub(crate) fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.data[r * cols + c]);
            if inv != 1 {
                let mrow = f.mul_row(inv);
                for j in c..cols {
                    self.data[r * cols + j] = mrow[self.data[r * cols + j] as usize];
                }
            }
            let pivot_row: Vec<u8> = self.data[r * cols..(r + 1) * cols].to_vec();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c];
                if factor == 0 {
                    continue;
                }
                let mrow = f.mul_row(f.neg(factor));
                for j in c..cols {
                    let v = self.data[i * cols + j];
                    self.data[i * cols + j] = f.add_row(v)[mrow[pivot_row[j] as usize] as usize];
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// True if the matrix is in reduced row echelon form with no zero rows.
    pub fn is_full_rank_rref(&self) -> bool {
        let mut last: Option<usize> = None;
        let mut pivots = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let Some(p) = self.row(r).iter().position(|&v| v != 0) else {
                return false;
            };
            if self.get(r, p) != 1 || last.is_some_and(|l| p <= l) {
                return false;
            }
            last = Some(p);
            pivots.push(p);
        }
        pivots.iter().enumerate().all(|(r, &c)| (0..self.rows).all(|i| i == r || self.get(i, c) == 0))
    }

    /// Basis of the right kernel `{x : self * x = 0}`, one vector per free
    /// column, in increasing free-column order.
    pub fn nullspace(&self) -> Vec<Vec<u8>> {
        let f = &self.field;
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut x = vec![0u8; self.cols];
                x[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    x[pc] = f.neg(m.get(r, fc));
                }
                x
            })
            .collect()
    }
}
