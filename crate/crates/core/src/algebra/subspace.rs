//! Subspaces of `GF(q)^n` in canonical RREF form and the subspace distance.

use std::fmt;
use std::hash::{Hash, Hasher};

use super::field::Field;
use super::matrix::{rank_packed, same_field, MatGF};
use crate::error::{Error, Result};

/// A subspace stored as the RREF of a basis, without zero rows.
#[derive(Clone)]
pub struct Subspace {
    basis: MatGF,
    pivots: Vec<usize>,
    // Rows packed into words when q = 2 and n <= 64.
    packed: Option<Vec<u64>>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis
    }
}

impl Eq for Subspace {}

impl Hash for Subspace {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.basis.hash(state);
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) ", self.dim(), self.ambient())?;
        self.basis.fmt(f)
    }
}

impl Subspace {
    /// Row space of an arbitrary generator matrix.
    pub fn from_generator(gen: &MatGF) -> Self {
        let (mut r, pivots) = gen.rref();
        if pivots.len() < r.rows() {
            r = r.submatrix(0, pivots.len(), 0, r.cols());
        }
        Self::assemble(r, pivots)
    }

    /// Wraps a matrix that is already a full-rank RREF.
    pub fn from_rref(basis: MatGF) -> Result<Self> {
        if !basis.is_full_rank_rref() {
            return Err(Error::InvalidParameters("matrix is not a full-rank RREF".into()));
        }
        let pivots = (0..basis.rows())
            .map(|r| basis.row(r).iter().position(|&v| v != 0).unwrap())
            .collect();
        Ok(Self::assemble(basis, pivots))
    }

    /// Trusted constructor for an RREF built with known pivots.
    pub(crate) fn from_rref_parts(basis: MatGF, pivots: Vec<usize>) -> Self {
        debug_assert!(basis.is_full_rank_rref());
        Self::assemble(basis, pivots)
    }

    fn assemble(basis: MatGF, pivots: Vec<usize>) -> Self {
        let packed = (basis.field().order() == 2 && basis.cols() <= 64).then(|| {
            (0..basis.rows())
                .map(|r| basis.row(r).iter().enumerate().fold(0u64, |a, (c, &v)| a | ((v as u64) << c)))
                .collect()
        });
        Subspace { basis, pivots, packed }
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    /// Canonical RREF basis.
    pub fn basis(&self) -> &MatGF {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Binary vector with ones exactly at the pivot columns.
    pub fn identifying_vector(&self) -> Vec<u8> {
        let mut v = vec![0u8; self.ambient()];
        for &p in &self.pivots {
            v[p] = 1;
        }
        v
    }

    /// The `k x (n - k)` matrix of non-pivot columns of the RREF basis.
    pub fn pivot_free_submatrix(&self) -> MatGF {
        let cols: Vec<usize> = (0..self.ambient()).filter(|c| !self.pivots.contains(c)).collect();
        self.basis.select_columns(&cols)
    }

    /// `dim(U + V)`, with a word-packed path over GF(2).
    pub fn sum_dim(&self, other: &Subspace) -> usize {
        if let (Some(a), Some(b)) = (&self.packed, &other.packed) {
            let mut buf = [0u64; 128];
            let len = a.len() + b.len();
            if len <= buf.len() {
                buf[..a.len()].copy_from_slice(a);
                buf[a.len()..len].copy_from_slice(b);
                return rank_packed(&mut buf[..len]);
            }
        }
        self.basis.vstack(&other.basis).expect("checked ambient dimension").rank()
    }

    /// `d_S(U, V) = 2 dim(U + V) - dim U - dim V`. Panics if the ambient
    /// spaces differ.
    pub fn distance(&self, other: &Subspace) -> usize {
        assert_eq!(self.ambient(), other.ambient(), "subspaces of different ambient spaces");
        2 * self.sum_dim(other) - self.dim() - other.dim()
    }

    /// True if every row of `v` lies in this subspace.
    pub fn contains(&self, v: &MatGF) -> bool {
        v.cols() == self.ambient() && self.basis.vstack(v).map(|s| s.rank() == self.dim()).unwrap_or(false)
    }
}

/// Subspace distance, failing on mismatched ambient spaces or fields.
pub fn subspace_distance(u: &Subspace, v: &Subspace) -> Result<usize> {
    if u.ambient() != v.ambient() || !same_field(u.field(), v.field()) {
        return Err(Error::DimensionMismatch(format!(
            "ambient dimensions {} and {}",
            u.ambient(),
            v.ambient()
        )));
    }
    Ok(u.distance(v))
}
