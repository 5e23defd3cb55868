//! Extension fields `GF(q^m)` as vector spaces over `GF(q)`.
//!
//! An element is a `u64` whose base-`q` digits are its coefficients in the
//! polynomial basis `1, x, ..., x^{m-1}`, constant term least significant.

use super::field::Field;
use super::matrix::MatGF;
use super::poly;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct ExtField {
    base: Field,
    m: usize,
    size: u64,
    modulus: Vec<u8>,
    basis: Vec<u64>,
    // Maps polynomial coordinates to basis coordinates; `None` for the
    // polynomial basis itself.
    to_basis: Option<MatGF>,
}

impl ExtField {
    /// `GF(q^m)` with the lexicographically smallest monic irreducible
    /// modulus of degree `m` over the base field.
    pub fn new(base: &Field, m: usize) -> Result<Self> {
        let size = Self::checked_size(base, m)?;
        let modulus = poly::smallest_irreducible(base, m);
        Ok(Self::assemble(base, m, size, modulus))
    }

    pub fn with_modulus(base: &Field, modulus: &[u8]) -> Result<Self> {
        let m = modulus.len().saturating_sub(1);
        let size = Self::checked_size(base, m)?;
        if modulus.iter().any(|&c| !base.contains(c as u64)) || !poly::is_irreducible(base, modulus) {
            return Err(Error::NotIrreducible(m));
        }
        Ok(Self::assemble(base, m, size, modulus.to_vec()))
    }

    fn checked_size(base: &Field, m: usize) -> Result<u64> {
        let q = base.order();
        if m == 0 {
            return Err(Error::InvalidParameters("extension degree must be positive".into()));
        }
        match (q as u64).checked_pow(m as u32) {
            Some(s) if s < (1u64 << 62) => Ok(s),
            _ => Err(Error::ExtensionTooLarge { q, m }),
        }
    }

    fn assemble(base: &Field, m: usize, size: u64, modulus: Vec<u8>) -> Self {
        let q = base.order() as u64;
        let basis = (0..m).map(|i| q.pow(i as u32)).collect();
        ExtField { base: base.clone(), m, size, modulus, basis, to_basis: None }
    }

    /// Replaces the coordinate basis used by [`psi`](Self::psi).
    pub fn with_basis(mut self, basis: &[u64]) -> Result<Self> {
        if basis.len() != self.m {
            return Err(Error::DimensionMismatch(format!(
                "basis has {} elements, degree is {}",
                basis.len(),
                self.m
            )));
        }
        self.check_all(basis)?;
        let mut cols = MatGF::zeros(&self.base, self.m, self.m);
        for (j, &b) in basis.iter().enumerate() {
            for (i, d) in self.digits(b).into_iter().enumerate() {
                cols.set(i, j, d);
            }
        }
        let aug = cols.hstack(&MatGF::identity(&self.base, self.m))?;
        let (r, pivots) = aug.rref();
        if pivots.len() < self.m || pivots[self.m - 1] >= self.m {
            return Err(Error::DependentPoints);
        }
        self.to_basis = Some(r.submatrix(0, self.m, self.m, 2 * self.m));
        self.basis = basis.to_vec();
        Ok(self)
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    pub fn basis(&self) -> &[u64] {
        &self.basis
    }

    pub fn check(&self, a: u64) -> Result<u64> {
        if a < self.size {
            Ok(a)
        } else {
            Err(Error::ElementOutOfRange { value: a, q: self.base.order() })
        }
    }

    fn check_all(&self, xs: &[u64]) -> Result<()> {
        xs.iter().try_for_each(|&x| self.check(x).map(|_| ()))
    }

    /// Polynomial-basis coordinates of `a`.
    pub fn digits(&self, mut a: u64) -> Vec<u8> {
        let q = self.base.order() as u64;
        (0..self.m)
            .map(|_| {
                let d = (a % q) as u8;
                a /= q;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, ds: &[u8]) -> u64 {
        let q = self.base.order() as u64;
        ds.iter().rev().fold(0u64, |acc, &d| acc * q + d as u64)
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let f = &self.base;
        let ds: Vec<u8> = self.digits(a).iter().zip(self.digits(b)).map(|(&x, y)| f.add(x, y)).collect();
        self.from_digits(&ds)
    }

    pub fn neg(&self, a: u64) -> u64 {
        let ds: Vec<u8> = self.digits(a).iter().map(|&x| self.base.neg(x)).collect();
        self.from_digits(&ds)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    /// Multiplication by a base-field scalar.
    pub fn scale(&self, s: u8, a: u64) -> u64 {
        let ds: Vec<u8> = self.digits(a).iter().map(|&x| self.base.mul(s, x)).collect();
        self.from_digits(&ds)
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let f = &self.base;
        let prod = poly::mul(f, &poly::trim(self.digits(a)), &poly::trim(self.digits(b)));
        let r = poly::rem(f, &prod, &self.modulus);
        let mut ds = r;
        ds.resize(self.m, 0);
        self.from_digits(&ds)
    }

    pub fn pow(&self, a: u64, mut k: u64) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        self.pow(a, self.size - 2)
    }

    /// `a^(q^i)`, computed by `i` successive `q`-th powers.
    pub fn frobenius_power(&self, a: u64, i: usize) -> u64 {
        let q = self.base.order() as u64;
        (0..i).fold(a, |x, _| self.pow(x, q))
    }

    /// Coordinates of `a` in the current basis.
    pub fn coords(&self, a: u64) -> Vec<u8> {
        let ds = self.digits(a);
        match &self.to_basis {
            None => ds,
            Some(t) => {
                let col = MatGF::from_vec(&self.base, self.m, 1, ds).expect("digits are in range");
                t.mul(&col).expect("square change of basis").data().to_vec()
            }
        }
    }

    /// The `m x n` matrix whose column `j` holds the coordinates of `v[j]`.
    pub fn psi(&self, v: &[u64]) -> Result<MatGF> {
        self.check_all(v)?;
        let mut out = MatGF::zeros(&self.base, self.m, v.len());
        for (j, &x) in v.iter().enumerate() {
            for (i, c) in self.coords(x).into_iter().enumerate() {
                out.set(i, j, c);
            }
        }
        Ok(out)
    }

    /// Inverse of [`psi`](Self::psi).
    pub fn psi_inverse(&self, a: &MatGF) -> Result<Vec<u64>> {
        if a.rows() != self.m {
            return Err(Error::DimensionMismatch(format!("expected {} rows, got {}", self.m, a.rows())));
        }
        Ok((0..a.cols())
            .map(|j| {
                (0..self.m).fold(0u64, |acc, i| self.add(acc, self.scale(a.get(i, j), self.basis[i])))
            })
            .collect())
    }

    /// Rank over the base field of the span of `v`.
    pub fn rank_over_base(&self, v: &[u64]) -> Result<usize> {
        Ok(self.psi(v)?.rank())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteField;

    fn gf16() -> ExtField {
        ExtField::new(&FiniteField::new(2).unwrap(), 4).unwrap()
    }

    #[test]
    fn gf16_modulus_and_frobenius() {
        let e = gf16();
        assert_eq!(e.modulus(), &[1, 1, 0, 0, 1]);
        // x^4 = x + 1
        assert_eq!(e.pow(2, 4), 3);
        for a in 0..16 {
            assert_eq!(e.frobenius_power(a, 4), a);
            assert_eq!(e.frobenius_power(a, 1), e.mul(a, a));
        }
    }

    #[test]
    fn psi_round_trip_polynomial_basis() {
        let e = gf16();
        let v = [1u64, 2, 4, 8, 15];
        let m = e.psi(&v).unwrap();
        assert_eq!(m.rows(), 4);
        assert_eq!(m.get(3, 3), 1);
        assert_eq!(e.psi_inverse(&m).unwrap(), v.to_vec());
    }

    #[test]
    fn psi_custom_basis() {
        let e = gf16().with_basis(&[1, 3, 5, 15]).unwrap();
        let m = e.psi(&[3, 6]).unwrap();
        assert_eq!(m.get(1, 0), 1);
        assert_eq!(e.psi_inverse(&m).unwrap(), vec![3, 6]);
        assert!(matches!(gf16().with_basis(&[1, 2, 3, 4]), Err(Error::DependentPoints)));
    }

    #[test]
    fn extension_too_large() {
        let f = FiniteField::new(256).unwrap();
        assert!(matches!(ExtField::new(&f, 8), Err(Error::ExtensionTooLarge { .. })));
    }

    #[test]
    fn inverse_over_gf9_degree_3() {
        let e = ExtField::new(&FiniteField::new(9).unwrap(), 3).unwrap();
        for a in (1..e.size()).step_by(37) {
            assert_eq!(e.mul(a, e.inv(a)), 1);
        }
    }
}
