//! Table-driven arithmetic in `GF(p^e)` for orders up to 256.
//!
//! Elements are `u8` values. The element `sum c_i p^i` stands for the
//! polynomial `sum c_i x^i` reduced modulo the field's defining polynomial.

use std::fmt;
use std::sync::Arc;

use super::poly;
use crate::error::{Error, Result};

/// Shared handle to a finite field.
pub type Field = Arc<FiniteField>;

pub struct FiniteField {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.p, self.e, self.modulus)
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^e`, or fails if `q` is not a prime power.
pub fn prime_power(q: u64) -> Result<(u32, u32)> {
    if q < 2 {
        return Err(Error::NotPrimePower(q));
    }
    let p = (2..=q).find(|d| q % d == 0).unwrap();
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    if rest != 1 || !is_prime(p) {
        return Err(Error::NotPrimePower(q));
    }
    Ok((p as u32, e))
}

impl FiniteField {
    /// The field of order `q` with the lexicographically smallest monic
    /// irreducible modulus.
    pub fn new(q: u64) -> Result<Field> {
        if q > 256 {
            return Err(Error::FieldTooLarge(q));
        }
        let (p, e) = prime_power(q)?;
        if e == 1 {
            return Ok(Arc::new(Self::prime(p)));
        }
        let base = Self::prime(p);
        let modulus = poly::smallest_irreducible(&base, e as usize);
        Ok(Arc::new(Self::build(p, e, modulus)))
    }

    /// The field `GF(p^e)` defined by an explicit monic irreducible modulus
    /// (coefficients low to high, `e + 1` entries).
    pub fn with_modulus(p: u32, e: u32, modulus: &[u8]) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrimePower(p as u64));
        }
        let q = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        if e == 0 || q > 256 {
            return Err(Error::FieldTooLarge(q));
        }
        if modulus.len() != e as usize + 1 || modulus.iter().any(|&c| c as u32 >= p) {
            return Err(Error::NotIrreducible(e as usize));
        }
        let base = Self::prime(p);
        if !poly::is_irreducible(&base, modulus) {
            return Err(Error::NotIrreducible(e as usize));
        }
        if e == 1 {
            return Ok(Arc::new(Self::build(p, 1, modulus.to_vec())));
        }
        Ok(Arc::new(Self::build(p, e, modulus.to_vec())))
    }

    fn prime(p: u32) -> Self {
        Self::build(p, 1, vec![0, 1])
    }

    fn build(p: u32, e: u32, modulus: Vec<u8>) -> Self {
        let q = p.pow(e);
        let n = q as usize;
        let digits = |a: usize| -> Vec<u32> {
            let mut a = a as u32;
            (0..e)
                .map(|_| {
                    let d = a % p;
                    a /= p;
                    d
                })
                .collect()
        };
        let encode = |ds: &[u32]| -> u8 {
            ds.iter().rev().fold(0u32, |acc, &d| acc * p + d) as u8
        };
        let all: Vec<Vec<u32>> = (0..n).map(digits).collect();

        let mut add = vec![0u8; n * n];
        let mut neg = vec![0u8; n];
        for a in 0..n {
            for b in 0..n {
                let s: Vec<u32> = all[a].iter().zip(&all[b]).map(|(x, y)| (x + y) % p).collect();
                add[a * n + b] = encode(&s);
            }
            let s: Vec<u32> = all[a].iter().map(|x| (p - x) % p).collect();
            neg[a] = encode(&s);
        }

        // Multiply as polynomials over GF(p), then reduce by the modulus.
        let deg = e as usize;
        let mut mul = vec![0u8; n * n];
        for a in 0..n {
            for b in a..n {
                let mut prod = vec![0u32; 2 * deg];
                for (i, x) in all[a].iter().enumerate() {
                    for (j, y) in all[b].iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for top in (deg..2 * deg).rev() {
                    let c = prod[top];
                    if c == 0 {
                        continue;
                    }
                    for (j, &mj) in modulus.iter().enumerate().take(deg) {
                        let idx = top - deg + j;
                        prod[idx] = (prod[idx] + (p - c) * mj as u32 % p) % p;
                    }
                    prod[top] = 0;
                }
                let v = encode(&prod[..deg]);
                mul[a * n + b] = v;
                mul[b * n + a] = v;
            }
        }

        let mut inv = vec![0u8; n];
        for a in 1..n {
            inv[a] = (1..n).find(|&b| mul[a * n + b] == 1).unwrap() as u8;
        }

        FiniteField { p, e, q, modulus, add, mul, neg, inv }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Defining polynomial, coefficients low to high.
    pub fn modulus(&self) -> &[u8] {
        &self.modulus
    }

    pub fn contains(&self, v: u64) -> bool {
        v < self.q as u64
    }

    pub fn check(&self, v: u64) -> Result<u8> {
        if self.contains(v) {
            Ok(v as u8)
        } else {
            Err(Error::ElementOutOfRange { value: v, q: self.q })
        }
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    /// Multiplicative inverse; `inv(0)` is defined as 0.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    pub fn div(&self, a: u8, b: u8) -> u8 {
        assert!(b != 0, "division by zero in {:?}", self);
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u8, mut k: u64) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        (0..self.q).map(|v| v as u8)
    }

    /// Row of the multiplication table for `a`.
    #[inline]
    pub(crate) fn mul_row(&self, a: u8) -> &[u8] {
        let q = self.q as usize;
        &self.mul[a as usize * q..(a as usize + 1) * q]
    }

    #[inline]
    pub(crate) fn add_row(&self, a: u8) -> &[u8] {
        let q = self.q as usize;
        &self.add[a as usize * q..(a as usize + 1) * q]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_power_split() {
        assert_eq!(prime_power(9).unwrap(), (3, 2));
        assert_eq!(prime_power(256).unwrap(), (2, 8));
        assert!(prime_power(6).is_err());
        assert!(prime_power(1).is_err());
        assert!(FiniteField::new(6).is_err());
        assert!(matches!(FiniteField::new(512), Err(Error::FieldTooLarge(512))));
    }

    #[test]
    fn default_moduli() {
        assert_eq!(FiniteField::new(2).unwrap().modulus(), &[0, 1]);
        assert_eq!(FiniteField::new(4).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FiniteField::new(8).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FiniteField::new(16).unwrap().modulus(), &[1, 1, 0, 0, 1]);
        assert_eq!(FiniteField::new(9).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn gf4_tables() {
        let f = FiniteField::new(4).unwrap();
        // x * x = x + 1, x * (x + 1) = 1
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.inv(2), 3);
        assert_eq!(f.add(2, 3), 1);
    }

    #[test]
    fn explicit_modulus() {
        let f = FiniteField::with_modulus(2, 4, &[1, 0, 0, 1, 1]).unwrap();
        assert_eq!(f.order(), 16);
        assert!(FiniteField::with_modulus(2, 4, &[1, 0, 1, 0, 1]).is_err());
        assert!(FiniteField::with_modulus(2, 2, &[1, 1]).is_err());
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = FiniteField::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), 0);
                assert_eq!(f.mul(a, 1), a);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                    assert_eq!(f.pow(a, q - 1), 1);
                }
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    for c in f.elements() {
                        let lhs = f.mul(a, f.add(b, c));
                        let rhs = f.add(f.mul(a, b), f.mul(a, c));
                        assert_eq!(lhs, rhs);
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
        }
    }
}
