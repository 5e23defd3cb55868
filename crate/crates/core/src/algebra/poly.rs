//! Dense univariate polynomials over a small finite field.
//!
//! Coefficients are stored low to high. Used to find and check moduli.

use super::field::FiniteField;

pub(crate) fn trim(mut a: Vec<u8>) -> Vec<u8> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub(crate) fn mul(f: &FiniteField, a: &[u8], b: &[u8]) -> Vec<u8> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u8; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a nonzero `b`.
pub(crate) fn rem(f: &FiniteField, a: &[u8], b: &[u8]) -> Vec<u8> {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = f.inv(b[db]);
    while r.len() > db {
        let dr = r.len() - 1;
        let c = f.mul(r[dr], lead_inv);
        let shift = dr - db;
        for (j, &bj) in b.iter().enumerate() {
            r[shift + j] = f.sub(r[shift + j], f.mul(c, bj));
        }
        r = trim(r);
    }
    r
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-q
/// digits of `index`, constant term least significant.
pub(crate) fn monic_from_index(q: u32, deg: usize, mut index: u64) -> Vec<u8> {
    let mut out = Vec::with_capacity(deg + 1);
    for _ in 0..deg {
        out.push((index % q as u64) as u8);
        index /= q as u64;
    }
    out.push(1);
    out
}

/// Trial division by every monic polynomial of degree at most `deg/2`.
pub(crate) fn is_irreducible(f: &FiniteField, a: &[u8]) -> bool {
    let a = trim(a.to_vec());
    if a.len() < 2 || *a.last().unwrap() != 1 {
        return false;
    }
    let deg = a.len() - 1;
    if deg == 1 {
        return true;
    }
    if a[0] == 0 {
        return false;
    }
    let q = f.order();
    for d in 1..=deg / 2 {
        let count = (q as u64).pow(d as u32);
        for idx in 0..count {
            let g = monic_from_index(q, d, idx);
            if rem(f, &a, &g).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible polynomial of the given degree, ordered by
/// the integer encoding of its lower coefficients.
pub(crate) fn smallest_irreducible(f: &FiniteField, deg: usize) -> Vec<u8> {
    let q = f.order() as u64;
    let count = q.pow(deg as u32);
    (0..count)
        .map(|idx| monic_from_index(f.order(), deg, idx))
        .find(|g| is_irreducible(f, g))
        .expect("an irreducible polynomial exists in every degree")
}
