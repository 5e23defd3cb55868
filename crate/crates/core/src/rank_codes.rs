//! Linear rank-metric codes: Gabidulin codes, their matrix images and the
//! rank distribution of MRD codes.

use std::collections::BTreeMap;
use std::ops::Range;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::algebra::{gaussian_coefficient, ExtField, Field, MatGF};
use crate::error::{invalid, Error, Result};
use crate::sampling::Mcg64;

/// Default cap on the number of codewords materialized by enumeration.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 24;

/// A `GF(q)`-linear space of `rows x cols` matrices given by a basis.
///
/// Codewords are indexed by coefficient vectors over the basis; index order
/// treats the first coefficient as the most significant digit.
#[derive(Clone, Debug)]
pub struct LinearMatrixCode {
    field: Field,
    rows: usize,
    cols: usize,
    basis: Vec<MatGF>,
}

impl LinearMatrixCode {
    pub fn new(field: &Field, rows: usize, cols: usize, basis: Vec<MatGF>) -> Result<Self> {
        if let Some(b) = basis.iter().find(|b| b.rows() != rows || b.cols() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "basis matrix {}x{} in a {}x{} code",
                b.rows(),
                b.cols(),
                rows,
                cols
            )));
        }
        Ok(LinearMatrixCode { field: field.clone(), rows, cols, basis })
    }

    /// The zero code.
    pub fn zero(field: &Field, rows: usize, cols: usize) -> Self {
        LinearMatrixCode { field: field.clone(), rows, cols, basis: Vec::new() }
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

    pub fn basis(&self) -> &[MatGF] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn size(&self) -> BigUint {
        BigUint::from(self.field.order()).pow(self.dimension() as u32)
    }

    /// `q^dimension` if it fits in a `u64`.
    pub fn size_u64(&self) -> Option<u64> {
        (self.field.order() as u64).checked_pow(self.dimension() as u32)
    }

    /// Dimension of the span of the basis; equals `dimension()` when the
    /// basis is independent.
    pub fn span_dimension(&self) -> usize {
        let flat: Vec<u8> = self.basis.iter().flat_map(|b| b.data().iter().copied()).collect();
        MatGF::from_vec(&self.field, self.basis.len(), self.rows * self.cols, flat)
            .map(|m| m.rank())
            .unwrap_or(0)
    }

    pub fn codeword(&self, coeffs: &[u8]) -> MatGF {
        assert_eq!(coeffs.len(), self.basis.len());
        let mut out = MatGF::zeros(&self.field, self.rows, self.cols);
        for (b, &c) in self.basis.iter().zip(coeffs) {
            out.add_scaled_unchecked(b, c);
        }
        out
    }

    pub fn coefficients_of(&self, index: u64) -> Vec<u8> {
        let q = self.field.order() as u64;
        let mut idx = index;
        let mut cs = vec![0u8; self.basis.len()];
        for c in cs.iter_mut().rev() {
            *c = (idx % q) as u8;
            idx /= q;
        }
        cs
    }

    pub fn codeword_at(&self, index: u64) -> MatGF {
        self.codeword(&self.coefficients_of(index))
    }

    fn checked_size(&self, cap: u64) -> Result<u64> {
        match self.size_u64() {
            Some(s) if s <= cap => Ok(s),
            _ => Err(Error::EnumerationCap { size: self.size().to_string(), cap }),
        }
    }

    /// Codewords with indices in `range`, in index order.
    pub fn iter_range(&self, range: Range<u64>) -> Codewords<'_> {
        let current = self.codeword_at(range.start);
        let digits = self.coefficients_of(range.start);
        Codewords { code: self, digits, current, remaining: range.end.saturating_sub(range.start), first: true }
    }

    /// All codewords in index order, if there are at most `cap`.
    pub fn iter(&self, cap: u64) -> Result<Codewords<'_>> {
        let size = self.checked_size(cap)?;
        Ok(self.iter_range(0..size))
    }

    pub fn enumerate(&self, cap: u64) -> Result<Vec<MatGF>> {
        Ok(self.iter(cap)?.collect())
    }

    /// `count` codewords at seeded pseudo-random indices (with repetition).
    pub fn sample(&self, seed: u64, count: usize) -> Vec<MatGF> {
        let mut rng = Mcg64::new(seed);
        let q = self.field.order() as u64;
        (0..count)
            .map(|_| {
                let cs: Vec<u8> = (0..self.dimension()).map(|_| rng.below(q) as u8).collect();
                self.codeword(&cs)
            })
            .collect()
    }

    /// Applies `f` to every codeword in parallel chunks and merges results.
    pub fn par_fold<T, F, M>(&self, cap: u64, init: impl Fn() -> T + Sync + Send, f: F, merge: M) -> Result<T>
    where
        T: Send,
        F: Fn(T, u64, &MatGF) -> T + Sync + Send,
        M: Fn(T, T) -> T + Sync + Send,
    {
        let size = self.checked_size(cap)?;
        const CHUNK: u64 = 1 << 12;
        let chunks = size.div_ceil(CHUNK);
        Ok((0..chunks)
            .into_par_iter()
            .map(|c| {
                let start = c * CHUNK;
                let end = (start + CHUNK).min(size);
                self.iter_range(start..end)
                    .zip(start..end)
                    .fold(init(), |acc, (w, idx)| f(acc, idx, &w))
            })
            .reduce(&init, &merge))
    }

    /// Number of codewords of each rank, by enumeration.
    pub fn rank_histogram(&self, cap: u64) -> Result<BTreeMap<usize, u64>> {
        self.par_fold(
            cap,
            BTreeMap::new,
            |mut acc, _, w| {
                *acc.entry(w.rank()).or_insert(0) += 1;
                acc
            },
            |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                a
            },
        )
    }

    /// Minimum rank over nonzero codewords (`None` for the zero code).
    pub fn min_rank(&self, cap: u64) -> Result<Option<usize>> {
        let hist = self.rank_histogram(cap)?;
        Ok(hist.keys().copied().find(|&r| r > 0))
    }

    pub fn transpose(&self) -> Self {
        LinearMatrixCode {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            basis: self.basis.iter().map(MatGF::transpose).collect(),
        }
    }

    pub fn anti_transpose(&self) -> Self {
        LinearMatrixCode {
            field: self.field.clone(),
            rows: self.cols,
            cols: self.rows,
            basis: self.basis.iter().map(MatGF::anti_transpose).collect(),
        }
    }

    /// Keeps the first `k` basis matrices.
    pub fn truncate(&self, k: usize) -> Self {
        let mut out = self.clone();
        out.basis.truncate(k);
        out
    }
}

/// Odometer iterator over codewords; each step adds a multiple of a single
/// basis matrix (amortized).
pub struct Codewords<'a> {
    code: &'a LinearMatrixCode,
    digits: Vec<u8>,
    current: MatGF,
    remaining: u64,
    first: bool,
}

impl Codewords<'_> {
    fn advance(&mut self) {
        let f = self.code.field.clone();
        let q = f.order() as u8 as u16;
        for t in (0..self.digits.len()).rev() {
            let old = self.digits[t];
            let new = if (old as u16) + 1 < q { old + 1 } else { 0 };
            self.digits[t] = new;
            self.current.add_scaled_unchecked(&self.code.basis[t], f.sub(new, old));
            if new != 0 {
                return;
            }
        }
    }
}

impl Iterator for Codewords<'_> {
    type Item = MatGF;

    fn next(&mut self) -> Option<MatGF> {
        if self.remaining == 0 {
            return None;
        }
        if !self.first {
            self.advance();
        }
        self.first = false;
        self.remaining -= 1;
        Some(self.current.clone())
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}

/// `GF(q)`-basis of the span over `GF(q^m)` of the rows `g^{[i]}`,
/// `i in rows`, mapped to `m x n` matrices. Message order: row index first,
/// then the extension coefficient from `x^{m-1}` down to `1`.
pub fn frobenius_span(ext: &ExtField, g: &[u64], rows: Range<usize>) -> Result<LinearMatrixCode> {
    let m = ext.degree();
    let mut basis = Vec::with_capacity(rows.len() * m);
    for r in rows {
        let row: Vec<u64> = g.iter().map(|&x| ext.frobenius_power(x, r)).collect();
        let q = ext.base().order() as u64;
        for s in (0..m).rev() {
            let scalar = q.pow(s as u32);
            let scaled: Vec<u64> = row.iter().map(|&x| ext.mul(scalar, x)).collect();
            basis.push(ext.psi(&scaled)?);
        }
    }
    LinearMatrixCode::new(ext.base(), m, g.len(), basis)
}

/// A Gabidulin code `G[n, n - delta + 1]` over `GF(q^m)`.
#[derive(Clone, Debug)]
pub struct GabidulinCode {
    ext: ExtField,
    g: Vec<u64>,
    delta: usize,
}

impl GabidulinCode {
    pub fn ext(&self) -> &ExtField {
        &self.ext
    }

    pub fn length(&self) -> usize {
        self.g.len()
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn points(&self) -> &[u64] {
        &self.g
    }

    /// Dimension over the extension field, `n - delta + 1`.
    pub fn ext_dimension(&self) -> usize {
        self.g.len() - self.delta + 1
    }

    /// Generator rows `g^{[0]}, ..., g^{[n-delta]}`.
    pub fn generator(&self) -> Vec<Vec<u64>> {
        (0..self.ext_dimension())
            .map(|i| self.g.iter().map(|&x| self.ext.frobenius_power(x, i)).collect())
            .collect()
    }

    /// `u * G` for a message `u` over the extension field.
    pub fn encode(&self, u: &[u64]) -> Result<Vec<u64>> {
        if u.len() != self.ext_dimension() {
            return Err(Error::DimensionMismatch(format!(
                "message length {} for dimension {}",
                u.len(),
                self.ext_dimension()
            )));
        }
        let gen = self.generator();
        Ok((0..self.length())
            .map(|j| {
                u.iter().zip(&gen).fold(0u64, |acc, (&ui, row)| self.ext.add(acc, self.ext.mul(ui, row[j])))
            })
            .collect())
    }

    /// The code as `m x n` matrices over the base field.
    pub fn matrix_code(&self) -> Result<LinearMatrixCode> {
        frobenius_span(&self.ext, &self.g, 0..self.ext_dimension())
    }
}

/// The Gabidulin code with evaluation points `g` and minimum rank distance
/// `delta`.
pub fn make_gabidulin(ext: &ExtField, g: &[u64], delta: usize) -> Result<GabidulinCode> {
    let n = g.len();
    if n == 0 || n > ext.degree() {
        return invalid(format!("length {} must be in 1..={}", n, ext.degree()));
    }
    if delta == 0 || delta > n {
        return invalid(format!("minimum distance {} must be in 1..={}", delta, n));
    }
    if ext.rank_over_base(g)? != n {
        return Err(Error::DependentPoints);
    }
    Ok(GabidulinCode { ext: ext.clone(), g: g.to_vec(), delta })
}

/// First `n` polynomial-basis elements `1, x, ..., x^{n-1}`.
pub fn default_points(ext: &ExtField, n: usize) -> Vec<u64> {
    ext.basis()[..n.min(ext.degree())].to_vec()
}

/// A linear MRD code of `a x b` matrices with minimum rank `delta`, from a
/// Gabidulin code over `GF(q^max(a,b))`; transposed when `a < b`.
pub fn mrd_matrix_code(field: &Field, a: usize, b: usize, delta: usize) -> Result<LinearMatrixCode> {
    let (m, n) = (a.max(b), a.min(b));
    if n == 0 || delta == 0 || delta > n {
        return invalid(format!("no MRD code of {}x{} matrices with minimum rank {}", a, b, delta));
    }
    let ext = ExtField::new(field, m)?;
    let g = default_points(&ext, n);
    let code = make_gabidulin(&ext, &g, delta)?.matrix_code()?;
    Ok(if a < b { code.transpose() } else { code })
}

/// Rank distribution of a linear MRD code of `m x n` matrices with minimum
/// rank `delta`: `counts[r]` codewords of rank `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankDistribution {
    pub q: u64,
    pub m: usize,
    pub n: usize,
    pub delta: usize,
    pub counts: Vec<BigUint>,
}

impl RankDistribution {
    pub fn get(&self, r: usize) -> BigUint {
        self.counts.get(r).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Counts that fit in `u64`, keyed by rank.
    pub fn to_u64_map(&self) -> BTreeMap<usize, u64> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(r, c)| (r, c.to_u64().expect("count fits in u64")))
            .collect()
    }
}

pub fn rank_distribution(q: u64, m: usize, n: usize, delta: usize) -> Result<RankDistribution> {
    let (m_, n_) = (m.max(n), m.min(n));
    if n_ == 0 || delta == 0 || delta > n_ || q < 2 {
        return invalid(format!("no MRD code with q={} {}x{} delta={}", q, m, n, delta));
    }
    let qb = BigInt::from(q);
    let mut counts = vec![BigUint::zero(); n_ + 1];
    counts[0] = BigUint::one();
    for i in 0..=(n_ - delta) {
        let w = delta + i;
        let mut sum = BigInt::zero();
        for j in 0..=i {
            let t = i - j;
            let mut term: BigInt = BigInt::from(gaussian_coefficient(w, t, q))
                * qb.pow((t * t.saturating_sub(1) / 2) as u32)
                * (qb.pow((m_ * (j + 1)) as u32) - 1);
            if t % 2 == 1 {
                term = -term;
            }
            sum += term;
        }
        let a = BigInt::from(gaussian_coefficient(n_, w, q)) * sum;
        assert!(!a.is_negative(), "negative rank count");
        counts[w] = a.to_biguint().unwrap();
    }
    Ok(RankDistribution { q, m, n, delta, counts })
}
