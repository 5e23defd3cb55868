//! Rank-metric codes whose codeword ranks lie in a given interval
//! `[t1, t2]`: constructions, lower bound and the Singleton-like reduction.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{ExtField, Field, MatGF};
use crate::error::{invalid, Result};
use crate::rank_codes::{default_points, frobenius_span, mrd_matrix_code, rank_distribution};
use crate::sampling::Mcg64;

/// Coset counts up to this are searched exhaustively.
pub const EXHAUSTIVE_COSETS: u64 = 1 << 16;
/// Cosets examined when the search is sampled.
pub const SAMPLED_COSETS: u64 = 1 << 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum SearchMode {
    /// Rank filter over a whole MRD code.
    Filter,
    /// Every coset was evaluated.
    Exhaustive { cosets: u64 },
    /// Only a seeded sample of cosets was evaluated.
    Sampled { cosets: u64, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct Grmc {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    pub delta: usize,
    pub t1: usize,
    pub t2: usize,
    pub codewords: Vec<MatGF>,
    pub search: SearchMode,
}

impl Grmc {
    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    /// The code with every codeword transposed.
    pub fn transpose(&self) -> Grmc {
        Grmc {
            rows: self.cols,
            cols: self.rows,
            codewords: self.codewords.iter().map(MatGF::transpose).collect(),
            ..self.clone()
        }
    }
}

fn check_params(m: usize, n: usize, delta: usize, t1: usize, t2: usize) -> Result<()> {
    let n_ = m.min(n);
    if delta == 0 || delta > n_ {
        return invalid(format!("delta={} must be in 1..={}", delta, n_));
    }
    if t1 > t2 || t2 > n_ {
        return invalid(format!("rank interval [{}, {}] must lie in [0, {}]", t1, t2, n_));
    }
    Ok(())
}

/// Codewords of an MRD code with ranks in `[t1, t2]` (requires `t2 >= delta`,
/// or `t2 = 0`, which yields the zero matrix alone).
pub fn grmc_filter_construct(
    field: &Field,
    m: usize,
    n: usize,
    delta: usize,
    t1: usize,
    t2: usize,
    cap: u64,
) -> Result<Grmc> {
    check_params(m, n, delta, t1, t2)?;
    if t2 == 0 {
        let codewords = vec![MatGF::zeros(field, m, n)];
        return Ok(Grmc { field: field.clone(), rows: m, cols: n, delta, t1, t2, codewords, search: SearchMode::Filter });
    }
    if t2 < delta {
        return invalid(format!("filter construction needs t2 >= delta, got t2={} delta={}", t2, delta));
    }
    let code = mrd_matrix_code(field, m, n, delta)?;
    let codewords = code.par_fold(
        cap,
        Vec::new,
        |mut acc, _, w| {
            let r = w.rank();
            if (t1..=t2).contains(&r) {
                acc.push(w.clone());
            }
            acc
        },
        |mut a, mut b| {
            a.append(&mut b);
            a
        },
    )?;
    Ok(Grmc { field: field.clone(), rows: m, cols: n, delta, t1, t2, codewords, search: SearchMode::Filter })
}

/// Options for the coset search.
#[derive(Clone, Copy, Debug)]
pub struct CosetSearch {
    /// Cap on the size of the inner Gabidulin code that is enumerated.
    pub cap: u64,
    pub seed: u64,
}

impl Default for CosetSearch {
    fn default() -> Self {
        CosetSearch { cap: crate::rank_codes::DEFAULT_ENUMERATION_CAP, seed: 0 }
    }
}

/// The largest coset `D2 + D1` (`D2` nonzero) restricted to ranks in
/// `[t1, t2]`, where `D1 = G[m x n, delta]` and `D2` is spanned by the rows
/// `g^{[n-delta+1]}, ..., g^{[n-a]}` (requires `t2 < delta`).
pub fn grmc_coset_construct(
    field: &Field,
    m: usize,
    n: usize,
    delta: usize,
    t1: usize,
    t2: usize,
    a: usize,
    opts: CosetSearch,
) -> Result<Grmc> {
    check_params(m, n, delta, t1, t2)?;
    if m < n {
        return Ok(grmc_coset_construct(field, n, m, delta, t1, t2, a, opts)?.transpose());
    }
    if t2 >= delta {
        return invalid("coset construction needs t2 < delta");
    }
    if a < t1.max(1) || a >= delta {
        return invalid(format!("a={} must be in [{}, {})", a, t1.max(1), delta));
    }
    let ext = ExtField::new(field, m)?;
    let g = default_points(&ext, n);
    let d1 = frobenius_span(&ext, &g, 0..n - delta + 1)?;
    let d2 = frobenius_span(&ext, &g, n - delta + 1..n - a + 1)?;
    // d1 is enumerated once per coset; fail early if it is too large.
    d1.iter(opts.cap)?;

    let cosets = d2.size_u64().map(|s| s - 1);
    let (indices, search): (Vec<u64>, SearchMode) = match cosets {
        Some(c) if c <= EXHAUSTIVE_COSETS => ((1..=c).collect(), SearchMode::Exhaustive { cosets: c }),
        _ => {
            let total = cosets.unwrap_or(u64::MAX);
            let mut rng = Mcg64::new(opts.seed);
            let mut idx: Vec<u64> = (0..SAMPLED_COSETS).map(|_| 1 + rng.below_u64(total)).collect();
            idx.sort_unstable();
            idx.dedup();
            (idx, SearchMode::Sampled { cosets: SAMPLED_COSETS, seed: opts.seed })
        }
    };

    let in_range = |w: &MatGF| (t1..=t2).contains(&w.rank());
    let count_coset = |t: u64| -> usize {
        let shift = d2.codeword_at(t);
        d1.iter_range(0..d1.size_u64().unwrap())
            .filter(|w| in_range(&w.add(&shift).expect("same shape")))
            .count()
    };
    let best = indices
        .par_iter()
        .map(|&t| (count_coset(t), t))
        .reduce(|| (0, u64::MAX), |x, y| if (x.0, std::cmp::Reverse(x.1)) >= (y.0, std::cmp::Reverse(y.1)) { x } else { y });

    let shift = d2.codeword_at(best.1);
    let codewords = d1
        .iter_range(0..d1.size_u64().unwrap())
        .map(|w| w.add(&shift).expect("same shape"))
        .filter(in_range)
        .collect();
    Ok(Grmc { field: field.clone(), rows: m, cols: n, delta, t1, t2, codewords, search })
}

fn pow(q: u64, e: usize) -> BigUint {
    BigUint::from(q).pow(e as u32)
}

/// The value of the pigeonhole bound for a single choice of `a`.
pub fn grmc_coset_bound(q: u64, m: usize, n: usize, delta: usize, t1: usize, t2: usize, a: usize) -> Result<BigUint> {
    let (m, n) = (m.max(n), m.min(n));
    let dist = rank_distribution(q, m, n, a)?;
    let num: BigUint = (t1.max(1)..=t2).map(|i| dist.get(i)).sum();
    let den = pow(q, m * (delta - a)) - 1u32;
    Ok(num.div_ceil(&den))
}

/// The `a` in `[max(1, t1), delta)` maximizing the pigeonhole bound; the
/// smallest such `a` on ties. `None` if the range is empty.
pub fn best_coset_parameter(q: u64, m: usize, n: usize, delta: usize, t1: usize, t2: usize) -> Option<(usize, BigUint)> {
    let mut best: Option<(usize, BigUint)> = None;
    for a in t1.max(1)..delta {
        let v = grmc_coset_bound(q, m, n, delta, t1, t2, a).ok()?;
        if best.as_ref().map_or(true, |(_, b)| v > *b) {
            best = Some((a, v));
        }
    }
    best
}

/// Lower bound on the largest `(m x n, delta, [t1, t2])` code.
pub fn grmc_lower_bound(q: u64, m: usize, n: usize, delta: usize, t1: usize, t2: usize) -> Result<BigUint> {
    check_params(m, n, delta, t1, t2)?;
    if t2 == 0 {
        return Ok(BigUint::one());
    }
    if t2 >= delta {
        let dist = rank_distribution(q, m, n, delta)?;
        return Ok((t1..=t2).map(|i| dist.get(i)).sum());
    }
    Ok(best_coset_parameter(q, m, n, delta, t1, t2).map(|(_, v)| v).unwrap_or_else(BigUint::zero))
}

/// Parameters after deleting `i` rows and `j` columns from every codeword.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedParams {
    pub rows: usize,
    pub cols: usize,
    pub delta: usize,
    pub t1: usize,
    pub t2: usize,
}

pub fn grmc_upper_bound_reduce(
    m: usize,
    n: usize,
    delta: usize,
    t1: usize,
    t2: usize,
    i: usize,
    j: usize,
) -> Result<ReducedParams> {
    check_params(m, n, delta, t1, t2)?;
    let lim = (delta - 1).min(t1);
    if i > lim || j > lim {
        return invalid(format!("i={} and j={} must not exceed min(delta-1, t1)={}", i, j, lim));
    }
    let l = i.max(j);
    Ok(ReducedParams { rows: m - i, cols: n - j, delta: delta - l, t1: t1 - l, t2: (m - i).min(n - j).min(t2) })
}

/// Removes the first `i` rows and first `j` columns of every codeword.
pub fn grmc_puncture(code: &Grmc, i: usize, j: usize) -> Result<Grmc> {
    let p = grmc_upper_bound_reduce(code.rows, code.cols, code.delta, code.t1, code.t2, i, j)?;
    Ok(Grmc {
        field: code.field.clone(),
        rows: p.rows,
        cols: p.cols,
        delta: p.delta,
        t1: p.t1,
        t2: p.t2,
        codewords: code.codewords.iter().map(|w| w.submatrix(i, code.rows, j, code.cols)).collect(),
        search: code.search.clone(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GrmcViolation {
    RankOutOfRange { index: usize, rank: usize },
    Distance { i: usize, j: usize, distance: usize },
    Shape { index: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct GrmcReport {
    pub pass: bool,
    pub size: usize,
    pub violation: Option<GrmcViolation>,
}

/// Checks both defining conditions exhaustively: every rank lies in
/// `[t1, t2]` and every pair differs in rank by at least `delta`.
pub fn grmc_verify(code: &Grmc) -> GrmcReport {
    let fail = |v| GrmcReport { pass: false, size: code.len(), violation: Some(v) };
    for (index, w) in code.codewords.iter().enumerate() {
        if w.rows() != code.rows || w.cols() != code.cols {
            return fail(GrmcViolation::Shape { index });
        }
        let rank = w.rank();
        if !(code.t1..=code.t2).contains(&rank) {
            return fail(GrmcViolation::RankOutOfRange { index, rank });
        }
    }
    let words = &code.codewords;
    let bad = (0..words.len()).into_par_iter().find_map_first(|i| {
        (i + 1..words.len()).find_map(|j| {
            let d = words[i].sub(&words[j]).expect("same shape").rank();
            (d < code.delta).then_some(GrmcViolation::Distance { i, j, distance: d })
        })
    });
    match bad {
        Some(v) => fail(v),
        None => GrmcReport { pass: true, size: code.len(), violation: None },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteField;

    #[test]
    fn filter_526() {
        let f = FiniteField::new(2).unwrap();
        let g = grmc_filter_construct(&f, 4, 4, 2, 0, 2, 1 << 20).unwrap();
        assert_eq!(g.len(), 526);
        assert!(grmc_verify(&g).pass);
        assert_eq!(grmc_lower_bound(2, 4, 4, 2, 0, 2).unwrap(), BigUint::from(526u32));
    }

    #[test]
    fn zero_only() {
        let f = FiniteField::new(3).unwrap();
        let g = grmc_filter_construct(&f, 3, 2, 1, 0, 0, 1 << 20).unwrap();
        assert_eq!(g.len(), 1);
        assert!(g.codewords[0].is_zero());
        for d in 1..4 {
            assert_eq!(grmc_lower_bound(2, 4, 4, d, 0, 0).unwrap(), BigUint::one());
        }
    }

    #[test]
    fn pigeonhole_value_k5() {
        for q in [2u64, 3, 4] {
            let expect = q.pow(4) + q.pow(3) + q * q + q + 1;
            assert_eq!(grmc_lower_bound(q, 5, 5, 2, 0, 1).unwrap(), BigUint::from(expect));
            assert_eq!(grmc_lower_bound(q, 5, 9, 2, 0, 1).unwrap(), BigUint::from(expect));
        }
    }

    #[test]
    fn reduce_examples() {
        let id = grmc_upper_bound_reduce(5, 5, 3, 3, 4, 0, 0).unwrap();
        assert_eq!(id, ReducedParams { rows: 5, cols: 5, delta: 3, t1: 3, t2: 4 });
        let r = grmc_upper_bound_reduce(5, 5, 3, 3, 4, 1, 0).unwrap();
        assert_eq!(r, ReducedParams { rows: 4, cols: 5, delta: 2, t1: 2, t2: 4 });
        assert!(grmc_upper_bound_reduce(5, 5, 3, 1, 4, 2, 0).is_err());
    }

    #[test]
    fn duplicate_codeword_fails() {
        let f = FiniteField::new(2).unwrap();
        let mut g = grmc_filter_construct(&f, 3, 3, 2, 2, 3, 1 << 20).unwrap();
        let w = g.codewords[0].clone();
        g.codewords.push(w);
        let rep = grmc_verify(&g);
        assert!(!rep.pass);
        assert!(matches!(rep.violation, Some(GrmcViolation::Distance { distance: 0, .. })));
    }
}
