//! Minimum-distance and structure checks for constant-dimension codes.
//!
//! Pair distances use the rank of the stacked bases. A second, independent
//! oracle computes `dim(U ∩ V)` from the Zassenhaus block matrix and is
//! compared against the first on a sample of pairs.

use std::collections::{HashMap, HashSet};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{MatGF, Subspace};
use crate::cdc::{GroupKind, SubspaceCode};
use crate::ferrers::echelon_ferrers_form;
use crate::sampling::Mcg64;

/// Number of pairs cross-checked with the intersection oracle.
pub const CROSS_CHECK_PAIRS: usize = 1000;
/// Groups up to this size are checked pairwise.
pub const GROUP_EXHAUSTIVE_LIMIT: usize = 1 << 14;
/// Random cross-group pairs checked in structure verification.
pub const CROSS_GROUP_SAMPLES: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VerifyMode {
    Exhaustive,
    Sampled { pairs: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &str, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub i: usize,
    pub j: usize,
    pub distance: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub mode: String,
    /// Exhaustive or structural pass: the declared distance is certified.
    /// A sampled pass never sets this.
    pub certified: bool,
    pub q: u64,
    pub n: usize,
    pub k: usize,
    pub count: usize,
    pub required_distance: usize,
    pub pass: bool,
    pub min_observed: Option<usize>,
    pub counterexample: Option<Counterexample>,
    pub pairs_checked: u64,
    pub checks: Vec<Check>,
    pub elapsed_ms: u128,
}

impl VerifyReport {
    fn start(code: &SubspaceCode, d: usize, mode: &str) -> Self {
        VerifyReport {
            mode: mode.into(),
            certified: false,
            q: code.field.order() as u64,
            n: code.n,
            k: code.k,
            count: code.len(),
            required_distance: d,
            pass: true,
            min_observed: None,
            counterexample: None,
            pairs_checked: 0,
            checks: Vec::new(),
            elapsed_ms: 0,
        }
    }

    fn push(&mut self, c: Check) {
        self.pass &= c.pass;
        self.checks.push(c);
    }

    fn observe(&mut self, i: usize, j: usize, dist: usize) {
        let (i, j) = (i.min(j), i.max(j));
        self.min_observed = Some(self.min_observed.map_or(dist, |m| m.min(dist)));
        if dist < self.required_distance {
            let better = match self.counterexample {
                None => true,
                Some(c) => (i, j) < (c.i, c.j),
            };
            if better {
                self.counterexample = Some(Counterexample { i, j, distance: dist });
            }
            self.pass = false;
        }
    }

    fn merge_pairs(&mut self, other: PairScan) {
        self.pairs_checked += other.pairs;
        if let Some(m) = other.min {
            self.min_observed = Some(self.min_observed.map_or(m, |x| x.min(m)));
        }
        if let Some(c) = other.first_bad {
            self.observe(c.i, c.j, c.distance);
        }
    }
}

/// Runs `f` on a pool sized by `CDC_THREADS` when that is set.
pub fn with_pool<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    match std::env::var("CDC_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        Some(t) if t > 0 => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        _ => f(),
    }
}

/// `d_S` via the Zassenhaus matrix `[[U, U], [V, 0]]`: its rank is
/// `dim(U + V) + dim(U ∩ V)` and the intersection is spanned by the rows
/// whose left half vanishes.
pub fn zassenhaus_distance(u: &Subspace, v: &Subspace) -> usize {
    let n = u.ambient();
    let field = u.field();
    let mut z = MatGF::zeros(field, u.dim() + v.dim(), 2 * n);
    z.place(u.basis(), 0, 0);
    z.place(u.basis(), 0, n);
    z.place(v.basis(), u.dim(), 0);
    let (_, pivots) = z.rref();
    let meet = pivots.iter().filter(|&&p| p >= n).count();
    u.dim() + v.dim() - 2 * meet
}

#[derive(Default)]
struct PairScan {
    pairs: u64,
    min: Option<usize>,
    first_bad: Option<Counterexample>,
}

impl PairScan {
    fn merge(mut self, o: PairScan) -> PairScan {
        self.pairs += o.pairs;
        self.min = match (self.min, o.min) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.first_bad = match (self.first_bad, o.first_bad) {
            (Some(a), Some(b)) => Some(if (a.i, a.j) <= (b.i, b.j) { a } else { b }),
            (a, b) => a.or(b),
        };
        self
    }
}

/// All pairs `i < j` of `words`, indices offset by `base`.
fn scan_all_pairs(words: &[Subspace], base: usize, d: usize) -> PairScan {
    (0..words.len())
        .into_par_iter()
        .map(|i| {
            let mut s = PairScan::default();
            for j in i + 1..words.len() {
                let dist = words[i].distance(&words[j]);
                s.pairs += 1;
                s.min = Some(s.min.map_or(dist, |m| m.min(dist)));
                if dist < d && s.first_bad.is_none() {
                    s.first_bad = Some(Counterexample { i: base + i, j: base + j, distance: dist });
                }
            }
            s
        })
        .reduce(PairScan::default, PairScan::merge)
}

fn shape_check(code: &SubspaceCode) -> Check {
    let bad = code.codewords.iter().position(|w| w.ambient() != code.n || w.dim() != code.k);
    match bad {
        None => Check::new("shape", true, format!("{} codewords of dimension {} in GF(q)^{}", code.len(), code.k, code.n)),
        Some(i) => Check::new("shape", false, format!("codeword {} is not a {}-subspace of GF(q)^{}", i, code.k, code.n)),
    }
}

fn cross_check(code: &SubspaceCode, seed: u64) -> Check {
    let n = code.len() as u64;
    if n < 2 {
        return Check::new("intersection_oracle", true, "fewer than two codewords");
    }
    let mut rng = Mcg64::new(seed ^ 0x5a55);
    let pairs: Vec<(usize, usize)> = (0..CROSS_CHECK_PAIRS)
        .map(|_| {
            let (i, j) = rng.pair(n);
            (i as usize, j as usize)
        })
        .collect();
    let bad = pairs.par_iter().find_first(|&&(i, j)| {
        let (u, v) = (&code.codewords[i], &code.codewords[j]);
        u.distance(v) != zassenhaus_distance(u, v)
    });
    match bad {
        None => Check::new("intersection_oracle", true, format!("{} pairs agree", pairs.len())),
        Some((i, j)) => Check::new("intersection_oracle", false, format!("oracles disagree on pair ({}, {})", i, j)),
    }
}

/// Checks that every pair of codewords is at subspace distance at least
/// `d`. The exhaustive mode reports the lexicographically smallest failing
/// pair.
pub fn verify_cdc(code: &SubspaceCode, d: usize, mode: VerifyMode) -> VerifyReport {
    let t = Instant::now();
    let label = match mode {
        VerifyMode::Exhaustive => "exhaustive".to_string(),
        VerifyMode::Sampled { pairs, seed } => format!("sampled(seed={}, pairs={})", seed, pairs),
    };
    let mut rep = VerifyReport::start(code, d, &label);
    rep.push(shape_check(code));
    let seed = match mode {
        VerifyMode::Exhaustive => 0,
        VerifyMode::Sampled { seed, .. } => seed,
    };
    with_pool(|| {
        match mode {
            VerifyMode::Exhaustive => rep.merge_pairs(scan_all_pairs(&code.codewords, 0, d)),
            VerifyMode::Sampled { pairs, seed } => {
                let n = code.len() as u64;
                if n >= 2 {
                    let mut rng = Mcg64::new(seed);
                    let list: Vec<(u64, u64)> = (0..pairs).map(|_| rng.pair(n)).collect();
                    let scan = list
                        .par_iter()
                        .map(|&(i, j)| {
                            let (i, j) = (i.min(j) as usize, i.max(j) as usize);
                            let dist = code.codewords[i].distance(&code.codewords[j]);
                            PairScan {
                                pairs: 1,
                                min: Some(dist),
                                first_bad: (dist < d).then_some(Counterexample { i, j, distance: dist }),
                            }
                        })
                        .reduce(PairScan::default, PairScan::merge);
                    rep.merge_pairs(scan);
                }
            }
        }
        rep.push(cross_check(code, seed));
    });
    rep.certified = rep.pass && mode == VerifyMode::Exhaustive;
    rep.elapsed_ms = t.elapsed().as_millis();
    rep
}

/// Passes iff the codewords of the form `rowspace(I_k | A)` number exactly
/// `q^{(n-k)(k-delta+1)}` and their `A` parts form a linear code of
/// minimum rank `delta`.
pub fn verify_lifted_subset(code: &SubspaceCode, delta: usize) -> Check {
    let (n, k) = (code.n, code.k);
    let fail = |msg: String| Check::new("lifted_subset", false, msg);
    if delta == 0 || delta > k || n < 2 * k {
        return fail(format!("no lifted MRD code for n={} k={} delta={}", n, k, delta));
    }
    let l = (n - k) * (k - delta + 1);
    let want = match (code.field.order() as u128).checked_pow(l as u32) {
        Some(w) => w,
        None => return fail(format!("q^{} is too large to check", l)),
    };
    let lead: Vec<usize> = (0..k).collect();
    let parts: Vec<MatGF> = code
        .codewords
        .par_iter()
        .filter(|w| w.pivots() == lead.as_slice())
        .map(|w| w.pivot_free_submatrix())
        .collect();
    if parts.len() as u128 != want {
        return fail(format!("{} codewords of the form (I_k | A), expected {}", parts.len(), want));
    }
    let flat: Vec<Vec<u8>> = parts.iter().map(|m| m.data().to_vec()).collect();
    let dim = span_dimension(&code.field, &flat);
    if dim != l || flat.iter().collect::<HashSet<_>>().len() != flat.len() {
        return fail(format!("A parts span dimension {}, expected a {}-dimensional linear code", dim, l));
    }
    let min_rank = parts.par_iter().filter(|m| !m.is_zero()).map(|m| m.rank()).min();
    match min_rank {
        Some(r) if r < delta => fail(format!("A parts have minimum rank {} < {}", r, delta)),
        _ => Check::new("lifted_subset", true, format!("{} lifted codewords, linear of dimension {}, min rank {:?}", parts.len(), l, min_rank)),
    }
}

fn hamming(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Row-reduces flattened matrices into a basis, returning its size.
fn span_dimension(field: &crate::algebra::Field, rows: &[Vec<u8>]) -> usize {
    let mut basis: Vec<(usize, Vec<u8>)> = Vec::new();
    for r in rows {
        let mut v = r.clone();
        for (p, b) in &basis {
            let c = v[*p];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = field.sub(*x, field.mul(c, *y));
                }
            }
        }
        if let Some(p) = v.iter().position(|&x| x != 0) {
            let inv = field.inv(v[p]);
            for x in v.iter_mut() {
                *x = field.mul(*x, inv);
            }
            for (_, b) in basis.iter_mut() {
                let c = b[p];
                if c != 0 {
                    for (x, y) in b.iter_mut().zip(&v) {
                        *x = field.sub(*x, field.mul(c, *y));
                    }
                }
            }
            basis.push((p, v));
        }
    }
    basis.len()
}

/// Checks one multilevel group: identifying vectors, and either all pairs
/// or linear closure plus the minimum rank of its fillers.
fn check_multilevel_group(code: &SubspaceCode, gi: usize, d: usize, rep: &mut VerifyReport) {
    let g = &code.groups[gi];
    let words = code.group_words(g);
    let vector = match &g.kind {
        GroupKind::Multilevel { vector } => vector,
        _ => unreachable!(),
    };
    let name = format!("group_{}", gi);
    if let Some(i) = words.iter().position(|w| w.identifying_vector() != *vector) {
        rep.push(Check::new(&name, false, format!("codeword {} has another identifying vector", g.start + i)));
        return;
    }
    if words.len() <= GROUP_EXHAUSTIVE_LIMIT {
        let scan = scan_all_pairs(words, g.start, d);
        let pairs = scan.pairs;
        let ok = scan.first_bad.is_none();
        rep.merge_pairs(scan);
        rep.push(Check::new(&name, ok, format!("{} words, {} pairs checked", words.len(), pairs)));
        return;
    }
    let pattern = match echelon_ferrers_form(vector) {
        Ok(p) => p,
        Err(e) => {
            rep.push(Check::new(&name, false, e.to_string()));
            return;
        }
    };
    let fillers: Vec<MatGF> = match words.par_iter().map(|w| pattern.extract(w)).collect() {
        Ok(f) => f,
        Err(e) => {
            rep.push(Check::new(&name, false, e.to_string()));
            return;
        }
    };
    let flat: Vec<Vec<u8>> = fillers.iter().map(|m| m.data().to_vec()).collect();
    let distinct = flat.iter().collect::<HashSet<_>>().len() == flat.len();
    let dim = span_dimension(&code.field, &flat);
    let closed = distinct && (code.field.order() as u128).checked_pow(dim as u32) == Some(words.len() as u128);
    let min_rank = fillers.par_iter().filter(|m| !m.is_zero()).map(|m| m.rank()).min();
    if let Some(r) = min_rank {
        rep.min_observed = Some(rep.min_observed.map_or(2 * r, |m| m.min(2 * r)));
    }
    let ok = closed && min_rank.map_or(true, |r| 2 * r >= d);
    rep.push(Check::new(
        &name,
        ok,
        format!(
            "{} words form a linear space of dimension {} (closed: {}), minimum filler rank {:?}",
            words.len(),
            dim,
            closed,
            min_rank
        ),
    ));
    // Spot-check d_S = 2 rank(A - B) inside the group.
    let mut rng = Mcg64::new(gi as u64);
    let bad = (0..CROSS_CHECK_PAIRS).map(|_| rng.pair(words.len() as u64)).find(|&(i, j)| {
        let (i, j) = (i as usize, j as usize);
        let diff = fillers[i].sub(&fillers[j]).expect("same shape");
        words[i].distance(&words[j]) != 2 * diff.rank()
    });
    rep.push(Check::new(
        &format!("{}_rank_identity", name),
        bad.is_none(),
        match bad {
            None => format!("{} sampled pairs satisfy d_S = 2 d_R", CROSS_CHECK_PAIRS),
            Some((i, j)) => format!("pair ({}, {}) breaks d_S = 2 d_R", g.start + i as usize, g.start + j as usize),
        },
    ));
}

/// Verifies a code assembled from groups (multilevel fillings and right
/// lifts) without scanning every pair.
///
/// Pairs from different groups are certified by the Hamming distance of
/// their identifying vectors where that suffices; the remaining pairs
/// between groups are checked directly. Independently, up to
/// [`CROSS_GROUP_SAMPLES`] random cross-group pairs are checked.
pub fn verify_multilevel_structure(code: &SubspaceCode, d: usize, seed: u64) -> VerifyReport {
    let t = Instant::now();
    let mut rep = VerifyReport::start(code, d, &format!("structure(seed={})", seed));
    rep.push(shape_check(code));
    let covered: usize = code.groups.iter().map(|g| g.len).sum();
    rep.push(Check::new("groups_cover", covered == code.len(), format!("{} of {} codewords grouped", covered, code.len())));
    if !rep.pass {
        rep.elapsed_ms = t.elapsed().as_millis();
        return rep;
    }
    with_pool(|| {
        // Identifying vectors of every codeword, interned.
        let ids: Vec<Vec<u8>> = code.codewords.par_iter().map(|w| w.identifying_vector()).collect();
        let mut intern: HashMap<&[u8], usize> = HashMap::new();
        let mut distinct: Vec<&[u8]> = Vec::new();
        let id_of: Vec<usize> = ids
            .iter()
            .map(|v| {
                *intern.entry(v.as_slice()).or_insert_with(|| {
                    distinct.push(v.as_slice());
                    distinct.len() - 1
                })
            })
            .collect();

        for gi in 0..code.groups.len() {
            let g = &code.groups[gi];
            match &g.kind {
                GroupKind::Multilevel { .. } => check_multilevel_group(code, gi, d, &mut rep),
                _ => {
                    let words = code.group_words(g);
                    let name = format!("group_{}", gi);
                    if words.len() <= GROUP_EXHAUSTIVE_LIMIT {
                        let scan = scan_all_pairs(words, g.start, d);
                        let (pairs, ok) = (scan.pairs, scan.first_bad.is_none());
                        rep.merge_pairs(scan);
                        rep.push(Check::new(&name, ok, format!("{} words, {} pairs checked", words.len(), pairs)));
                    } else {
                        rep.push(Check::new(&name, false, format!("{} unstructured words exceed the pairwise limit", words.len())));
                    }
                }
            }
        }

        // Cross-group pairs: certify by identifying vectors, check the rest.
        let group_of: Vec<usize> =
            code.groups.iter().enumerate().flat_map(|(gi, g)| std::iter::repeat(gi).take(g.len)).collect();
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); distinct.len()];
        for (i, &v) in id_of.iter().enumerate() {
            members[v].push(i);
        }
        let mut uncertified: Vec<(usize, usize)> = Vec::new();
        for a in 0..distinct.len() {
            for b in a..distinct.len() {
                if a != b && hamming(distinct[a], distinct[b]) >= d {
                    continue;
                }
                for &i in &members[a] {
                    for &j in &members[b] {
                        if group_of[i] != group_of[j] && (a != b || i < j) {
                            uncertified.push((i.min(j), i.max(j)));
                        }
                    }
                }
            }
        }
        let scan = uncertified
            .par_iter()
            .map(|&(i, j)| {
                let dist = code.codewords[i].distance(&code.codewords[j]);
                PairScan { pairs: 1, min: Some(dist), first_bad: (dist < d).then_some(Counterexample { i, j, distance: dist }) }
            })
            .reduce(PairScan::default, PairScan::merge);
        let ok = scan.first_bad.is_none();
        rep.merge_pairs(scan);
        rep.push(Check::new(
            "cross_group",
            ok,
            format!("{} distinct identifying vectors, {} cross-group pairs needed a direct check", distinct.len(), uncertified.len()),
        ));

        if code.groups.len() > 1 {
            let n = code.len() as u64;
            let mut rng = Mcg64::new(seed);
            let mut pairs = Vec::with_capacity(CROSS_GROUP_SAMPLES as usize);
            let mut tries = 0u64;
            while (pairs.len() as u64) < CROSS_GROUP_SAMPLES && tries < 8 * CROSS_GROUP_SAMPLES {
                tries += 1;
                let (i, j) = rng.pair(n);
                let (i, j) = (i.min(j) as usize, i.max(j) as usize);
                if group_of[i] != group_of[j] {
                    pairs.push((i, j));
                }
            }
            let scan = pairs
                .par_iter()
                .map(|&(i, j)| {
                    let dist = code.codewords[i].distance(&code.codewords[j]);
                    PairScan { pairs: 1, min: Some(dist), first_bad: (dist < d).then_some(Counterexample { i, j, distance: dist }) }
                })
                .reduce(PairScan::default, PairScan::merge);
            let ok = scan.first_bad.is_none();
            rep.merge_pairs(scan);
            rep.push(Check::new("cross_group_samples", ok, format!("{} random cross-group pairs", pairs.len())));
        }
        rep.push(cross_check(code, seed));
    });
    rep.certified = rep.pass;
    rep.elapsed_ms = t.elapsed().as_millis();
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteField;
    use crate::cdc::lifted_mrd_code;

    fn sub(f: &crate::algebra::Field, rows: &[[u8; 4]]) -> Subspace {
        Subspace::from_generator(&MatGF::from_rows(f, rows).unwrap())
    }

    #[test]
    fn oracles_agree_on_small_cases() {
        let f = FiniteField::new(3).unwrap();
        let u = sub(&f, &[[1, 0, 2, 0], [0, 1, 1, 1]]);
        let v = sub(&f, &[[1, 1, 0, 1], [0, 0, 1, 2]]);
        let w = sub(&f, &[[1, 0, 2, 0], [0, 0, 1, 2]]);
        for (a, b) in [(&u, &v), (&u, &w), (&v, &w), (&u, &u)] {
            assert_eq!(a.distance(b), zassenhaus_distance(a, b));
        }
    }

    #[test]
    fn finds_smallest_bad_pair() {
        let f = FiniteField::new(2).unwrap();
        let mut code = SubspaceCode::new(&f, 4, 2, 4);
        let words = vec![
            sub(&f, &[[1, 0, 0, 0], [0, 1, 0, 0]]),
            sub(&f, &[[0, 0, 1, 0], [0, 0, 0, 1]]),
            sub(&f, &[[1, 0, 1, 0], [0, 1, 0, 0]]),
            sub(&f, &[[1, 0, 0, 0], [0, 0, 0, 1]]),
        ];
        code.push_group(GroupKind::Generic, words);
        let rep = verify_cdc(&code, 4, VerifyMode::Exhaustive);
        assert!(!rep.pass);
        assert_eq!(rep.counterexample, Some(Counterexample { i: 0, j: 2, distance: 2 }));
        assert_eq!(rep.min_observed, Some(2));
        assert_eq!(rep.pairs_checked, 6);
    }

    #[test]
    fn lifted_code_passes_both_ways() {
        let f = FiniteField::new(2).unwrap();
        let code = lifted_mrd_code(&f, 6, 3, 2, 1 << 20).unwrap();
        assert_eq!(code.len(), 64);
        let a = verify_cdc(&code, 4, VerifyMode::Exhaustive);
        let b = verify_multilevel_structure(&code, 4, 1);
        assert!(a.pass && b.pass, "{:?} {:?}", a.checks, b.checks);
        assert_eq!(a.min_observed, Some(4));
        assert!(verify_lifted_subset(&code, 2).pass);
        assert!(!verify_lifted_subset(&code, 3).pass);
        let mut short = code.clone();
        short.codewords.pop();
        short.groups[0].len -= 1;
        assert!(!verify_lifted_subset(&short, 2).pass);
    }
}
