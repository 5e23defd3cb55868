//! Constant-dimension codes: lifted MRD, parallel, multilevel, combined and
//! four-part constructions.

use num_bigint::BigUint;
use serde::Serialize;

use crate::algebra::{Field, MatGF, Subspace};
use crate::error::{invalid, Error, Result};
use crate::ferrers::{
    echelon_ferrers_form, fdrmc_block_diag_distance, fdrmc_block_sum_dim, fdrmc_full, fdrmc_shortening,
    EchelonFerrersPattern, FdrmCode, FerrersDiagram,
};
use crate::grmc::Grmc;
use crate::rank_codes::{mrd_matrix_code, LinearMatrixCode};

/// How the codewords of one contiguous group were produced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum GroupKind {
    /// Echelon-Ferrers fillings of one identifying vector.
    Multilevel { vector: Vec<u8> },
    /// Row spaces of `(B | I_k)`.
    RightLift,
    /// No structure claimed.
    Generic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Group {
    pub kind: GroupKind,
    pub start: usize,
    pub len: usize,
}

/// A set of `k`-dimensional subspaces of `GF(q)^n` with a declared minimum
/// subspace distance.
#[derive(Clone, Debug)]
pub struct SubspaceCode {
    pub field: Field,
    pub n: usize,
    pub k: usize,
    pub min_distance: usize,
    pub codewords: Vec<Subspace>,
    pub groups: Vec<Group>,
    pub provenance: String,
}

impl SubspaceCode {
    pub fn new(field: &Field, n: usize, k: usize, min_distance: usize) -> Self {
        SubspaceCode {
            field: field.clone(),
            n,
            k,
            min_distance,
            codewords: Vec::new(),
            groups: Vec::new(),
            provenance: String::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    pub fn push_group(&mut self, kind: GroupKind, words: Vec<Subspace>) {
        self.groups.push(Group { kind, start: self.codewords.len(), len: words.len() });
        self.codewords.extend(words);
    }

    pub fn group_words(&self, g: &Group) -> &[Subspace] {
        &self.codewords[g.start..g.start + g.len]
    }

    /// Identifying vectors of the multilevel groups.
    pub fn identifying_vectors(&self) -> Vec<&[u8]> {
        self.groups
            .iter()
            .filter_map(|g| match &g.kind {
                GroupKind::Multilevel { vector } => Some(vector.as_slice()),
                _ => None,
            })
            .collect()
    }
}

fn hamming(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Binary vectors of length `n` and weight `k` used as identifying vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentifyingVectorFamily {
    pub n: usize,
    pub k: usize,
    pub vectors: Vec<Vec<u8>>,
    /// Minimum pairwise Hamming distance (`n + 1` for a single vector).
    pub min_hamming: usize,
    /// Minimum weight of the first `n - k` positions.
    pub min_prefix_weight: usize,
}

impl IdentifyingVectorFamily {
    pub fn new(n: usize, k: usize, vectors: Vec<Vec<u8>>) -> Result<Self> {
        if n < k || vectors.is_empty() {
            return invalid("family needs at least one vector and k <= n");
        }
        for v in &vectors {
            if v.len() != n || v.iter().any(|&x| x > 1) || v.iter().filter(|&&x| x == 1).count() != k {
                return invalid(format!("{:?} is not a binary vector of length {} and weight {}", v, n, k));
            }
        }
        let mut min_hamming = n + 1;
        for i in 0..vectors.len() {
            for j in i + 1..vectors.len() {
                min_hamming = min_hamming.min(hamming(&vectors[i], &vectors[j]));
            }
        }
        let min_prefix_weight =
            vectors.iter().map(|v| v[..n - k].iter().filter(|&&x| x == 1).count()).min().unwrap();
        Ok(IdentifyingVectorFamily { n, k, vectors, min_hamming, min_prefix_weight })
    }
}

fn lifted_vector(n: usize, k: usize) -> Vec<u8> {
    (0..n).map(|i| u8::from(i < k)).collect()
}

fn check_cap(total: &BigUint, cap: u64) -> Result<()> {
    if *total > BigUint::from(cap) {
        return Err(Error::EnumerationCap { size: total.to_string(), cap });
    }
    Ok(())
}

/// Fills the pattern of `v` with every codeword of `filler`.
fn fill_group(pattern: &EchelonFerrersPattern, filler: &FdrmCode, cap: u64) -> Result<Vec<Subspace>> {
    let field = filler.field().clone();
    filler.code().iter(cap)?.map(|w| pattern.fill(&field, &w)).collect()
}

/// `{rowspace(I_k | A) : A in d}` for a `k x (n - k)` code `d` of minimum
/// rank `delta`.
pub fn lift_mrd(d: &LinearMatrixCode, delta: usize, n: usize, cap: u64) -> Result<SubspaceCode> {
    let k = d.rows();
    if k + d.cols() != n {
        return Err(Error::DimensionMismatch(format!("{}x{} code lifted to length {}", k, d.cols(), n)));
    }
    let v = lifted_vector(n, k);
    let pattern = echelon_ferrers_form(&v)?;
    let filler = FdrmCode::new(FerrersDiagram::full(k, n - k)?, delta, d.clone())?;
    let mut out = SubspaceCode::new(d.field(), n, k, 2 * delta);
    out.push_group(GroupKind::Multilevel { vector: v }, fill_group(&pattern, &filler, cap)?);
    out.provenance = format!("lifted MRD, n={} k={} delta={}", n, k, delta);
    Ok(out)
}

/// Lifted MRD code of `k x (n - k)` matrices with minimum rank `delta`.
pub fn lifted_mrd_code(field: &Field, n: usize, k: usize, delta: usize, cap: u64) -> Result<SubspaceCode> {
    if n < 2 * k {
        return invalid(format!("lifting needs n >= 2k, got n={} k={}", n, k));
    }
    lift_mrd(&mrd_matrix_code(field, k, n - k, delta)?, delta, n, cap)
}

fn check_grmc(grmc: &Grmc, k: usize, n: usize, delta: usize, ceiling: usize) -> Result<()> {
    if grmc.rows != k || grmc.cols != n - k {
        return Err(Error::DimensionMismatch(format!(
            "GRMC is {}x{}, expected {}x{}",
            grmc.rows,
            grmc.cols,
            k,
            n - k
        )));
    }
    if grmc.delta < delta {
        return invalid(format!("GRMC distance {} is below {}", grmc.delta, delta));
    }
    if grmc.t2 > ceiling {
        return invalid(format!("GRMC rank ceiling {} exceeds {}", grmc.t2, ceiling));
    }
    Ok(())
}

/// `{rowspace(B | I_k) : B in grmc}`.
pub fn right_lift(field: &Field, grmc: &Grmc) -> Result<Vec<Subspace>> {
    let id = MatGF::identity(field, grmc.rows);
    grmc.codewords.iter().map(|b| Ok(Subspace::from_generator(&b.hstack(&id)?))).collect()
}

/// Lifted MRD code plus the right lift of a GRMC with ranks in `[0, k - delta]`.
pub fn parallel_construct(field: &Field, n: usize, k: usize, delta: usize, grmc: &Grmc, cap: u64) -> Result<SubspaceCode> {
    if n < 2 * k || k < delta || delta == 0 {
        return invalid(format!("parallel construction needs n >= 2k >= 2delta > 0, got {} {} {}", n, k, delta));
    }
    check_grmc(grmc, k, n, delta, k - delta)?;
    let mut code = lifted_mrd_code(field, n, k, delta, cap)?;
    code.push_group(GroupKind::RightLift, right_lift(field, grmc)?);
    code.provenance = format!("parallel construction, n={} k={} delta={} GRMC size {}", n, k, delta, grmc.len());
    Ok(code)
}

/// Union over the family of the echelon-Ferrers fillings by each vector's
/// filler code.
pub fn multilevel_construct(
    family: &IdentifyingVectorFamily,
    fillers: &[FdrmCode],
    delta: usize,
    cap: u64,
) -> Result<SubspaceCode> {
    if fillers.len() != family.vectors.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} fillers for {} vectors",
            fillers.len(),
            family.vectors.len()
        )));
    }
    if family.vectors.len() > 1 && family.min_hamming < 2 * delta {
        return invalid(format!("family Hamming distance {} is below {}", family.min_hamming, 2 * delta));
    }
    let field = fillers[0].field().clone();
    let total: BigUint = fillers.iter().map(|f| f.code().size()).sum();
    check_cap(&total, cap)?;
    let mut out = SubspaceCode::new(&field, family.n, family.k, 2 * delta);
    for (v, filler) in family.vectors.iter().zip(fillers) {
        let pattern = echelon_ferrers_form(v)?;
        match pattern.diagram() {
            Some(d) if d == filler.diagram() => {}
            _ => {
                return Err(Error::DimensionMismatch(format!(
                    "filler diagram {:?} does not match the pattern of {:?}",
                    filler.diagram().column_counts(),
                    v
                )))
            }
        }
        if filler.delta() < delta {
            return invalid(format!("filler distance {} is below {}", filler.delta(), delta));
        }
        out.push_group(GroupKind::Multilevel { vector: v.clone() }, fill_group(&pattern, filler, cap)?);
    }
    out.provenance = format!("multilevel construction, {} identifying vectors", family.vectors.len());
    Ok(out)
}

fn check_mul1(n: usize, k: usize, delta: usize) -> Result<()> {
    if delta == 0 || k < 2 * delta || n < 2 * k + delta {
        return invalid(format!("need n >= 2k + delta and k >= 2delta >= 2, got n={} k={} delta={}", n, k, delta));
    }
    Ok(())
}

/// Identifying vectors `1^{k-i delta} 0^delta 1^{i delta} 0^{n-k-delta}`,
/// `0 <= i <= floor(k/delta)`, with their diagrams
/// `H_i = [k - i delta (x delta), k (x n-k-delta)]` (zero columns trimmed).
pub fn mul1_family(n: usize, k: usize, delta: usize) -> Result<(IdentifyingVectorFamily, Vec<FerrersDiagram>)> {
    check_mul1(n, k, delta)?;
    let levels = k / delta;
    let mut vectors = Vec::with_capacity(levels + 1);
    let mut diagrams = Vec::with_capacity(levels + 1);
    for i in 0..=levels {
        let mut v = vec![1u8; k - i * delta];
        v.extend(std::iter::repeat(0).take(delta));
        v.extend(std::iter::repeat(1).take(i * delta));
        v.extend(std::iter::repeat(0).take(n - k - delta));
        let mut cols = vec![k - i * delta; if k > i * delta { delta } else { 0 }];
        cols.extend(std::iter::repeat(k).take(n - k - delta));
        vectors.push(v);
        diagrams.push(FerrersDiagram::new(cols)?);
    }
    Ok((IdentifyingVectorFamily::new(n, k, vectors)?, diagrams))
}

/// Filler codes for [`mul1_family`]: shortening on `H_i^t` for
/// `i < floor(k/delta)`, and an MRD code on the full right
/// `k x (n-k-delta)` block for the last level.
pub fn mul1_fillers(field: &Field, n: usize, k: usize, delta: usize) -> Result<Vec<FdrmCode>> {
    let (_, diagrams) = mul1_family(n, k, delta)?;
    let levels = k / delta;
    let mut out = Vec::with_capacity(levels + 1);
    for (i, h) in diagrams.iter().enumerate() {
        if i < levels {
            let c = fdrmc_shortening(field, &h.transpose(), delta)?.transpose();
            out.push(c);
        } else {
            let block = mrd_matrix_code(field, k, n - k - delta, delta)?;
            let offset = h.num_cols() - (n - k - delta);
            let basis = block
                .basis()
                .iter()
                .map(|b| {
                    let mut d = MatGF::zeros(field, k, h.num_cols());
                    d.place(b, 0, offset);
                    d
                })
                .collect();
            out.push(FdrmCode::new(h.clone(), delta, LinearMatrixCode::new(field, k, h.num_cols(), basis)?)?);
        }
    }
    Ok(out)
}

/// The multilevel code built from [`mul1_family`] and [`mul1_fillers`].
pub fn mul1_construct(field: &Field, n: usize, k: usize, delta: usize, cap: u64) -> Result<SubspaceCode> {
    let (family, _) = mul1_family(n, k, delta)?;
    let fillers = mul1_fillers(field, n, k, delta)?;
    let mut code = multilevel_construct(&family, &fillers, delta, cap)?;
    code.provenance = format!("multilevel code from the shifted-zero-block family, n={} k={} delta={}", n, k, delta);
    Ok(code)
}

/// Adds the right lift of a GRMC with ranks in `[0, s - delta]` to a
/// multilevel code whose identifying vectors all have weight at least `s`
/// in their first `n - k` positions.
pub fn comb_construct(base: &SubspaceCode, s: usize, grmc: &Grmc) -> Result<SubspaceCode> {
    let (n, k) = (base.n, base.k);
    let delta = base.min_distance / 2;
    if s < delta {
        return invalid(format!("s={} must be at least delta={}", s, delta));
    }
    if n < 2 * k {
        return invalid("combination needs n >= 2k");
    }
    for g in &base.groups {
        match &g.kind {
            GroupKind::Multilevel { vector } => {
                let w = vector[..n - k].iter().filter(|&&x| x == 1).count();
                if w < s {
                    return invalid(format!("identifying vector {:?} has prefix weight {} < {}", vector, w, s));
                }
            }
            _ => return invalid("base code must come from the multilevel construction"),
        }
    }
    check_grmc(grmc, k, n, delta, s - delta)?;
    let mut code = base.clone();
    code.push_group(GroupKind::RightLift, right_lift(&base.field, grmc)?);
    code.provenance = format!("{}; combined with GRMC of size {} (s={})", base.provenance, grmc.len(), s);
    Ok(code)
}

/// `(l1, l2)` for the four-part construction; `l2 = 0` when `delta = 1`.
pub fn l1_l2(n: usize, k: usize, delta: usize) -> (usize, usize) {
    let l1 = if n >= k + 3 * delta { (k - delta) * delta + n - k - delta } else { delta * (n + 2 - 4 * delta) };
    let l2 = (1..delta).map(|j| ((delta - j + 1) * (k - delta)).min((j + 1) * (n - k - delta))).max().unwrap_or(0);
    (l1, l2)
}

/// Smallest `j` in `[1, delta)` attaining `l2`.
pub fn l2_argmax(n: usize, k: usize, delta: usize) -> Option<usize> {
    let (_, l2) = l1_l2(n, k, delta);
    (1..delta).find(|&j| ((delta - j + 1) * (k - delta)).min((j + 1) * (n - k - delta)) == l2)
}

/// The filler for the third part: a code of dimension `max(l1, l2)` on
/// `[k-delta (x delta), k (x n-k-delta)]` vanishing on the upper-right
/// `(k-delta) x (n-k-delta)` block.
pub fn new_c3_filler(field: &Field, n: usize, k: usize, delta: usize) -> Result<FdrmCode> {
    let (l1, l2) = l1_l2(n, k, delta);
    if l1 >= l2 {
        let mut cols = vec![k - delta; delta];
        cols.extend(std::iter::repeat(n - k - delta).take(delta));
        let f12 = FerrersDiagram::new(cols)?;
        let c12 = fdrmc_shortening(field, &f12, delta)?;
        fdrmc_block_diag_distance(&c12, delta)
    } else {
        let j = l2_argmax(n, k, delta).expect("l2 > 0 implies delta > 1");
        let a = fdrmc_full(field, k - delta, delta, j)?;
        let b = fdrmc_full(field, delta, n - k - delta, delta - j)?;
        let dim = a.dimension().min(b.dimension());
        fdrmc_block_sum_dim(&a.truncate(dim), &b.truncate(dim), k - delta, n - k - delta)
    }
}

/// The filler for the fourth part: an MRD code on `(k-delta) x (n-k-delta)`
/// with `delta` zero rows inserted at row `k - 2 delta` and `delta` zero
/// columns in front (dropped when `k = 2 delta`).
pub fn new_c4_filler(field: &Field, n: usize, k: usize, delta: usize) -> Result<FdrmCode> {
    let w = n - k - delta;
    let block = mrd_matrix_code(field, k - delta, w, delta)?;
    let lead = if k > 2 * delta { delta } else { 0 };
    let mut cols = vec![k - 2 * delta; lead];
    cols.extend(std::iter::repeat(k).take(w));
    let diagram = FerrersDiagram::new(cols)?;
    let top = k - 2 * delta;
    let basis = block
        .basis()
        .iter()
        .map(|b| {
            let mut d = MatGF::zeros(field, k, lead + w);
            d.place(&b.submatrix(0, top, 0, w), 0, lead);
            d.place(&b.submatrix(top, k - delta, 0, w), top + delta, lead);
            d
        })
        .collect();
    FdrmCode::new(diagram, delta, LinearMatrixCode::new(field, k, lead + w, basis)?)
}

/// `1^{k-delta} 0^delta 1^delta 0^{n-k-delta}`.
pub fn new_vector_1(n: usize, k: usize, delta: usize) -> Vec<u8> {
    let mut v = vec![1u8; k - delta];
    v.extend(std::iter::repeat(0).take(delta));
    v.extend(std::iter::repeat(1).take(delta));
    v.extend(std::iter::repeat(0).take(n - k - delta));
    v
}

/// `1^{k-2delta} 0^delta 1^delta 1^delta 0^{n-k-delta}`.
pub fn new_vector_2(n: usize, k: usize, delta: usize) -> Vec<u8> {
    let mut v = vec![1u8; k - 2 * delta];
    v.extend(std::iter::repeat(0).take(delta));
    v.extend(std::iter::repeat(1).take(2 * delta));
    v.extend(std::iter::repeat(0).take(n - k - delta));
    v
}

/// Lifted MRD code, right lift of a GRMC with ranks in `[0, k - delta]`,
/// and two extra multilevel parts.
pub fn new_construct(field: &Field, n: usize, k: usize, delta: usize, grmc: &Grmc, cap: u64) -> Result<SubspaceCode> {
    if delta == 0 || k < 2 * delta || n < 2 * k {
        return invalid(format!("need n >= 2k and k >= 2delta >= 2, got n={} k={} delta={}", n, k, delta));
    }
    check_grmc(grmc, k, n, delta, k - delta)?;
    let c3 = new_c3_filler(field, n, k, delta)?;
    let c4 = new_c4_filler(field, n, k, delta)?;
    let total = BigUint::from(field.order()).pow(((n - k) * (k - delta + 1)) as u32)
        + BigUint::from(grmc.len())
        + c3.code().size()
        + c4.code().size();
    check_cap(&total, cap)?;

    let mut code = lifted_mrd_code(field, n, k, delta, cap)?;
    code.push_group(GroupKind::RightLift, right_lift(field, grmc)?);
    for (v, filler) in [(new_vector_1(n, k, delta), &c3), (new_vector_2(n, k, delta), &c4)] {
        let pattern = echelon_ferrers_form(&v)?;
        if pattern.diagram() != Some(filler.diagram()) {
            return Err(Error::DimensionMismatch("filler does not match its pattern".into()));
        }
        code.push_group(GroupKind::Multilevel { vector: v }, fill_group(&pattern, filler, cap)?);
    }
    let (l1, l2) = l1_l2(n, k, delta);
    code.provenance = format!(
        "four-part construction, n={} k={} delta={} GRMC size {} l1={} l2={} third filler {}",
        n,
        k,
        delta,
        grmc.len(),
        l1,
        l2,
        if l1 >= l2 { "block-diagonal" } else { "block-sum" }
    );
    Ok(code)
}
