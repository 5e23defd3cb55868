//! Ferrers diagrams, Ferrers-diagram rank-metric codes (FDRMCs) and
//! echelon-Ferrers forms of identifying vectors.
//!
//! A diagram is stored by its column dot counts `gamma_0 <= ... <= gamma_{n-1} = m`.
//! Dots are top-aligned in each column, so row `r` holds the dots of the
//! columns with `gamma_c > r`, which are the rightmost ones. Cells are
//! addressed as `(row, column)` with row 0 at the top.

use serde::Serialize;

use crate::algebra::{Field, MatGF, Subspace};
use crate::error::{invalid, Error, Result};
use crate::rank_codes::{mrd_matrix_code, LinearMatrixCode};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FerrersDiagram {
    cols: Vec<usize>,
}

impl FerrersDiagram {
    pub fn new(cols: Vec<usize>) -> Result<Self> {
        if cols.is_empty() {
            return invalid("a Ferrers diagram needs at least one column");
        }
        if cols[0] == 0 {
            return invalid("column dot counts must be positive");
        }
        if cols.windows(2).any(|w| w[0] > w[1]) {
            return invalid(format!("column dot counts {:?} are not non-decreasing", cols));
        }
        Ok(FerrersDiagram { cols })
    }

    /// The full `m x n` diagram.
    pub fn full(m: usize, n: usize) -> Result<Self> {
        Self::new(vec![m; n])
    }

    pub fn rows(&self) -> usize {
        *self.cols.last().unwrap()
    }

    pub fn num_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column_counts(&self) -> &[usize] {
        &self.cols
    }

    /// Dots in each row, top to bottom.
    pub fn row_counts(&self) -> Vec<usize> {
        (0..self.rows()).map(|r| self.cols.iter().filter(|&&g| g > r).count()).collect()
    }

    pub fn size(&self) -> usize {
        self.cols.iter().sum()
    }

    pub fn is_full(&self) -> bool {
        self.cols[0] == self.rows()
    }

    pub fn contains(&self, r: usize, c: usize) -> bool {
        c < self.cols.len() && r < self.cols[c]
    }

    /// Dot cells in row-major order.
    pub fn dots(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for r in 0..self.rows() {
            for c in 0..self.num_cols() {
                if self.contains(r, c) {
                    out.push((r, c));
                }
            }
        }
        out
    }

    /// The transposed diagram, `n x m`, obtained by reflecting in the
    /// anti-diagonal (see [`MatGF::anti_transpose`]).
    pub fn transpose(&self) -> Self {
        let rows = self.row_counts();
        FerrersDiagram { cols: rows.into_iter().rev().collect() }
    }

    /// True if `mat` has the diagram's shape and vanishes off the dots.
    pub fn supports(&self, mat: &MatGF) -> bool {
        mat.rows() == self.rows()
            && mat.cols() == self.num_cols()
            && (0..mat.cols()).all(|c| (self.cols[c]..mat.rows()).all(|r| mat.get(r, c) == 0))
    }
}

/// Upper bound on the dimension of a code on `f` with minimum rank `delta`:
/// the minimum over `i < delta` of the dots outside the first `i` rows and
/// the rightmost `delta - 1 - i` columns.
pub fn dimension_upper_bound(f: &FerrersDiagram, delta: usize) -> usize {
    assert!(delta >= 1);
    let n = f.num_cols();
    (0..delta)
        .map(|i| {
            let right = delta - 1 - i;
            f.cols[..n.saturating_sub(right)].iter().map(|&g| g.saturating_sub(i)).sum()
        })
        .min()
        .unwrap()
}

/// A linear code whose codewords are supported on a Ferrers diagram.
#[derive(Clone, Debug)]
pub struct FdrmCode {
    diagram: FerrersDiagram,
    delta: usize,
    code: LinearMatrixCode,
    suboptimal: bool,
}

impl FdrmCode {
    pub fn new(diagram: FerrersDiagram, delta: usize, code: LinearMatrixCode) -> Result<Self> {
        if code.rows() != diagram.rows() || code.cols() != diagram.num_cols() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} code on a {}x{} diagram",
                code.rows(),
                code.cols(),
                diagram.rows(),
                diagram.num_cols()
            )));
        }
        if !code.basis().iter().all(|b| diagram.supports(b)) {
            return Err(Error::OutsideDiagram);
        }
        Ok(FdrmCode { diagram, delta, code, suboptimal: false })
    }

    pub fn diagram(&self) -> &FerrersDiagram {
        &self.diagram
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn code(&self) -> &LinearMatrixCode {
        &self.code
    }

    pub fn field(&self) -> &Field {
        self.code.field()
    }

    pub fn dimension(&self) -> usize {
        self.code.dimension()
    }

    /// Set when a construction fell short of its target dimension.
    pub fn is_suboptimal(&self) -> bool {
        self.suboptimal
    }

    pub fn transpose(&self) -> Self {
        FdrmCode {
            diagram: self.diagram.transpose(),
            delta: self.delta,
            code: self.code.anti_transpose(),
            suboptimal: self.suboptimal,
        }
    }

    /// The subcode spanned by the first `k` basis matrices.
    pub fn truncate(&self, k: usize) -> Self {
        FdrmCode { code: self.code.truncate(k), ..self.clone() }
    }
}

/// Intersects the span of an MRD code with the matrices supported on `f`.
///
/// Reaches `sum_{i <= n - delta} gamma_i` whenever the rightmost `delta - 1`
/// columns of `f` (or of its transpose, if `f` has fewer rows than columns)
/// are full; otherwise the result may be flagged suboptimal.
pub fn fdrmc_shortening(field: &Field, f: &FerrersDiagram, delta: usize) -> Result<FdrmCode> {
    let (m, n) = (f.rows(), f.num_cols());
    if m < n {
        return Ok(fdrmc_shortening(field, &f.transpose(), delta)?.transpose());
    }
    if delta == 0 {
        return invalid("minimum rank distance must be positive");
    }
    if delta > n {
        return FdrmCode::new(f.clone(), delta, LinearMatrixCode::zero(field, m, n));
    }
    let target: usize = f.cols[..=n - delta].iter().sum();
    let mrd = mrd_matrix_code(field, m, n, delta)?;
    let outside: Vec<(usize, usize)> =
        (0..m).flat_map(|r| (0..n).map(move |c| (r, c))).filter(|&(r, c)| !f.contains(r, c)).collect();
    let basis = if outside.is_empty() {
        mrd.basis().to_vec()
    } else {
        let mut e = MatGF::zeros(field, outside.len(), mrd.dimension());
        for (p, &(r, c)) in outside.iter().enumerate() {
            for (t, b) in mrd.basis().iter().enumerate() {
                e.set(p, t, b.get(r, c));
            }
        }
        e.nullspace().iter().map(|x| mrd.codeword(x)).collect()
    };
    let code = LinearMatrixCode::new(field, m, n, basis)?;
    let mut out = FdrmCode::new(f.clone(), delta, code)?;
    out.suboptimal = out.dimension() < target;
    Ok(out)
}

/// An MRD code on the full `m x n` diagram.
pub fn fdrmc_full(field: &Field, m: usize, n: usize, delta: usize) -> Result<FdrmCode> {
    FdrmCode::new(FerrersDiagram::full(m, n)?, delta, mrd_matrix_code(field, m, n, delta)?)
}

/// Pairs the bases of `c1` (on `F1`) and `c2` (on `F2`) index by index on
/// the composite diagram `(F1 F3 / . F2)` with `F3` a full `m3 x n3` block
/// that stays zero. The minimum distance is the sum of the two.
pub fn fdrmc_block_sum_dim(c1: &FdrmCode, c2: &FdrmCode, m3: usize, n3: usize) -> Result<FdrmCode> {
    if c1.dimension() != c2.dimension() {
        return Err(Error::DimensionMismatch(format!(
            "component dimensions {} and {}",
            c1.dimension(),
            c2.dimension()
        )));
    }
    let (m1, n1) = (c1.diagram.rows(), c1.diagram.num_cols());
    let (m2, n2) = (c2.diagram.rows(), c2.diagram.num_cols());
    if m3 < m1 || n3 < n2 {
        return invalid(format!("full block {}x{} must cover {} rows and {} columns", m3, n3, m1, n2));
    }
    let mut cols = c1.diagram.cols.clone();
    cols.extend(std::iter::repeat(m3).take(n3 - n2));
    cols.extend(c2.diagram.cols.iter().map(|g| m3 + g));
    let diagram = FerrersDiagram::new(cols)?;
    let (m, n) = (m3 + m2, n1 + n3);
    let field = c1.field();
    let basis = c1
        .code
        .basis()
        .iter()
        .zip(c2.code.basis())
        .map(|(a, b)| {
            let mut d = MatGF::zeros(field, m, n);
            d.place(a, 0, 0);
            d.place(b, m3, n1 + n3 - n2);
            d
        })
        .collect();
    let code = LinearMatrixCode::new(field, m, n, basis)?;
    let mut out = FdrmCode::new(diagram, c1.delta + c2.delta, code)?;
    out.suboptimal = c1.suboptimal || c2.suboptimal;
    Ok(out)
}

/// Splits a code on `F12 = [gamma_0..gamma_{n1+n2-1}]` after column `n1`
/// and maps each codeword `D` to `diag(D|F1, D|F2^t)` on `(F1 F3 / . F2^t)`.
pub fn fdrmc_block_diag_distance(c12: &FdrmCode, n1: usize) -> Result<FdrmCode> {
    let total = c12.diagram.num_cols();
    if n1 == 0 || n1 > total {
        return invalid(format!("split {} must be in 1..={}", n1, total));
    }
    if n1 == total {
        return Ok(c12.clone());
    }
    let g = &c12.diagram.cols;
    let m1 = g[n1 - 1];
    let m12 = c12.diagram.rows();
    let f2 = FerrersDiagram::new(g[n1..].to_vec())?;
    let f2t = f2.transpose();
    let n2 = total - n1;
    let mut cols = g[..n1].to_vec();
    cols.extend(f2t.cols.iter().map(|x| m1 + x));
    let diagram = FerrersDiagram::new(cols)?;
    let (m, n) = (m1 + n2, n1 + m12);
    let field = c12.field();
    let basis = c12
        .code
        .basis()
        .iter()
        .map(|d| {
            let mut out = MatGF::zeros(field, m, n);
            out.place(&d.submatrix(0, m1, 0, n1), 0, 0);
            out.place(&d.submatrix(0, m12, n1, total).anti_transpose(), m1, n1);
            out
        })
        .collect();
    let code = LinearMatrixCode::new(field, m, n, basis)?;
    let mut out = FdrmCode::new(diagram, c12.delta, code)?;
    out.suboptimal = c12.suboptimal;
    Ok(out)
}

/// The echelon-Ferrers form of an identifying vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EchelonFerrersPattern {
    v: Vec<u8>,
    pivots: Vec<usize>,
    dots: Vec<(usize, usize)>,
    diagram: Option<FerrersDiagram>,
    diagram_columns: Vec<usize>,
}

pub fn echelon_ferrers_form(v: &[u8]) -> Result<EchelonFerrersPattern> {
    if v.iter().any(|&x| x > 1) {
        return invalid("identifying vector must be binary");
    }
    let pivots: Vec<usize> = (0..v.len()).filter(|&i| v[i] == 1).collect();
    if pivots.is_empty() {
        return invalid("identifying vector has weight 0");
    }
    let mut dots = Vec::new();
    for (r, &p) in pivots.iter().enumerate() {
        for c in p + 1..v.len() {
            if v[c] == 0 {
                dots.push((r, c));
            }
        }
    }
    let mut gammas = Vec::new();
    let mut diagram_columns = Vec::new();
    for c in 0..v.len() {
        let before = pivots.iter().filter(|&&p| p < c).count();
        if v[c] == 0 && before > 0 {
            gammas.push(before);
            diagram_columns.push(c);
        }
    }
    let diagram = if gammas.is_empty() { None } else { Some(FerrersDiagram::new(gammas)?) };
    Ok(EchelonFerrersPattern { v: v.to_vec(), pivots, dots, diagram, diagram_columns })
}

impl EchelonFerrersPattern {
    pub fn vector(&self) -> &[u8] {
        &self.v
    }

    pub fn n(&self) -> usize {
        self.v.len()
    }

    pub fn k(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Dot cells `(row, column)` of the `k x n` pattern, row-major.
    pub fn dots(&self) -> &[(usize, usize)] {
        &self.dots
    }

    /// Diagram formed by the dots; `None` when there are none.
    pub fn diagram(&self) -> Option<&FerrersDiagram> {
        self.diagram.as_ref()
    }

    /// Pattern column of each diagram column.
    pub fn diagram_columns(&self) -> &[usize] {
        &self.diagram_columns
    }

    /// The `k x n` RREF matrix with ones at the pivots and `filler` in the
    /// dots. A pattern without dots accepts any `0 x 0` or empty filler.
    pub fn fill_matrix(&self, field: &Field, filler: &MatGF) -> Result<MatGF> {
        let mut out = MatGF::zeros(field, self.k(), self.n());
        for (r, &p) in self.pivots.iter().enumerate() {
            out.set(r, p, 1);
        }
        match &self.diagram {
            None => {
                if !filler.is_zero() {
                    return Err(Error::OutsideDiagram);
                }
            }
            Some(d) => {
                if !d.supports(filler) {
                    return Err(Error::OutsideDiagram);
                }
                for (j, &c) in self.diagram_columns.iter().enumerate() {
                    for r in 0..d.column_counts()[j] {
                        out.set(r, c, filler.get(r, j));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn fill(&self, field: &Field, filler: &MatGF) -> Result<Subspace> {
        let m = self.fill_matrix(field, filler)?;
        Ok(Subspace::from_rref_parts(m, self.pivots.clone()))
    }

    /// Recovers the filler from a subspace with this identifying vector.
    pub fn extract(&self, u: &Subspace) -> Result<MatGF> {
        if u.identifying_vector() != self.v {
            return invalid("subspace does not match the identifying vector");
        }
        let d = self.diagram.as_ref().ok_or_else(|| Error::InvalidParameters("pattern has no dots".into()))?;
        let mut out = MatGF::zeros(u.field(), d.rows(), d.num_cols());
        for (j, &c) in self.diagram_columns.iter().enumerate() {
            for r in 0..d.rows() {
                out.set(r, j, u.basis().get(r, c));
            }
        }
        Ok(out)
    }
}
