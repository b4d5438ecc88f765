//! Cochain complexes of finite-dimensional pieces with rational differentials.

use num_traits::One;

use super::echelon::{Echelon, SparseVec};
use super::field::Rationals;
use super::{Coefficients, LinalgError, SparseMatrix};
use crate::rational::Q;

/// Pieces `0..len` in consecutive degrees starting at `first_degree`;
/// `diffs[i]` maps piece `i` to piece `i + 1`. A piece is `exact` when its
/// incoming and outgoing differentials are both known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedComplex {
    pub first_degree: i64,
    pub dims: Vec<usize>,
    pub diffs: Vec<SparseMatrix>,
    pub exact: Vec<bool>,
}

impl GradedComplex {
    pub fn new(first_degree: i64, dims: Vec<usize>, diffs: Vec<SparseMatrix>, exact: Vec<bool>) -> Result<Self, LinalgError> {
        if diffs.len() + 1 != dims.len().max(1) || exact.len() != dims.len() {
            return Err(LinalgError::DimensionMismatch(format!(
                "{} pieces, {} differentials, {} flags",
                dims.len(),
                diffs.len(),
                exact.len()
            )));
        }
        for (i, m) in diffs.iter().enumerate() {
            if m.cols() != dims[i] || m.rows() != dims[i + 1] {
                return Err(LinalgError::DimensionMismatch(format!(
                    "differential {i} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dims[i + 1],
                    dims[i]
                )));
            }
        }
        Ok(GradedComplex { first_degree, dims, diffs, exact })
    }

    /// A complex whose last piece has an unknown outgoing differential.
    pub fn truncated(first_degree: i64, dims: Vec<usize>, diffs: Vec<SparseMatrix>) -> Result<Self, LinalgError> {
        let mut exact = vec![true; dims.len()];
        if let Some(last) = exact.last_mut() {
            *last = false;
        }
        GradedComplex::new(first_degree, dims, diffs, exact)
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn degree(&self, piece: usize) -> i64 {
        self.first_degree + piece as i64
    }

    /// Checks that consecutive differentials compose to zero.
    pub fn check(&self) -> Result<(), LinalgError> {
        for i in 0..self.diffs.len().saturating_sub(1) {
            if !self.diffs[i + 1].mul(&self.diffs[i])?.is_zero() {
                return Err(LinalgError::NotAComplex(self.degree(i)));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyEntry {
    pub degree: i64,
    pub dim: usize,
    pub exact: bool,
}

/// Cohomology dimensions per degree; inexact entries are upper bounds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CohomologyTable {
    pub entries: Vec<CohomologyEntry>,
}

impl CohomologyTable {
    pub fn get(&self, degree: i64) -> Option<&CohomologyEntry> {
        self.entries.iter().find(|e| e.degree == degree)
    }

    /// `(degree, dim)` for the exact entries with nonzero dimension.
    pub fn nonzero_exact(&self) -> Vec<(i64, usize)> {
        self.entries.iter().filter(|e| e.exact && e.dim > 0).map(|e| (e.degree, e.dim)).collect()
    }
}

pub fn cohomology_dims_with(cx: &GradedComplex, coeff: Coefficients) -> Result<CohomologyTable, LinalgError> {
    cx.check()?;
    let ranks: Vec<usize> = cx.diffs.iter().map(|m| m.rank_with(coeff)).collect();
    let entries = (0..cx.len())
        .map(|i| {
            let out = ranks.get(i).copied().unwrap_or(0);
            let inc = if i == 0 { 0 } else { ranks[i - 1] };
            CohomologyEntry { degree: cx.degree(i), dim: cx.dims[i] - out - inc, exact: cx.exact[i] }
        })
        .collect();
    Ok(CohomologyTable { entries })
}

pub fn cohomology_dims(cx: &GradedComplex) -> Result<CohomologyTable, LinalgError> {
    cohomology_dims_with(cx, Coefficients::default())
}

/// Whether the cycle `v` in piece `piece` is the image of the incoming differential.
pub fn is_coboundary(v: &SparseVec<Q>, cx: &GradedComplex, piece: usize) -> Result<bool, LinalgError> {
    if let Some(d) = cx.diffs.get(piece) {
        if !d.apply(v).is_empty() {
            return Err(LinalgError::NotACycle);
        }
    }
    if piece == 0 || v.is_empty() {
        return Ok(v.is_empty());
    }
    let mut ech = Echelon::new(Rationals);
    let mut cols = cx.diffs[piece - 1].columns().to_vec();
    cols.sort_by_key(Vec::len);
    for c in cols {
        ech.insert(c);
    }
    Ok(ech.contains(v))
}

/// Cycles in one piece representing a basis of its cohomology.
pub struct CohomologyBasis {
    pub reps: Vec<SparseVec<Q>>,
    outgoing: Option<SparseMatrix>,
    span: Echelon<Rationals>,
}

impl CohomologyBasis {
    /// Coordinates of the class of the cycle `v` in terms of `reps`.
    pub fn classify(&self, v: &SparseVec<Q>) -> Result<SparseVec<Q>, LinalgError> {
        if self.outgoing.as_ref().is_some_and(|d| !d.apply(v).is_empty()) {
            return Err(LinalgError::NotACycle);
        }
        self.span.solve(v).ok_or(LinalgError::NotACycle)
    }
}

/// Representatives for the cohomology at `piece`: kernel vectors independent
/// modulo the image of the incoming differential.
pub fn cohomology_basis(cx: &GradedComplex, piece: usize) -> Result<CohomologyBasis, LinalgError> {
    cx.check()?;
    let mut span = Echelon::new(Rationals);
    if piece > 0 {
        let mut cols = cx.diffs[piece - 1].columns().to_vec();
        cols.sort_by_key(Vec::len);
        for c in cols {
            span.insert(c);
        }
    }
    let outgoing = cx.diffs.get(piece).cloned();
    let kernel = match &outgoing {
        Some(d) => d.kernel(),
        None => (0..cx.dims[piece]).map(|i| vec![(i, Q::one())]).collect(),
    };
    let mut reps = Vec::new();
    for v in kernel {
        if span.insert_tagged(v.clone(), vec![(reps.len(), Q::one())]) {
            reps.push(v);
        }
    }
    Ok(CohomologyBasis { reps, outgoing, span })
}

/// A complex divided by a differential-closed graded subspace. The quotient
/// basis of each piece consists of the ambient coordinates left free by the
/// echelon form of the subspace.
pub struct QuotientComplex {
    pub complex: GradedComplex,
    /// Ambient coordinates of the quotient basis, per piece.
    pub reps: Vec<Vec<usize>>,
    pub sub_dims: Vec<usize>,
    position: Vec<Vec<Option<usize>>>,
    order: Vec<Vec<usize>>,
    echelons: Vec<Echelon<Rationals>>,
}

impl QuotientComplex {
    /// Quotient coordinates of an ambient vector of piece `piece`.
    pub fn project(&self, piece: usize, v: &SparseVec<Q>) -> SparseVec<Q> {
        let rank = &self.order[piece];
        let mut w: SparseVec<Q> = v.iter().map(|(i, x)| (rank[*i], x.clone())).collect();
        w.sort_by_key(|e| e.0);
        let r = self.echelons[piece].reduce_full(&w);
        let inverse = invert(rank);
        let mut out: SparseVec<Q> = r
            .into_iter()
            .map(|(i, x)| (self.position[piece][inverse[i]].expect("reduced onto free coordinates"), x))
            .collect();
        out.sort_by_key(|e| e.0);
        out
    }

    /// Whether an ambient vector lies in the subspace.
    pub fn contains(&self, piece: usize, v: &SparseVec<Q>) -> bool {
        self.project(piece, v).is_empty()
    }

    /// The ambient vector of a quotient basis element.
    pub fn lift(&self, piece: usize, i: usize) -> SparseVec<Q> {
        vec![(self.reps[piece][i], Q::one())]
    }
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

/// Divides `cx` by the span of `sub[i]` in each piece. Coordinates flagged in
/// `prefer` are used as pivots first, so they leave the quotient basis when
/// possible.
pub fn quotient_complex(
    cx: &GradedComplex,
    sub: &[Vec<SparseVec<Q>>],
    prefer: Option<&[Vec<bool>]>,
) -> Result<QuotientComplex, LinalgError> {
    if sub.len() != cx.len() {
        return Err(LinalgError::DimensionMismatch(format!("{} subspaces for {} pieces", sub.len(), cx.len())));
    }
    let mut order = Vec::new();
    let mut echelons = Vec::new();
    let mut reps = Vec::new();
    let mut position = Vec::new();
    let mut sub_dims = Vec::new();
    for (i, vecs) in sub.iter().enumerate() {
        let n = cx.dims[i];
        let mut seq: Vec<usize> = (0..n).collect();
        if let Some(p) = prefer {
            seq.sort_by_key(|&j| (!p[i][j], j));
        }
        let rank = invert(&seq);
        let mut ech = Echelon::new(Rationals);
        let mut permuted: Vec<SparseVec<Q>> = vecs
            .iter()
            .map(|v| {
                let mut w: SparseVec<Q> = v.iter().map(|(j, x)| (rank[*j], x.clone())).collect();
                w.sort_by_key(|e| e.0);
                w
            })
            .collect();
        permuted.sort_by_key(Vec::len);
        for w in permuted {
            ech.insert(w);
        }
        let free: Vec<usize> = (0..n).filter(|&j| !ech.is_pivot(rank[j])).collect();
        let mut pos = vec![None; n];
        for (k, &j) in free.iter().enumerate() {
            pos[j] = Some(k);
        }
        sub_dims.push(ech.rank());
        order.push(rank);
        echelons.push(ech);
        reps.push(free);
        position.push(pos);
    }
    let mut q = QuotientComplex {
        complex: GradedComplex { first_degree: cx.first_degree, dims: Vec::new(), diffs: Vec::new(), exact: cx.exact.clone() },
        reps,
        sub_dims,
        position,
        order,
        echelons,
    };
    for (i, d) in cx.diffs.iter().enumerate() {
        for v in &sub[i] {
            if !q.contains(i + 1, &d.apply(v)) {
                return Err(LinalgError::NotDifferentialClosed(cx.degree(i)));
            }
        }
        let cols: Vec<SparseVec<Q>> = q.reps[i].iter().map(|&j| q.project(i + 1, d.column(j))).collect();
        q.complex.diffs.push(SparseMatrix::from_columns(q.reps[i + 1].len(), cols));
    }
    q.complex.dims = q.reps.iter().map(Vec::len).collect();
    Ok(q)
}
