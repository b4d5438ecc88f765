//! Exact sparse linear algebra: ranks over the rationals with a two-prime fast
//! path, cochain complexes and their cohomology, quotients by subcomplexes.

pub mod complex;
pub mod echelon;
pub mod field;
pub mod sms;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::Q;
pub use complex::{cohomology_basis, cohomology_dims, cohomology_dims_with, is_coboundary, quotient_complex, CohomologyBasis, CohomologyEntry, CohomologyTable, GradedComplex, QuotientComplex};
pub use echelon::{Echelon, SparseVec};
pub use field::{Field, ModP, Rationals, PRIME_A, PRIME_B};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("consecutive differentials do not compose to zero at degree {0}")]
    NotAComplex(i64),
    #[error("vector is not a cycle")]
    NotACycle,
    #[error("subspace is not closed under the differential at degree {0}")]
    NotDifferentialClosed(i64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0} is not a prime")]
    NotAPrime(u64),
}

/// How ranks are computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Coefficients {
    /// Exact rational elimination.
    Rational,
    /// Elimination modulo both primes; accepted when they agree, otherwise
    /// the rational rank is computed.
    TwoPrimes(u64, u64),
}

impl Default for Coefficients {
    fn default() -> Self {
        Coefficients::TwoPrimes(PRIME_A, PRIME_B)
    }
}

/// A rational matrix stored by columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<SparseVec<Q>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMatrix { rows: n, columns: (0..n).map(|i| vec![(i, Q::from_integer(1.into()))]).collect() }
    }

    /// Columns must be sorted, zero-free and in range.
    pub fn from_columns(rows: usize, columns: Vec<SparseVec<Q>>) -> Self {
        debug_assert!(columns.iter().all(|c| c.windows(2).all(|w| w[0].0 < w[1].0)));
        debug_assert!(columns.iter().flatten().all(|(i, x)| *i < rows && !x.is_zero()));
        SparseMatrix { rows, columns }
    }

    /// Duplicate entries are summed.
    pub fn from_triplets(rows: usize, cols: usize, entries: impl IntoIterator<Item = (usize, usize, Q)>) -> Result<Self, LinalgError> {
        let mut columns: Vec<std::collections::BTreeMap<usize, Q>> = vec![Default::default(); cols];
        for (i, j, x) in entries {
            if i >= rows || j >= cols {
                return Err(LinalgError::DimensionMismatch(format!("entry ({i}, {j}) outside {rows}x{cols}")));
            }
            *columns[j].entry(i).or_insert_with(Q::zero) += x;
        }
        let columns = columns.into_iter().map(|c| c.into_iter().filter(|(_, x)| !x.is_zero()).collect()).collect();
        Ok(SparseMatrix { rows, columns })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec<Q> {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec<Q>] {
        &self.columns
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    /// Entries `(i, j, value)` in column-major order.
    pub fn triplets(&self) -> Vec<(usize, usize, Q)> {
        let mut out = Vec::with_capacity(self.nnz());
        for (j, c) in self.columns.iter().enumerate() {
            out.extend(c.iter().map(|(i, x)| (*i, j, x.clone())));
        }
        out
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut columns = vec![Vec::new(); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, x) in c {
                columns[*i].push((j, x.clone()));
            }
        }
        SparseMatrix { rows: self.cols(), columns }
    }

    pub fn apply(&self, v: &SparseVec<Q>) -> SparseVec<Q> {
        let mut out = Vec::new();
        for (j, x) in v {
            out = echelon::axpy(&Rationals, &out, x, &self.columns[*j]);
        }
        out
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix, LinalgError> {
        if self.cols() != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows,
                self.cols(),
                other.rows,
                other.cols()
            )));
        }
        Ok(SparseMatrix { rows: self.rows, columns: other.columns.iter().map(|c| self.apply(c)).collect() })
    }

    pub fn rank_rational(&self) -> usize {
        echelon::rank_of(Rationals, self.columns.clone())
    }

    /// Rank over `F_p`; `None` when some entry has a denominator divisible by `p`.
    pub fn rank_mod_p(&self, p: u64) -> Option<usize> {
        let f = ModP(p);
        let mut vecs = Vec::with_capacity(self.cols());
        for c in &self.columns {
            let mut v = Vec::with_capacity(c.len());
            for (i, x) in c {
                let y = f.from_q(x)?;
                if y != 0 {
                    v.push((*i, y));
                }
            }
            vecs.push(v);
        }
        Some(echelon::rank_of(f, vecs))
    }

    pub fn rank_with(&self, coeff: Coefficients) -> usize {
        match coeff {
            Coefficients::Rational => self.rank_rational(),
            Coefficients::TwoPrimes(p, q) => match (self.rank_mod_p(p), self.rank_mod_p(q)) {
                (Some(a), Some(b)) if a == b => a,
                _ => self.rank_rational(),
            },
        }
    }

    pub fn rank(&self) -> usize {
        self.rank_with(Coefficients::default())
    }

    /// A basis of the kernel.
    pub fn kernel(&self) -> Vec<SparseVec<Q>> {
        let mut ech = Echelon::new(Rationals);
        let mut out = Vec::new();
        for (j, c) in self.columns.iter().enumerate() {
            if let Some(rel) = ech.insert_or_relation(c.clone(), vec![(j, Q::from_integer(1.into()))]) {
                out.push(rel);
            }
        }
        out
    }
}

/// Inverse of a square rational matrix.
pub fn invert_dense(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let inv = Q::one() / &a[col][col];
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for k in 0..2 * n {
                    let sub = &f * &a[col][k];
                    a[r][k] -= sub;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_frac};

    fn m(rows: usize, cols: usize, e: &[(usize, usize, i64)]) -> SparseMatrix {
        SparseMatrix::from_triplets(rows, cols, e.iter().map(|&(i, j, x)| (i, j, q(x)))).unwrap()
    }

    #[test]
    fn trivial_ranks() {
        assert_eq!(SparseMatrix::zero(3, 4).rank(), 0);
        assert_eq!(SparseMatrix::identity(5).rank(), 5);
    }

    #[test]
    fn rank_is_transpose_invariant_and_kernel_is_killed() {
        let a = m(3, 4, &[(0, 0, 1), (1, 0, 2), (0, 1, 2), (1, 1, 4), (2, 2, 3), (0, 3, 1), (1, 3, 2), (2, 3, 3)]);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.transpose().rank(), 2);
        assert_eq!(a.rank_rational(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.apply(v).is_empty());
        }
    }

    #[test]
    fn small_prime_disagreement_falls_back() {
        let a = m(2, 2, &[(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 3)]);
        assert_eq!(a.rank_mod_p(2), Some(1));
        assert_eq!(a.rank_with(Coefficients::TwoPrimes(2, 3)), 2);
        let h = SparseMatrix::from_triplets(1, 1, [(0, 0, q_frac(1, 3))]).unwrap();
        assert_eq!(h.rank_mod_p(3), None);
        assert_eq!(h.rank_with(Coefficients::TwoPrimes(3, 5)), 1);
    }

    #[test]
    fn product() {
        let a = m(2, 2, &[(0, 1, 1)]);
        assert!(a.mul(&a).unwrap().is_zero());
        assert!(a.mul(&SparseMatrix::zero(3, 1)).is_err());
    }
}
