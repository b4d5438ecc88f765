//! Maurer–Cartan elements, the twisted differential and cyclic Hochschild
//! complexes.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rayon::prelude::*;

use super::represent::{extend_derivation, lie_bracket, word_differential};
use super::space::{odd, GradedSpace, Letter};
use super::word::{cyclic_normalize, CyclicWord, WordSum};
use super::CyclicError;
use crate::linalg::{invert_dense, GradedComplex, SparseMatrix, SparseVec};
use crate::rational::{q, Q};

/// An element of degree `d` supported on words of length at least three.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MCElement {
    pub gamma: WordSum,
    pub mc_verified: bool,
}

impl MCElement {
    pub fn new(space: &GradedSpace, gamma: WordSum) -> Result<Self, CyclicError> {
        let mc_verified = mc_check(space, &gamma)?;
        Ok(MCElement { gamma, mc_verified })
    }
}

fn check_mc_shape(space: &GradedSpace, gamma: &WordSum) -> Result<(), CyclicError> {
    for (t, _) in gamma.iter() {
        let [w] = t.as_slice() else {
            return Err(CyclicError::DegreeError("γ must be a sum of single words".into()));
        };
        if w.len() < 3 {
            return Err(CyclicError::DegreeError(format!("γ has a word of length {}", w.len())));
        }
        if w.degree(space) != space.d() as i64 {
            return Err(CyclicError::DegreeError(format!("γ has a word of degree {}, expected {}", w.degree(space), space.d())));
        }
    }
    Ok(())
}

/// `∂γ + ½[γ,γ] = 0`.
pub fn mc_check(space: &GradedSpace, gamma: &WordSum) -> Result<bool, CyclicError> {
    check_mc_shape(space, gamma)?;
    let mut s = lie_bracket(space, gamma, gamma)?.scaled(&Q::new(1.into(), 2.into()));
    s.add(&internal(space, gamma), &Q::one());
    Ok(s.is_zero())
}

fn internal(space: &GradedSpace, x: &WordSum) -> WordSum {
    extend_derivation(space, x, 1, &|w| Ok(word_differential(space, w))).expect("infallible")
}

/// `∂_γ x = ∂x + [γ, x]` on a sum of single words.
pub fn twisted_differential(space: &GradedSpace, gamma: &WordSum, x: &WordSum) -> Result<WordSum, CyclicError> {
    let mut s = internal(space, x);
    if !gamma.is_zero() {
        s.add(&lie_bracket(space, gamma, x)?, &Q::one());
    }
    Ok(s)
}

/// `∂_γ` extended to tuples of words as a derivation.
pub fn twisted_differential_tuples(space: &GradedSpace, gamma: &WordSum, x: &WordSum) -> Result<WordSum, CyclicError> {
    extend_derivation(space, x, 1, &|w| twisted_differential(space, gamma, &WordSum::word(w.clone())))
}

/// Multilinear operation on the dual letters `ε_a`: inputs to a combination
/// of outputs.
pub type MultiLinear = BTreeMap<Vec<Letter>, Vec<(Letter, Q)>>;

/// The cyclically invariant tensor lifting a sum of cyclic words: each
/// rotation `ℓ` of a word `u` with coefficient `c` gets `c · s(ℓ) / #rotations`,
/// where `ℓ = s(ℓ)·u`.
pub fn invariant_tensor(space: &GradedSpace, x: &WordSum) -> BTreeMap<Vec<Letter>, Q> {
    let mut out: BTreeMap<Vec<Letter>, Q> = BTreeMap::new();
    for (t, c) in x.iter() {
        let [u] = t.as_slice() else { continue };
        let k = u.len();
        let mut rots: Vec<Vec<Letter>> = (0..k.max(1))
            .map(|r| {
                let mut v = u.letters()[r.min(k)..].to_vec();
                v.extend_from_slice(&u.letters()[..r.min(k)]);
                v
            })
            .collect();
        rots.sort();
        rots.dedup();
        let share = c / q(rots.len() as i64);
        for l in rots {
            let (_, s) = cyclic_normalize(space, &l);
            let e = out.entry(l).or_insert_with(Q::zero);
            if s < 0 {
                *e -= &share;
            } else {
                *e += &share;
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// The operations `μ_k`, `k ≥ 2`, on the dual letters, obtained from the
/// length-`(k+1)` part of `γ` by raising its first index with `Θ⁻¹`.
pub fn mc_to_ainfty(space: &GradedSpace, gamma: &WordSum) -> Result<BTreeMap<usize, MultiLinear>, CyclicError> {
    let inv = invert_dense(space.theta_matrix()).ok_or(CyclicError::DegeneratePairing)?;
    let mut ops: BTreeMap<usize, MultiLinear> = BTreeMap::new();
    for (l, c) in invariant_tensor(space, gamma) {
        let k = l.len() - 1;
        let (b, ins) = l.split_at(1);
        let b = b[0] as usize;
        let entry = ops.entry(k).or_default().entry(ins.to_vec()).or_default();
        for (e, row) in inv.iter().enumerate() {
            if !row[b].is_zero() {
                entry.push((e as Letter, &c * &row[b]));
            }
        }
    }
    for op in ops.values_mut() {
        for outs in op.values_mut() {
            let mut merged: BTreeMap<Letter, Q> = BTreeMap::new();
            for (e, x) in outs.drain(..) {
                *merged.entry(e).or_insert_with(Q::zero) += x;
            }
            outs.extend(merged.into_iter().filter(|(_, x)| !x.is_zero()));
        }
        op.retain(|_, outs| !outs.is_empty());
    }
    Ok(ops)
}

/// Checks `Σ μ(1^r ⊗ μ ⊗ 1^t) = 0` with Koszul signs on inputs of total
/// arity up to `max_arity`, where `ε_a` has degree `−|a|`. Returns the first
/// input sequence violating it.
pub fn ainfty_violation(space: &GradedSpace, ops: &BTreeMap<usize, MultiLinear>, max_arity: usize) -> Option<Vec<Letter>> {
    let deg = |a: Letter| -space.degree(a);
    let apply = |k: usize, ins: &[Letter]| -> Vec<(Letter, Q)> {
        ops.get(&k).and_then(|op| op.get(ins)).cloned().unwrap_or_default()
    };
    let letters: Vec<Letter> = space.letters().collect();
    let mut seq = Vec::new();
    fn rec(
        n: usize,
        letters: &[Letter],
        seq: &mut Vec<Letter>,
        check: &mut dyn FnMut(&[Letter]) -> bool,
    ) -> Option<Vec<Letter>> {
        if seq.len() == n {
            return (!check(seq)).then(|| seq.clone());
        }
        for &a in letters {
            seq.push(a);
            if let Some(v) = rec(n, letters, seq, check) {
                return Some(v);
            }
            seq.pop();
        }
        None
    }
    for n in 3..=max_arity {
        let mut check = |u: &[Letter]| {
            let mut total: BTreeMap<Letter, Q> = BTreeMap::new();
            for s in 2..n {
                for r in 0..=n - s {
                    let before: i64 = u[..r].iter().map(|&a| deg(a)).sum();
                    for (m, c) in apply(s, &u[r..r + s]) {
                        let mut outer: Vec<Letter> = u[..r].to_vec();
                        outer.push(m);
                        outer.extend_from_slice(&u[r + s..]);
                        for (e, c2) in apply(outer.len(), &outer) {
                            let v = &c * &c2;
                            let t = total.entry(e).or_insert_with(Q::zero);
                            if odd(before) {
                                *t -= v;
                            } else {
                                *t += v;
                            }
                        }
                    }
                }
            }
            total.values().all(Zero::is_zero)
        };
        if let Some(v) = rec(n, &letters, &mut seq, &mut check) {
            return Some(v);
        }
    }
    None
}

/// Bases of cyclic words by degree together with the matrices of `∂_γ`.
#[derive(Clone, Debug)]
pub struct HochschildComplex {
    pub bases: Vec<Vec<CyclicWord>>,
    pub complex: GradedComplex,
    pub cutoff: usize,
}

impl HochschildComplex {
    pub fn degree_of_piece(&self, i: usize) -> i64 {
        self.complex.degree(i)
    }

    /// Piece and coordinates of a homogeneous sum of single words in the basis.
    pub fn coordinates(&self, space: &GradedSpace, x: &WordSum) -> Option<(usize, SparseVec<Q>)> {
        let deg = x.degree(space)?;
        let piece = usize::try_from(deg - self.complex.first_degree).ok()?;
        let basis = self.bases.get(piece)?;
        let mut v = Vec::new();
        for (t, c) in x.iter() {
            let [w] = t.as_slice() else { return None };
            v.push((basis.binary_search(w).ok()?, c.clone()));
        }
        v.sort_by_key(|e| e.0);
        Some((piece, v))
    }
}

/// Canonical nonzero words of the given length over `letters`.
pub fn cyclic_words(space: &GradedSpace, letters: &[Letter], len: usize) -> Vec<CyclicWord> {
    let mut out = Vec::new();
    if len == 0 {
        out.push(CyclicWord::empty());
        return out;
    }
    let mut sorted = letters.to_vec();
    sorted.sort_unstable();
    let mut seq = Vec::with_capacity(len);
    fn rec(space: &GradedSpace, letters: &[Letter], len: usize, seq: &mut Vec<Letter>, out: &mut Vec<CyclicWord>) {
        if seq.len() == len {
            let (w, s) = cyclic_normalize(space, seq);
            if s == 1 && w.letters() == seq.as_slice() {
                out.push(w);
            }
            return;
        }
        for &a in letters {
            if !seq.is_empty() && a < seq[0] {
                continue;
            }
            seq.push(a);
            rec(space, letters, len, seq, out);
            seq.pop();
        }
    }
    rec(space, &sorted, len, &mut seq, &mut out);
    out
}

/// Whether some word longer than `cutoff` over letters of the given degrees
/// can have total degree `n`.
fn reachable_beyond(degrees: &[i64], cutoff: usize, n: i64) -> bool {
    let (lo, hi) = (*degrees.iter().min().unwrap(), *degrees.iter().max().unwrap());
    if lo <= 0 && hi >= 0 {
        return true;
    }
    // all letters on one side of zero: length L reaches degrees in [L·lo, L·hi]
    let l = (cutoff + 1) as i64;
    if hi < 0 {
        n <= l * hi
    } else {
        n >= l * lo
    }
}

/// The cyclic Hochschild complex on words over `letters` of length at most
/// `cutoff` (from 1, or from 0 when `include_empty`), graded by degree.
/// A degree is exact when no longer word can reach it or its neighbours.
/// Fails with `ReducedViolation` when `∂_γ` leaves the allowed letters.
pub fn hochschild_complex(
    space: &GradedSpace,
    gamma: &WordSum,
    letters: &[Letter],
    include_empty: bool,
    cutoff: usize,
) -> Result<HochschildComplex, CyclicError> {
    check_mc_shape(space, gamma)?;
    let mut words: Vec<CyclicWord> = Vec::new();
    for len in (if include_empty { 0 } else { 1 })..=cutoff {
        words.extend(cyclic_words(space, letters, len));
    }
    if words.is_empty() || letters.is_empty() {
        let complex = GradedComplex::new(0, vec![0], Vec::new(), vec![true])?;
        return Ok(HochschildComplex { bases: vec![Vec::new()], complex, cutoff });
    }
    let lo = words.iter().map(|w| w.degree(space)).min().unwrap() - 1;
    let hi = words.iter().map(|w| w.degree(space)).max().unwrap() + 1;
    let pieces = (hi - lo + 1) as usize;
    let mut bases: Vec<Vec<CyclicWord>> = vec![Vec::new(); pieces];
    for w in words {
        bases[(w.degree(space) - lo) as usize].push(w);
    }
    for b in &mut bases {
        b.sort();
    }
    let index: Vec<HashMap<&CyclicWord, usize>> =
        bases.iter().map(|b| b.iter().enumerate().map(|(i, w)| (w, i)).collect()).collect();
    let mut diffs = Vec::with_capacity(pieces - 1);
    for i in 0..pieces - 1 {
        let cols: Result<Vec<SparseVec<Q>>, CyclicError> = bases[i]
            .par_iter()
            .map(|w| {
                let img = twisted_differential(space, gamma, &WordSum::word(w.clone()))?;
                let mut col = Vec::new();
                for (t, c) in img.iter() {
                    let u = &t[0];
                    if let Some(&r) = index[i + 1].get(u) {
                        col.push((r, c.clone()));
                    } else if u.len() <= cutoff && (include_empty || !u.is_empty()) {
                        return Err(CyclicError::ReducedViolation(format!("{:?} contains a letter outside the complex", u.letters())));
                    }
                }
                col.sort_by_key(|e| e.0);
                Ok(col)
            })
            .collect();
        diffs.push(SparseMatrix::from_columns(bases[i + 1].len(), cols?));
    }
    let degs: Vec<i64> = letters.iter().map(|&a| space.degree(a)).collect();
    let exact: Vec<bool> =
        (0..pieces).map(|i| (-1..=1).all(|o| !reachable_beyond(&degs, cutoff, lo + i as i64 + o))).collect();
    let dims = bases.iter().map(Vec::len).collect();
    let complex = GradedComplex::new(lo, dims, diffs, exact)?;
    Ok(HochschildComplex { bases, complex, cutoff })
}
