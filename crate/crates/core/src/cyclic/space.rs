//! Graded vector spaces with a pairing and an optional differential.

use num_traits::Zero;

use super::CyclicError;
use crate::rational::{fmt_q, Q};

pub type Letter = u16;

pub(crate) fn odd(deg: i64) -> bool {
    deg.rem_euclid(2) == 1
}

/// Basis letters with degrees, a pairing `Θ` of degree `1 − d` and a
/// differential `∂` of degree one, given on letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSpace {
    d: i32,
    names: Vec<String>,
    degrees: Vec<i64>,
    theta: Vec<Vec<Q>>,
    differential: Vec<Vec<(Letter, Q)>>,
}

impl GradedSpace {
    /// Validates degrees, the symmetry `Θ(b,a) = (−1)^{d+|a||b|} Θ(a,b)`, and,
    /// when a differential is given, `∂² = 0` and `Θ(∂a,b) + (−1)^{|a|} Θ(a,∂b) = 0`.
    pub fn new(
        d: i32,
        names: Vec<String>,
        degrees: Vec<i64>,
        theta: Vec<Vec<Q>>,
        differential: Option<Vec<Vec<(Letter, Q)>>>,
    ) -> Result<Self, CyclicError> {
        let n = names.len();
        if degrees.len() != n || theta.len() != n || theta.iter().any(|r| r.len() != n) {
            return Err(CyclicError::Invalid(format!("{n} letters need {n} degrees and an {n}x{n} pairing")));
        }
        if n > Letter::MAX as usize {
            return Err(CyclicError::Invalid("too many letters".into()));
        }
        for (i, a) in names.iter().enumerate() {
            if a.is_empty() || a.contains([',', '|', ';', ' ']) || names[..i].contains(a) {
                return Err(CyclicError::Invalid(format!("bad or repeated letter name {a:?}")));
            }
        }
        let differential = differential.unwrap_or_else(|| vec![Vec::new(); n]);
        if differential.len() != n {
            return Err(CyclicError::Invalid("differential must be given on every letter".into()));
        }
        let space = GradedSpace { d, names, degrees, theta, differential };
        space.validate()?;
        Ok(space)
    }

    fn validate(&self) -> Result<(), CyclicError> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                let t = &self.theta[a][b];
                if t.is_zero() {
                    continue;
                }
                if self.degrees[a] + self.degrees[b] != self.d as i64 - 1 {
                    return Err(CyclicError::PairingDegreeMismatch(format!(
                        "Θ({}, {}) = {} but the degrees sum to {}",
                        self.names[a],
                        self.names[b],
                        fmt_q(t),
                        self.degrees[a] + self.degrees[b]
                    )));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let s = odd(self.d as i64 + self.degrees[a] * self.degrees[b]);
                let expect = if s { -self.theta[a][b].clone() } else { self.theta[a][b].clone() };
                if self.theta[b][a] != expect {
                    return Err(CyclicError::PairingSymmetry(self.names[a].clone(), self.names[b].clone()));
                }
            }
        }
        for a in 0..n {
            for (b, c) in &self.differential[a] {
                if *b as usize >= n {
                    return Err(CyclicError::DifferentialError(format!("unknown letter index {b}")));
                }
                if !c.is_zero() && self.degrees[*b as usize] != self.degrees[a] + 1 {
                    return Err(CyclicError::DifferentialError(format!(
                        "∂{} contains {} of the wrong degree",
                        self.names[a], self.names[*b as usize]
                    )));
                }
            }
            let mut sq = vec![Q::zero(); n];
            for (b, c) in &self.differential[a] {
                for (e, f) in &self.differential[*b as usize] {
                    sq[*e as usize] += c * f;
                }
            }
            if sq.iter().any(|x| !x.is_zero()) {
                return Err(CyclicError::DifferentialError(format!("∂² ≠ 0 on {}", self.names[a])));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let mut s = Q::zero();
                for (x, c) in &self.differential[a] {
                    s += c * &self.theta[*x as usize][b];
                }
                let sign = if odd(self.degrees[a]) { -1 } else { 1 };
                for (x, c) in &self.differential[b] {
                    s += c * &self.theta[a][*x as usize] * Q::from_integer(sign.into());
                }
                if !s.is_zero() {
                    return Err(CyclicError::DifferentialError(format!(
                        "Θ is not compatible with ∂ on ({}, {})",
                        self.names[a], self.names[b]
                    )));
                }
            }
        }
        Ok(())
    }

    /// The ribbon graph parameter: `Θ` has degree `1 − d`.
    pub fn d(&self) -> i32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn degree(&self, a: Letter) -> i64 {
        self.degrees[a as usize]
    }

    pub fn name(&self, a: Letter) -> &str {
        &self.names[a as usize]
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.names.iter().position(|x| x == name).map(|i| i as Letter)
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.len() as Letter
    }

    pub fn theta(&self, a: Letter, b: Letter) -> &Q {
        &self.theta[a as usize][b as usize]
    }

    pub fn theta_matrix(&self) -> &[Vec<Q>] {
        &self.theta
    }

    pub fn has_differential(&self) -> bool {
        self.differential.iter().any(|r| r.iter().any(|(_, c)| !c.is_zero()))
    }

    pub fn differential(&self, a: Letter) -> &[(Letter, Q)] {
        &self.differential[a as usize]
    }

    /// Sum of the degrees of a sequence of letters.
    pub fn word_degree(&self, letters: &[Letter]) -> i64 {
        letters.iter().map(|&a| self.degree(a)).sum()
    }
}
