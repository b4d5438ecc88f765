//! Finite linear combinations of canonical ribbon graphs.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::rational::{fmt_q, Q};
use crate::ribbon::RibbonGraph;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalSum {
    terms: BTreeMap<RibbonGraph, Q>,
}

impl FormalSum {
    pub fn new() -> Self {
        FormalSum::default()
    }

    pub fn from_graph(g: &RibbonGraph) -> Self {
        let mut s = FormalSum::new();
        s.add_graph(g, &Q::one());
        s
    }

    /// Adds `c·g`, canonicalizing `g` first; zero graphs are dropped.
    pub fn add_graph(&mut self, g: &RibbonGraph, c: &Q) {
        let (canon, s) = g.canonicalize();
        match s {
            0 => {}
            1 => self.add_canonical(canon, c.clone()),
            _ => self.add_canonical(canon, -c.clone()),
        }
    }

    /// Adds a term whose key is already canonical with sign `+1`.
    pub fn add_canonical(&mut self, g: RibbonGraph, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(g);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `Σ (c / denom)·g` from integer coefficients of canonical graphs.
    pub(crate) fn from_integers(terms: impl IntoIterator<Item = (RibbonGraph, i64)>, denom: i64) -> FormalSum {
        let mut s = FormalSum::new();
        for (g, c) in terms {
            if c != 0 {
                s.add_canonical(g, crate::rational::q_frac(c, denom));
            }
        }
        s
    }

    pub fn add_sum(&mut self, other: &FormalSum, c: &Q) {
        for (g, x) in &other.terms {
            self.add_canonical(g.clone(), x * c);
        }
    }

    pub fn scaled(&self, c: &Q) -> FormalSum {
        let mut s = FormalSum::new();
        s.add_sum(self, c);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&RibbonGraph, &Q)> {
        self.terms.iter()
    }

    pub fn graphs(&self) -> impl Iterator<Item = &RibbonGraph> {
        self.terms.keys()
    }

    /// Coefficient of `g` (taking its orientation into account).
    pub fn coefficient(&self, g: &RibbonGraph) -> Q {
        let (canon, s) = g.canonicalize();
        match (s, self.terms.get(&canon)) {
            (0, _) | (_, None) => Q::zero(),
            (1, Some(c)) => c.clone(),
            (_, Some(c)) => -c.clone(),
        }
    }

    /// Linear extension of `f`.
    pub fn map_linear(&self, mut f: impl FnMut(&RibbonGraph) -> FormalSum) -> FormalSum {
        let mut out = FormalSum::new();
        for (g, c) in &self.terms {
            out.add_sum(&f(g), c);
        }
        out
    }

    pub fn relabel_whites(&self, perm: &[u8]) -> FormalSum {
        let mut out = FormalSum::new();
        for (g, c) in &self.terms {
            out.add_graph(&g.relabel_whites(perm), c);
        }
        out
    }

    pub fn relabel_boundaries(&self, perm: &[u8]) -> FormalSum {
        let mut out = FormalSum::new();
        for (g, c) in &self.terms {
            out.add_graph(&g.relabel_boundaries(perm), c);
        }
        out
    }
}

impl std::ops::Add<&FormalSum> for &FormalSum {
    type Output = FormalSum;
    fn add(self, rhs: &FormalSum) -> FormalSum {
        let mut s = self.clone();
        s.add_sum(rhs, &Q::one());
        s
    }
}

impl std::ops::Sub<&FormalSum> for &FormalSum {
    type Output = FormalSum;
    fn sub(self, rhs: &FormalSum) -> FormalSum {
        let mut s = self.clone();
        s.add_sum(rhs, &-Q::one());
        s
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        for (g, c) in &self.terms {
            writeln!(f, "{} * {}", fmt_q(c), g)?;
        }
        Ok(())
    }
}
