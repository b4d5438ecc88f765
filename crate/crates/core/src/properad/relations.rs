//! Images of the involutive Lie bialgebra relations, and the symmetrized
//! quartette.

use super::compose::{compose, self_substitute};
use super::generators::{bracket, coloop, quartette_graphs};
use crate::rational::{q, Q};
use crate::ribbon::RibbonGraph;
use crate::sum::FormalSum;

fn sign(d: i32) -> Q {
    q(if d.rem_euclid(2) == 0 { 1 } else { -1 })
}

fn cyclic_sum(x: &FormalSum, relabel: impl Fn(&FormalSum, &[u8]) -> FormalSum) -> FormalSum {
    let mut out = x.clone();
    out.add_sum(&relabel(x, &[2, 3, 1]), &q(1));
    out.add_sum(&relabel(x, &[3, 1, 2]), &q(1));
    out
}

/// Cyclic sum of the bracket composed into the first input of the bracket.
pub fn jacobiator(d: i32) -> FormalSum {
    let b = bracket(d);
    let x = compose(&b, 1, &b, 1).expect("valid slots");
    cyclic_sum(&x, FormalSum::relabel_whites)
}

/// Cyclic sum of the cobracket composed onto the first output of the cobracket.
pub fn co_jacobiator(d: i32) -> FormalSum {
    let c = coloop(d);
    let x = compose(&c, 1, &c, 1).expect("valid slots");
    cyclic_sum(&x, FormalSum::relabel_boundaries)
}

/// The five-term compatibility of bracket and cobracket: the cobracket of a
/// bracket, plus the four ways of feeding one cobracket output into a bracket.
pub fn drinfeld(d: i32) -> FormalSum {
    let (b, c) = (bracket(d), coloop(d));
    let mut out = compose(&c, 1, &b, 1).expect("valid slots");
    let x = compose(&b, 1, &c, 2).expect("valid slots");
    let e = sign(d);
    out.add_sum(&x.relabel_boundaries(&[2, 1]).relabel_whites(&[2, 1]), &e);
    out.add_sum(&x.relabel_boundaries(&[2, 1]), &q(1));
    out.add_sum(&x, &e);
    out.add_sum(&x.relabel_whites(&[2, 1]), &q(1));
    out
}

/// The bracket applied to both outputs of the cobracket.
pub fn involutivity(d: i32) -> FormalSum {
    let x = compose(&bracket(d), 1, &coloop(d), 1).expect("valid slots");
    x.map_linear(|g| self_substitute(g, 1, 2).expect("valid slots"))
}

fn permutations(n: u8) -> Vec<(Vec<u8>, bool)> {
    let mut out = Vec::new();
    fn rec(p: &mut Vec<u8>, k: usize, odd: bool, out: &mut Vec<(Vec<u8>, bool)>) {
        if k == p.len() {
            out.push((p.clone(), odd));
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(p, k + 1, odd ^ (i != k), out);
            p.swap(k, i);
        }
    }
    rec(&mut (1..=n).collect(), 0, false, &mut out);
    out
}

/// Sum over all relabelings of white vertices and boundaries, with the sign
/// of both permutations when `d` is even.
pub fn symmetrize(g: &RibbonGraph) -> FormalSum {
    symmetrize_with(g, g.d().rem_euclid(2) == 0)
}

/// Sum over all relabelings of white vertices and boundaries, signed by both
/// permutations when `skew` is set.
pub fn symmetrize_with(g: &RibbonGraph, skew: bool) -> FormalSum {
    let mut out = FormalSum::new();
    for (pw, ow) in permutations(g.white_count() as u8) {
        for (pb, ob) in permutations(g.boundary_count() as u8) {
            let c = if skew && (ow ^ ob) { q(-1) } else { q(1) };
            out.add_graph(&g.relabel_whites(&pw).relabel_boundaries(&pb), &c);
        }
    }
    out
}

/// The four one-black-vertex cycles of types (1,3), (3,1), (2,2), (1,1).
pub fn holob_quartette(d: i32) -> [FormalSum; 4] {
    quartette_graphs(d).map(|g| symmetrize(&g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lie_bialgebra_relations_vanish() {
        for d in 0..4 {
            assert!(jacobiator(d).is_zero(), "Jacobi, d = {d}\n{}", jacobiator(d));
            assert!(co_jacobiator(d).is_zero(), "co-Jacobi, d = {d}\n{}", co_jacobiator(d));
            assert!(drinfeld(d).is_zero(), "Drinfeld, d = {d}\n{}", drinfeld(d));
            assert!(involutivity(d).is_zero(), "involutivity, d = {d}\n{}", involutivity(d));
        }
    }

    #[test]
    fn relation_parts_are_nonzero() {
        for d in 0..4 {
            let b = bracket(d);
            assert!(!compose(&b, 1, &b, 1).unwrap().is_zero());
            assert!(!compose(&bracket(d), 1, &coloop(d), 2).unwrap().is_zero());
        }
    }

    #[test]
    fn quartette_is_nonzero() {
        for d in 0..4 {
            for s in holob_quartette(d) {
                assert!(!s.is_zero(), "d = {d}");
            }
        }
    }
}
