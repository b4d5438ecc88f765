//! The twisted differential on ribbon graphs.
//!
//! For a graph `G` of degree `|G|`,
//!
//! ```text
//! δG =  Σ_j  L 1∘j G                       (a univalent black vertex enters boundary j)
//!     − (−1)^{|G|} Σ_i  G i∘1 L             (white vertex i is pulled into a lollipop)
//!     − ½ Σ_v (−1)^{p_v} G[v ↦ B]           (black vertex v splits along an edge)
//! ```
//!
//! where `L` is the black-to-white lollipop, `B` the black edge and `p_v` the
//! parity of the orientation symbols preceding the symbol of `v`. Each new
//! boundary, white vertex and orientation symbol inherits its position from
//! the piece it replaces.

use std::collections::HashMap;
use std::sync::Mutex;

use rustc_hash::FxHashMap;

use super::compose::{substitute, Filter, Relabel, WordMode};
use super::generators::{black_edge, lollipop};
use crate::ribbon::{RibbonGraph, Sym};
use crate::sum::FormalSum;

/// The differential. Graphs without univalent black vertices take a shortcut
/// that omits the terms creating a univalent black vertex, which cancel in
/// pairs, and merges the two mirror-image halves of each black splitting.
pub fn twist_differential(g: &RibbonGraph) -> FormalSum {
    FormalSum::from_integers(integral_differential(g), 2)
}

/// The three-term formula applied literally.
pub fn twist_differential_reference(g: &RibbonGraph) -> FormalSum {
    FormalSum::from_integers(differential_terms(g, true), 2)
}

/// Twice the differential, as sorted integer multiples of canonical graphs.
pub fn integral_differential(g: &RibbonGraph) -> Vec<(RibbonGraph, i64)> {
    let literal = g.is_zero_dart() || g.black_vertices().any(|v| g.valence(v) == 1);
    differential_terms(g, literal)
}

/// Four times `δ²g` in integer arithmetic; empty exactly when `δ²g = 0`.
pub fn differential_squared(g: &RibbonGraph) -> Vec<(RibbonGraph, i64)> {
    let mut acc: FxHashMap<RibbonGraph, i64> = FxHashMap::default();
    for (h, c) in integral_differential(g) {
        for (k, e) in integral_differential(&h) {
            *acc.entry(k).or_default() += c * e;
        }
    }
    let mut out: Vec<(RibbonGraph, i64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
    out.sort_unstable();
    out
}

fn differential_terms(g: &RibbonGraph, literal: bool) -> Vec<(RibbonGraph, i64)> {
    let d = g.d();
    let lol = lollipop(d);
    let bedge = black_edge(d);
    // coefficients are accumulated doubled, so that the splitting term is integral
    let mut acc: FxHashMap<RibbonGraph, i64> = FxHashMap::default();
    let id = |l: u8| l;

    if literal {
        for j in 1..=g.boundary_count() as u8 {
            let to_j = move |_: u8| j;
            let rl = Relabel { outer_white: &id, inner_white: &id, outer_boundary: &to_j, inner_boundary: &id };
            substitute(&lol, 1, g, j, WordMode::Concat, &rl, None, &mut |h, s| {
                *acc.entry(h).or_default() += 2 * s as i64
            });
        }
    }

    // the black end of the lollipop owns the first corner of its boundary
    let black_gets_some = |_: usize, f: &[usize]| f[0] == 0;
    let minus: i64 = if g.degree().rem_euclid(2) == 0 { -2 } else { 2 };
    for i in 1..=g.white_count() as u8 {
        let v = g.white_vertex(i).expect("white label present");
        let to_i = move |_: u8| i;
        let rl = Relabel { outer_white: &id, inner_white: &to_i, outer_boundary: &id, inner_boundary: &id };
        let filter: Filter = if literal { None } else { Some(&black_gets_some) };
        substitute(g, v, &lol, 1, WordMode::Concat, &rl, filter, &mut |h, s| {
            *acc.entry(h).or_default() += minus * s as i64
        });
    }

    let word = g.standard_word();
    let mut parity = 0i64;
    for s in &word {
        let v = match *s {
            Sym::Black(x) => Some(g.vertex_of(x)),
            Sym::LoneBlack => Some(0),
            Sym::Edge(..) => None,
        };
        if let Some(v) = v {
            let sign: i64 = if parity % 2 == 0 { -1 } else { 1 };
            let h = g.valence(v);
            // both ends nonempty, and the first end holds the minimal dart of `v`
            let proper_half = move |s: usize, f: &[usize]| {
                let i = f.iter().take_while(|&&t| t == 0).count();
                i > 0 && i < h && (s == 0 || s + i > h)
            };
            let (filter, c): (Filter, i64) = if literal { (None, sign) } else { (Some(&proper_half), 2 * sign) };
            let rl = Relabel { outer_white: &id, inner_white: &id, outer_boundary: &id, inner_boundary: &id };
            substitute(g, v, &bedge, 1, WordMode::Inline, &rl, filter, &mut |h, s| {
                *acc.entry(h).or_default() += c * s as i64
            });
            parity += d as i64;
        } else {
            parity += 1 - d as i64;
        }
    }
    let mut terms: Vec<(RibbonGraph, i64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
    terms.sort_unstable();
    terms
}

pub fn twist_differential_sum(s: &FormalSum) -> FormalSum {
    s.map_linear(twist_differential)
}

/// Memoised differential for repeated application on canonical graphs.
#[derive(Default)]
pub struct DifferentialCache {
    table: Mutex<HashMap<RibbonGraph, FormalSum>>,
}

impl DifferentialCache {
    pub fn new() -> Self {
        DifferentialCache::default()
    }

    pub fn get(&self, g: &RibbonGraph) -> FormalSum {
        if let Some(s) = self.table.lock().unwrap().get(g) {
            return s.clone();
        }
        let s = twist_differential(g);
        self.table.lock().unwrap().insert(g.clone(), s.clone());
        s
    }

    pub fn apply(&self, s: &FormalSum) -> FormalSum {
        s.map_linear(|g| self.get(g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::properad::generators::{bracket, coloop, lone_black, unit};
    use crate::rational::q_frac;

    #[test]
    fn unit_and_bracket_are_cycles() {
        for d in 0..4 {
            assert!(twist_differential(&unit(d)).is_zero(), "d = {d}");
            assert!(twist_differential(&bracket(d)).is_zero(), "d = {d}");
        }
    }

    #[test]
    fn lone_black_vertex() {
        for d in 0..4 {
            let s = twist_differential(&lone_black(d));
            assert_eq!(s, FormalSum::from_graph(&black_edge(d)).scaled(&q_frac(1, 2)), "d = {d}");
        }
    }

    #[test]
    fn coloop_is_not_a_cycle() {
        for d in 0..4 {
            let s = twist_differential(&coloop(d));
            assert!(!s.is_zero());
            for (g, _) in s.iter() {
                assert_eq!(g.black_count(), 1);
                assert_eq!(g.valence(g.black_vertices().next().unwrap()), 3, "d = {d}\n{s}");
            }
        }
    }

    #[test]
    fn shortcut_agrees_with_the_literal_formula() {
        use crate::properad::basis::{enumerate_basis, Family};
        use crate::ribbon::BiDegree;
        for d in 0..4 {
            for (g, m, n, k) in [(0, 1, 2, 1), (0, 2, 1, 1), (0, 1, 1, 2), (1, 1, 1, 1), (0, 2, 0, 3), (0, 1, 3, 1), (0, 3, 1, 1)] {
                for gr in enumerate_basis(Family::TwRGra, d, BiDegree::new(g, m, n, k)) {
                    assert_eq!(twist_differential(&gr), twist_differential_reference(&gr), "{gr}");
                }
            }
        }
    }

    #[test]
    fn commutes_with_relabeling() {
        use crate::properad::basis::{enumerate_basis, Family};
        use crate::ribbon::BiDegree;
        for d in 0..4 {
            for gr in enumerate_basis(Family::TwRGra, d, BiDegree::new(0, 3, 2, 1)) {
                let w = [2, 1];
                let lhs = twist_differential(&gr.relabel_whites(&w));
                assert_eq!(lhs, twist_differential(&gr).relabel_whites(&w), "{gr}");
                let b = [2, 3, 1];
                let lhs = twist_differential(&gr.relabel_boundaries(&b));
                assert_eq!(lhs, twist_differential(&gr).relabel_boundaries(&b), "{gr}");
            }
        }
    }

    #[test]
    fn integral_square_agrees_with_rational_square() {
        use crate::properad::basis::{enumerate_basis, Family};
        use crate::ribbon::BiDegree;
        for d in 0..2 {
            for gr in enumerate_basis(Family::TwRGra, d, BiDegree::new(0, 2, 1, 1)) {
                assert!(differential_squared(&gr).is_empty());
                assert!(twist_differential_sum(&twist_differential(&gr)).is_zero());
            }
        }
    }

    #[test]
    fn squares_to_zero_on_generators() {
        for d in 0..4 {
            for g in [coloop(d), lollipop(d), black_edge(d), lone_black(d)] {
                let s = twist_differential_sum(&twist_differential(&g));
                assert!(s.is_zero(), "d = {d}, g = {g}\n{s}");
            }
        }
    }
}
