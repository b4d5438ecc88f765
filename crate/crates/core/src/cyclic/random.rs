//! Random paired spaces, words and small graphs for property suites.

use rand::seq::SliceRandom;
use rand::Rng;

use super::space::{odd, GradedSpace, Letter};
use super::word::{cyclic_normalize, CyclicWord};
use crate::properad::{enumerate_basis, Family};
use crate::rational::{q, Q};
use crate::ribbon::{BiDegree, RibbonGraph};

fn sym_sign(d: i32, a: i64, b: i64) -> i64 {
    if odd(d as i64 + a * b) {
        -1
    } else {
        1
    }
}

fn nonzero(rng: &mut impl Rng) -> i64 {
    let c = rng.gen_range(1..=3);
    if rng.gen_bool(0.5) {
        -c
    } else {
        c
    }
}

/// A random space with pairing of degree `1 − d` and at most `max_dim`
/// letters. With `dg` set (and `max_dim ≥ 4`) it is the acyclic block
/// `a, b = ∂a, a*, b*` with `∂a* = λ b*`, `λ = −(−1)^{|a|}`.
pub fn random_paired_space(rng: &mut impl Rng, d: i32, max_dim: usize, dg: bool) -> GradedSpace {
    let mut names: Vec<String> = Vec::new();
    let mut degrees: Vec<i64> = Vec::new();
    let mut pairs: Vec<(usize, usize, i64)> = Vec::new();
    let differential: Vec<Vec<(Letter, Q)>>;
    if dg && max_dim >= 4 {
        let p: i64 = rng.gen_range(-2..=2);
        let c = nonzero(rng);
        names.extend(["a", "b", "as", "bs"].map(String::from));
        degrees.extend([p, p + 1, d as i64 - 2 - p, d as i64 - 1 - p]);
        let lambda = if odd(p) { 1 } else { -1 };
        // Θ(b, a*) + (−1)^{|a|} λ Θ(a, b*) = 0
        let c2 = if odd(p) { lambda * c } else { -lambda * c };
        pairs.push((0, 3, c));
        pairs.push((1, 2, c2));
        differential = vec![vec![(1, q(1))], Vec::new(), vec![(3, q(lambda))], Vec::new()];
    } else {
        let blocks = rng.gen_range(1..=(max_dim / 2).max(1));
        for i in 0..blocks {
            let p: i64 = rng.gen_range(-2..=2);
            let dual = d as i64 - 1 - p;
            names.push(format!("x{i}"));
            degrees.push(p);
            names.push(format!("y{i}"));
            degrees.push(dual);
            pairs.push((2 * i, 2 * i + 1, nonzero(rng)));
        }
        differential = vec![Vec::new(); names.len()];
    }
    let n = names.len();
    let mut theta = vec![vec![q(0); n]; n];
    for (a, b, c) in pairs {
        theta[a][b] = q(c);
        theta[b][a] = q(c * sym_sign(d, degrees[a], degrees[b]));
    }
    GradedSpace::new(d, names, degrees, theta, Some(differential)).expect("random space is valid")
}

/// A random nonzero cyclic word with length in `min_len..=max_len`.
pub fn random_word(rng: &mut impl Rng, space: &GradedSpace, min_len: usize, max_len: usize) -> CyclicWord {
    let letters: Vec<Letter> = space.letters().collect();
    loop {
        let len = rng.gen_range(min_len..=max_len);
        let w: Vec<Letter> = (0..len).map(|_| *letters.choose(rng).unwrap()).collect();
        let (cw, s) = cyclic_normalize(space, &w);
        if s != 0 {
            return cw;
        }
    }
}

/// All graphs without black vertices having at most `max_edges` edges.
pub fn small_graphs(d: i32, max_edges: usize) -> Vec<RibbonGraph> {
    let mut out = Vec::new();
    for g in 0..=max_edges / 2 + 1 {
        for m in 1..=max_edges + 2 {
            for n in 1..=max_edges + 2 {
                let bd = BiDegree::new(g, m, n, 0);
                if bd.edges().is_some_and(|e| e <= max_edges) {
                    out.extend(enumerate_basis(Family::TwRGra, d, bd));
                }
            }
        }
    }
    out
}
