//! Canonical labelling by breadth-first relabelling from every admissible root.

use std::cmp::Ordering;

use super::{cycle_ids, Dart, RibbonGraph, Sym, MAX_DARTS};

const UNSEEN: u8 = u8::MAX;
const CAP: usize = MAX_DARTS + 6;

/// A map with per-dart colour codes and boundary labels.
pub(crate) struct Raw<'a> {
    pub alpha: &'a [Dart],
    pub sigma: &'a [Dart],
    pub color: &'a [u8],
    pub boundary: &'a [u8],
}

/// Writes the code of the relabelling rooted at `root` into `code`, stopping
/// early once it is known to exceed `best`.
fn encode(
    g: &Raw,
    root: Dart,
    best: Option<&[u32]>,
    code: &mut [u32],
    label: &mut [u8],
    order: &mut [u8],
) -> Ordering {
    let nd = g.alpha.len();
    label[..nd].fill(UNSEEN);
    label[root as usize] = 0;
    order[0] = root;
    let mut len = 1;
    let mut state = if best.is_none() { Ordering::Less } else { Ordering::Equal };
    for i in 0..nd {
        let x = order[i] as usize;
        for y in [g.sigma[x], g.alpha[x]] {
            if label[y as usize] == UNSEEN {
                label[y as usize] = len as u8;
                order[len] = y;
                len += 1;
            }
        }
        let entry = (label[g.sigma[x] as usize] as u32) << 24
            | (label[g.alpha[x] as usize] as u32) << 16
            | (g.color[x] as u32) << 8
            | g.boundary[x] as u32;
        if state == Ordering::Equal {
            match entry.cmp(&best.unwrap()[i]) {
                Ordering::Less => state = Ordering::Less,
                Ordering::Greater => return Ordering::Greater,
                Ordering::Equal => {}
            }
        }
        code[i] = entry;
    }
    state
}

fn transport(word: &[Sym], label: &[u8], out: &mut Vec<Sym>) {
    out.clear();
    out.extend(word.iter().map(|s| match *s {
        Sym::Edge(t, h) => Sym::Edge(label[t as usize], label[h as usize]),
        Sym::Black(x) => Sym::Black(label[x as usize]),
        Sym::LoneBlack => Sym::LoneBlack,
    }));
}

/// Canonical form of a connected map with at least one dart, oriented by
/// `word` times `base_sign`. The sign is 0 for a zero graph.
pub(crate) fn canonical_raw(d: i32, g: &Raw, boundaries: u8, word: &[Sym], base_sign: i8) -> (RibbonGraph, i8) {
    let nd = g.alpha.len();
    let mut best = [0u32; CAP];
    let mut code = [0u32; CAP];
    let mut label = [0u8; CAP];
    let mut order = [0u8; CAP];
    let mut best_label = [0u8; CAP];
    let mut ties: Vec<u8> = Vec::new();
    let mut have_best = false;
    let white_one = g.color.contains(&1);
    for r in 0..nd {
        let admissible = if white_one { g.color[r] == 1 } else { g.boundary[r] == 1 };
        if !admissible {
            continue;
        }
        let cmp = encode(g, r as Dart, have_best.then_some(&best[..nd]), &mut code, &mut label, &mut order);
        match cmp {
            Ordering::Less => {
                best[..nd].copy_from_slice(&code[..nd]);
                best_label[..nd].copy_from_slice(&label[..nd]);
                ties.clear();
                have_best = true;
            }
            Ordering::Equal => ties.extend_from_slice(&label[..nd]),
            Ordering::Greater => {}
        }
    }
    let mut alpha = [0u8; CAP];
    let mut sigma = [0u8; CAP];
    let mut bnd = [0u8; CAP];
    let mut vertex_of = [0u8; CAP];
    for i in 0..nd {
        let c = best[i];
        sigma[i] = (c >> 24) as Dart;
        alpha[i] = (c >> 16) as Dart;
        bnd[i] = c as u8;
    }
    let nv = cycle_ids(&sigma[..nd], &mut vertex_of);
    let mut colors = [0u8; CAP];
    for i in (0..nd).rev() {
        colors[vertex_of[i] as usize] = (best[i] >> 8) as u8;
    }
    let canon =
        RibbonGraph::from_parts(d, &alpha[..nd], &sigma[..nd], &vertex_of[..nd], &bnd[..nd], &colors[..nv], boundaries, 1);
    let mut w = Vec::with_capacity(word.len());
    transport(word, &best_label[..nd], &mut w);
    let s0 = canon.word_sign(&w);
    for l in ties.chunks(nd) {
        transport(word, l, &mut w);
        if canon.word_sign(&w) != s0 {
            return (canon, 0);
        }
    }
    (canon, base_sign * s0)
}

/// Labels the boundary cycles of `phi = sigma ∘ alpha` through `label` and
/// canonicalises.
pub(crate) fn canonical_parts(
    d: i32,
    alpha: &[Dart],
    sigma: &[Dart],
    color: &[u8],
    mut label: impl FnMut(&[Dart]) -> u8,
    word: &[Sym],
    base_sign: i8,
) -> (RibbonGraph, i8) {
    let nd = alpha.len();
    let mut bnd = [0u8; CAP];
    let mut seen = [false; CAP];
    let mut cyc = [0u8; CAP];
    let mut faces = 0u8;
    for start in 0..nd {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cyc[len] = x as Dart;
            len += 1;
            x = sigma[alpha[x] as usize] as usize;
        }
        let l = label(&cyc[..len]);
        for &y in &cyc[..len] {
            bnd[y as usize] = l;
        }
        faces += 1;
    }
    let raw = Raw { alpha, sigma, color, boundary: &bnd[..nd] };
    canonical_raw(d, &raw, faces, word, base_sign)
}

pub(crate) fn canonicalize(g: &RibbonGraph) -> (RibbonGraph, i8) {
    let nd = g.dart_count();
    if nd == 0 {
        return (g.with_sign(1), g.sign);
    }
    let mut color = [0u8; CAP];
    let codes = g.color_codes();
    for (x, c) in color.iter_mut().enumerate().take(nd) {
        *c = codes[g.vertex_of(x as Dart)];
    }
    let raw = Raw { alpha: g.alpha(), sigma: g.sigma(), color: &color[..nd], boundary: g.boundary_ids() };
    canonical_raw(g.d, &raw, g.boundaries, &g.standard_word(), g.sign)
}

/// The sign `s` with `g1 = s·g2` when a label-preserving isomorphism exists.
pub fn isomorphic_with_sign(g1: &RibbonGraph, g2: &RibbonGraph) -> Option<i8> {
    if g1.d != g2.d || g1.bidegree() != g2.bidegree() {
        return None;
    }
    let (c1, s1) = g1.canonicalize();
    let (c2, s2) = g2.canonicalize();
    (c1 == c2).then_some(s1 * s2)
}

#[cfg(test)]
mod tests {
    use super::super::Color::{self, Black, White};
    use super::*;

    fn graph(alpha: &[usize], sigma: &[usize], colors: &[Color], labels: &[u8], d: i32) -> RibbonGraph {
        RibbonGraph::build(alpha, sigma, colors, labels, d).unwrap()
    }

    /// Applies a dart permutation `p` (old -> new) to a graph, keeping its orientation.
    fn permute(g: &RibbonGraph, p: &[usize]) -> RibbonGraph {
        let nd = g.dart_count();
        let mut alpha = vec![0; nd];
        let mut sigma = vec![0; nd];
        let mut color = vec![Black; nd];
        let mut bnd = vec![0u8; nd];
        for x in 0..nd {
            alpha[p[x]] = p[g.alpha()[x] as usize] as Dart;
            sigma[p[x]] = p[g.sigma()[x] as usize] as Dart;
            color[p[x]] = g.color(g.vertex_of(x as Dart));
            bnd[p[x]] = g.boundary_of(x as Dart);
        }
        let label: Vec<u8> = p.iter().map(|&y| y as u8).collect();
        let mut word = Vec::new();
        transport(&g.standard_word(), &label, &mut word);
        RibbonGraph::assemble(g.d, alpha, sigma, &color, |c| bnd[c[0] as usize], &word, g.sign)
    }

    fn theta_32(d: i32) -> RibbonGraph {
        graph(&[1, 0, 3, 2, 5, 4], &[2, 5, 4, 1, 0, 3], &[White(1), White(2)], &[1, 2, 3], d)
    }

    #[test]
    fn idempotent_and_permutation_invariant() {
        for d in 0..4 {
            let g = theta_32(d);
            let (c, s) = g.canonicalize();
            assert_ne!(s, 0);
            assert_eq!(c.canonicalize(), (c.clone(), 1));
            let p = [3, 5, 0, 4, 1, 2];
            let h = permute(&g, &p);
            let (c2, s2) = h.canonicalize();
            assert_eq!(c2, c);
            assert_eq!(s2, s);
        }
    }

    #[test]
    fn transposition_gives_minus_one() {
        let g = theta_32(2);
        let h = g.transpose_symbols(0, 2);
        assert_eq!(isomorphic_with_sign(&g, &h), Some(-1));
        assert_eq!(isomorphic_with_sign(&g, &g), Some(1));
        let b = graph(&[1, 0], &[0, 1], &[White(1), White(2)], &[1], 2);
        let l = graph(&[1, 0], &[1, 0], &[White(1)], &[1, 2], 2);
        assert_eq!(isomorphic_with_sign(&b, &l), None);
    }

    #[test]
    fn genus_one_loop_pair_is_zero() {
        // one vertex, two interleaved loops: the rotation swaps the loops and
        // reverses one of them, which is odd for every parity of d
        for d in 0..4 {
            let g = graph(&[2, 3, 0, 1], &[1, 2, 3, 0], &[White(1)], &[1], d);
            assert_eq!(g.genus(), 1);
            assert_eq!(g.canonicalize().1, 0);
        }
    }

    #[test]
    fn swapping_bracket_labels() {
        for d in 0..4 {
            let b = graph(&[1, 0], &[0, 1], &[White(1), White(2)], &[1], d);
            let swapped = b.relabel_whites(&[2, 1]);
            let expected = if d % 2 == 0 { 1 } else { -1 };
            assert_eq!(isomorphic_with_sign(&swapped, &b), Some(expected));
        }
    }
}
