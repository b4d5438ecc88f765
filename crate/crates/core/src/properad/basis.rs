//! Bases of the graph complexes, one bidegree at a time.

use std::collections::BTreeSet;

use rustc_hash::FxHashMap;
use std::fmt;

use rayon::prelude::*;

use crate::rational::Q;
use crate::ribbon::maps::{maps, Map};
use crate::ribbon::{BiDegree, Color, Dart, RibbonGraph};
use crate::sum::FormalSum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// All connected graphs.
    TwRGra,
    /// Every black vertex at least trivalent.
    ChGrav,
    /// Same span as `ChGrav`; the ideal is removed by the quotient construction.
    STAmbient,
    /// Genus zero, one boundary, black vertices at least trivalent.
    TwRTree,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::TwRGra => "tw",
            Family::ChGrav => "chgrav",
            Family::STAmbient => "st",
            Family::TwRTree => "trees",
        }
    }

    pub fn admits(self, g: &RibbonGraph) -> bool {
        match self {
            Family::TwRGra => true,
            Family::ChGrav | Family::STAmbient => all_black_trivalent_or_more(g),
            Family::TwRTree => g.genus() == 0 && g.boundary_count() == 1 && all_black_trivalent_or_more(g),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn all_black_trivalent_or_more(g: &RibbonGraph) -> bool {
    g.black_vertices().all(|v| g.valence(v) >= 3)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn rec(p: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == p.len() {
            out.push(p.clone());
            return;
        }
        for i in k..p.len() {
            p.swap(k, i);
            rec(p, k + 1, out);
            p.swap(k, i);
        }
    }
    rec(&mut p, 0, &mut out);
    out
}

/// Ordered selections of `n` distinct items out of `v`.
fn arrangements(v: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(v: usize, n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for x in 0..v {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(v, n, cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    rec(v, n, &mut Vec::new(), &mut vec![false; v], &mut out);
    out
}

fn decorate(map: &Map, family: Family, d: i32, n: usize, out: &mut BTreeSet<RibbonGraph>) {
    let face_perms = permutations(map.faces().len());
    for whites in arrangements(map.vertices().len(), n) {
        decorate_with(map, family, d, &whites, &face_perms, out);
    }
}

/// Colours the listed vertices white (label = position + 1), the rest black,
/// and labels faces by each of the given permutations.
fn decorate_with(
    map: &Map,
    family: Family,
    d: i32,
    whites: &[usize],
    face_perms: &[Vec<usize>],
    out: &mut BTreeSet<RibbonGraph>,
) {
    let verts = map.vertices();
    let faces = map.faces();
    let nd = map.alpha.len();
    let mut vertex_of = vec![0usize; nd];
    for (i, c) in verts.iter().enumerate() {
        for &x in c {
            vertex_of[x as usize] = i;
        }
    }
    let mut face_of = vec![0usize; nd];
    for (i, c) in faces.iter().enumerate() {
        for &x in c {
            face_of[x as usize] = i;
        }
    }
    let mut vcolor = vec![Color::Black; verts.len()];
    for (l, &v) in whites.iter().enumerate() {
        vcolor[v] = Color::White(l as u8 + 1);
    }
    if family != Family::TwRGra && verts.iter().zip(&vcolor).any(|(c, col)| col.is_black() && c.len() < 3) {
        return;
    }
    let dart_color: Vec<Color> = (0..nd).map(|x| vcolor[vertex_of[x]]).collect();
    for fp in face_perms {
        let g = RibbonGraph::assemble(
            d,
            map.alpha.clone(),
            map.sigma.clone(),
            &dart_color,
            |cyc| fp[face_of[cyc[0] as usize]] as u8 + 1,
            &[],
            1,
        );
        let (canon, s) = g.canonicalize();
        if s != 0 && family.admits(&canon) {
            out.insert(canon);
        }
    }
}

/// All canonical non-zero graphs of the family in the given bidegree, sorted.
pub fn enumerate_basis(family: Family, d: i32, bd: BiDegree) -> Vec<RibbonGraph> {
    if family == Family::TwRTree && (bd.g != 0 || bd.m != 1) {
        return Vec::new();
    }
    let Some(e) = bd.edges() else { return Vec::new() };
    let v = bd.n + bd.k;
    if bd.m == 0 || v == 0 {
        return Vec::new();
    }
    if e == 0 {
        let g = match (bd.n, bd.k) {
            (1, 0) => RibbonGraph::zero_dart(d, Color::White(1)),
            (0, 1) => RibbonGraph::zero_dart(d, Color::Black),
            _ => return Vec::new(),
        };
        return if family.admits(&g) { vec![g] } else { Vec::new() };
    }
    if family != Family::TwRGra && 2 * e < bd.n + 3 * bd.k {
        return Vec::new();
    }
    let catalog = maps(e, v, bd.g);
    let sets: Vec<BTreeSet<RibbonGraph>> = catalog
        .par_iter()
        .map(|m| {
            let mut s = BTreeSet::new();
            decorate(m, family, d, bd.n, &mut s);
            s
        })
        .collect();
    let mut all = BTreeSet::new();
    for s in sets {
        all.extend(s);
    }
    all.into_iter().collect()
}

/// One graph per orbit of the relabeling action of S_m × S_n (possibly a few
/// more): white vertices and boundaries are labelled in the order of the map's
/// vertex and face lists.
pub fn enumerate_orbit_representatives(family: Family, d: i32, bd: BiDegree) -> Vec<RibbonGraph> {
    let Some(e) = bd.edges() else { return Vec::new() };
    if e == 0 || (family == Family::TwRTree && (bd.g != 0 || bd.m != 1)) {
        return enumerate_basis(family, d, bd);
    }
    let v = bd.n + bd.k;
    if bd.m == 0 || v == 0 || (family != Family::TwRGra && 2 * e < bd.n + 3 * bd.k) {
        return Vec::new();
    }
    let mut all = BTreeSet::new();
    let identity: Vec<usize> = (0..bd.m).collect();
    for map in maps(e, v, bd.g).iter() {
        for whites in subsets(v, bd.n) {
            decorate_with(map, family, d, &whites, std::slice::from_ref(&identity), &mut all);
        }
    }
    all.into_iter().collect()
}

fn subsets(v: usize, n: usize) -> Vec<Vec<usize>> {
    (0u32..1 << v)
        .filter(|s| s.count_ones() as usize == n)
        .map(|s| (0..v).filter(|&i| s >> i & 1 == 1).collect())
        .collect()
}

/// A basis with a lookup table from canonical graph to position.
#[derive(Clone, Debug, Default)]
pub struct IndexedBasis {
    pub graphs: Vec<RibbonGraph>,
    index: FxHashMap<RibbonGraph, usize>,
}

impl IndexedBasis {
    pub fn new(graphs: Vec<RibbonGraph>) -> Self {
        let index = graphs.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
        IndexedBasis { graphs, index }
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn position(&self, g: &RibbonGraph) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Coordinates of a formal sum; `Err` carries the first graph outside the basis.
    pub fn coordinates(&self, s: &FormalSum) -> Result<Vec<(usize, Q)>, RibbonGraph> {
        let mut out = Vec::with_capacity(s.len());
        for (g, c) in s.iter() {
            match self.position(g) {
                Some(i) => out.push((i, c.clone())),
                None => return Err(g.clone()),
            }
        }
        out.sort_by_key(|&(i, _)| i);
        Ok(out)
    }
}

/// Dart permutation helper shared by tests: the graph with darts renamed by `p`.
pub fn permute_darts(g: &RibbonGraph, p: &[usize]) -> RibbonGraph {
    let nd = g.dart_count();
    let mut alpha = vec![0 as Dart; nd];
    let mut sigma = vec![0 as Dart; nd];
    let mut color = vec![Color::Black; nd];
    let mut bnd = vec![0u8; nd];
    for x in 0..nd {
        alpha[p[x]] = p[g.alpha()[x] as usize] as Dart;
        sigma[p[x]] = p[g.sigma()[x] as usize] as Dart;
        color[p[x]] = g.color(g.vertex_of(x as Dart));
        bnd[p[x]] = g.boundary_of(x as Dart);
    }
    let word: Vec<crate::ribbon::Sym> = g
        .standard_word()
        .into_iter()
        .map(|s| match s {
            crate::ribbon::Sym::Edge(a, b) => crate::ribbon::Sym::Edge(p[a as usize] as Dart, p[b as usize] as Dart),
            crate::ribbon::Sym::Black(x) => crate::ribbon::Sym::Black(p[x as usize] as Dart),
            other => other,
        })
        .collect();
    RibbonGraph::assemble(g.d(), alpha, sigma, &color, |c| bnd[c[0] as usize], &word, g.or_sign())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bases() {
        for d in 0..4 {
            assert_eq!(enumerate_basis(Family::TwRGra, d, BiDegree::new(0, 1, 2, 0)).len(), 1);
            assert!(enumerate_basis(Family::ChGrav, d, BiDegree::new(0, 1, 1, 1)).is_empty());
            assert_eq!(enumerate_basis(Family::TwRGra, d, BiDegree::new(0, 1, 0, 1)).len(), 1);
            assert_eq!(enumerate_basis(Family::TwRGra, d, BiDegree::new(0, 1, 1, 0)).len(), 1);
        }
    }

    #[test]
    fn polytopes_present() {
        for k in 3..6 {
            for d in 1..3 {
                let basis = enumerate_basis(Family::TwRGra, d, BiDegree::new(0, 2, 0, k));
                let polygon = basis.iter().any(|g| g.black_vertices().all(|v| g.valence(v) == 2));
                // the rotation of a k-gon is an odd automorphism exactly when k is even
                assert_eq!(polygon, k % 2 == 1, "k = {k}, d = {d}");
            }
        }
    }
}
