//! Graph complexes per bidegree block, and the string topology quotient.

use rayon::prelude::*;
use thiserror::Error;

use super::basis::{enumerate_basis, Family, IndexedBasis};
use super::compose::{substitute, Filter, Relabel, WordMode};
use super::differential::twist_differential;
use super::generators::lollipop;
use crate::linalg::{quotient_complex, GradedComplex, LinalgError, QuotientComplex, SparseMatrix, SparseVec};
use crate::rational::{q, Q};
use crate::ribbon::{BiDegree, RibbonGraph};
use crate::sum::FormalSum;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("a term of the differential leaves the {family} basis:\n{graph}")]
    NotClosed { family: Family, graph: String },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Graphs spanning the string topology ideal: a black vertex of valence at
/// least four, or a boundary meeting black vertices only.
pub fn is_ideal_graph(g: &RibbonGraph) -> bool {
    if g.is_zero_dart() {
        return g.black_count() == 1;
    }
    if g.black_vertices().any(|v| g.valence(v) >= 4) {
        return true;
    }
    g.boundaries().iter().any(|walk| walk.iter().all(|&x| g.color(g.vertex_of(x)).is_black()))
}

/// Largest `k` with a non-empty basis, for the families bounded by valence.
fn k_bound(family: Family, g: usize, m: usize, n: usize) -> Option<usize> {
    match family {
        Family::TwRGra => None,
        _ => Some((n + 2 * m + 4 * g).saturating_sub(4)),
    }
}

/// Coordinates of `s` in `basis`, or the first term outside it.
fn coordinates(family: Family, basis: &IndexedBasis, s: &FormalSum) -> Result<SparseVec<Q>, EngineError> {
    basis.coordinates(s).map_err(|g| EngineError::NotClosed { family, graph: g.text() })
}

fn matrix_between(family: Family, from: &IndexedBasis, to: &IndexedBasis) -> Result<SparseMatrix, EngineError> {
    let cols: Result<Vec<SparseVec<Q>>, EngineError> =
        from.graphs.par_iter().map(|g| coordinates(family, to, &twist_differential(g))).collect();
    Ok(SparseMatrix::from_columns(to.len(), cols?))
}

/// Matrix of the differential from black-vertex count `bd.k` to `bd.k + 1`.
pub fn differential_matrix(family: Family, d: i32, bd: BiDegree) -> Result<SparseMatrix, EngineError> {
    let from = IndexedBasis::new(enumerate_basis(family, d, bd));
    let to = IndexedBasis::new(enumerate_basis(family, d, bd.with_k(bd.k + 1)));
    matrix_between(family, &from, &to)
}

/// The `(g; m, n)` block of a family for `k = 0..=kmax`.
#[derive(Clone, Debug)]
pub struct GraphComplex {
    pub family: Family,
    pub d: i32,
    pub block: BiDegree,
    pub bases: Vec<IndexedBasis>,
    pub complex: GradedComplex,
}

impl GraphComplex {
    pub fn build(family: Family, d: i32, g: usize, m: usize, n: usize, kmax: usize) -> Result<Self, EngineError> {
        let block = BiDegree::new(g, m, n, 0);
        let bases: Vec<Vec<RibbonGraph>> = (0..=kmax).map(|k| enumerate_basis(family, d, block.with_k(k))).collect();
        Self::from_bases(family, d, g, m, n, bases)
    }

    /// Builds the block from bases already enumerated for `k = 0..bases.len()`.
    pub fn from_bases(family: Family, d: i32, g: usize, m: usize, n: usize, bases: Vec<Vec<RibbonGraph>>) -> Result<Self, EngineError> {
        let block = BiDegree::new(g, m, n, 0);
        let kmax = bases.len().saturating_sub(1);
        let bases: Vec<IndexedBasis> = bases.into_iter().map(IndexedBasis::new).collect();
        let diffs = (0..kmax)
            .map(|k| matrix_between(family, &bases[k], &bases[k + 1]))
            .collect::<Result<Vec<_>, _>>()?;
        let dims = bases.iter().map(IndexedBasis::len).collect();
        let mut complex = GradedComplex::truncated(block.degree(d), dims, diffs)?;
        if k_bound(family, g, m, n).is_some_and(|b| kmax > b) {
            complex.exact.fill(true);
        }
        Ok(GraphComplex { family, d, block, bases, complex })
    }

    pub fn kmax(&self) -> usize {
        self.bases.len() - 1
    }

    /// Coordinates of a sum of graphs with `k` black vertices.
    pub fn coordinates(&self, k: usize, s: &FormalSum) -> Result<SparseVec<Q>, EngineError> {
        coordinates(self.family, &self.bases[k], s)
    }

    pub fn sum_of(&self, k: usize, v: &SparseVec<Q>) -> FormalSum {
        let mut s = FormalSum::new();
        for (i, c) in v {
            s.add_graph(&self.bases[k].graphs[*i], c);
        }
        s
    }
}

/// Chain gravity modulo the ideal and its differential, with the quotient
/// basis chosen among graphs outside the ideal.
pub struct StComplex {
    pub ambient: GraphComplex,
    pub ideal: Vec<Vec<bool>>,
    pub quotient: QuotientComplex,
}

impl StComplex {
    pub fn build(d: i32, g: usize, m: usize, n: usize, kmax: usize) -> Result<Self, EngineError> {
        Self::from_ambient(GraphComplex::build(Family::STAmbient, d, g, m, n, kmax)?)
    }

    pub fn from_ambient(ambient: GraphComplex) -> Result<Self, EngineError> {
        let kmax = ambient.kmax();
        let ideal: Vec<Vec<bool>> =
            ambient.bases.iter().map(|b| b.graphs.iter().map(is_ideal_graph).collect()).collect();
        let one = q(1);
        let spans: Vec<Vec<SparseVec<Q>>> = (0..=kmax)
            .map(|k| {
                let mut span: Vec<SparseVec<Q>> =
                    (0..ideal[k].len()).filter(|&i| ideal[k][i]).map(|i| vec![(i, one.clone())]).collect();
                if k > 0 {
                    let dm = &ambient.complex.diffs[k - 1];
                    span.extend((0..ideal[k - 1].len()).filter(|&i| ideal[k - 1][i]).map(|i| dm.column(i).clone()));
                }
                span
            })
            .collect();
        let quotient = quotient_complex(&ambient.complex, &spans, Some(&ideal))?;
        Ok(StComplex { ambient, ideal, quotient })
    }

    pub fn complex(&self) -> &GradedComplex {
        &self.quotient.complex
    }

    /// The graph representing quotient basis vector `i` at `k`.
    pub fn representative(&self, k: usize, i: usize) -> &RibbonGraph {
        &self.ambient.bases[k].graphs[self.quotient.reps[k][i]]
    }

    /// Quotient coordinates of a sum of chain gravity graphs.
    pub fn project(&self, k: usize, s: &FormalSum) -> Result<SparseVec<Q>, EngineError> {
        Ok(self.quotient.project(k, &self.ambient.coordinates(k, s)?))
    }
}

/// The differential of the quotient as a rule on graphs: every white vertex
/// gives up two cyclically consecutive half-edges to a new trivalent black
/// vertex, and terms in the ideal are dropped.
pub fn st_direct_differential(g: &RibbonGraph) -> FormalSum {
    let lol = lollipop(g.d());
    let id = |l: u8| l;
    let two_to_black = |_: usize, f: &[usize]| f.iter().filter(|&&t| t == 0).count() == 2;
    let minus = if g.degree().rem_euclid(2) == 0 { -1 } else { 1 };
    let mut out = FormalSum::new();
    for i in 1..=g.white_count() as u8 {
        let Some(v) = g.white_vertex(i).filter(|&v| g.valence(v) >= 2) else { continue };
        let to_i = move |_: u8| i;
        let rl = Relabel { outer_white: &id, inner_white: &to_i, outer_boundary: &id, inner_boundary: &id };
        let filter: Filter = Some(&two_to_black);
        substitute(g, v, &lol, 1, WordMode::Concat, &rl, filter, &mut |h, s| {
            if !is_ideal_graph(&h) {
                out.add_canonical(h, q(minus * s as i64));
            }
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::cohomology_dims;
    use crate::properad::generators::{coloop, lone_black};

    #[test]
    fn ideal_predicate() {
        assert!(is_ideal_graph(&lone_black(1)));
        assert!(!is_ideal_graph(&coloop(1)));
        let k4 = enumerate_basis(Family::ChGrav, 1, BiDegree::new(0, 1, 4, 1));
        assert!(k4.iter().any(is_ideal_graph) && !k4.iter().all(is_ideal_graph));
    }

    #[test]
    fn bracket_block_of_chain_gravity() {
        for d in 0..4 {
            let cx = GraphComplex::build(Family::TwRGra, d, 0, 1, 2, 2).unwrap();
            assert!(cx.complex.diffs[0].is_zero());
            let t = cohomology_dims(&cx.complex).unwrap();
            assert_eq!(t.nonzero_exact(), vec![(1 - d as i64, 1)], "d = {d}");
        }
    }

    #[test]
    fn quotient_representatives_are_trivalent() {
        for d in 1..3 {
            let st = StComplex::build(d, 0, 2, 1, 3).unwrap();
            for k in 0..=3 {
                for i in 0..st.complex().dims[k] {
                    let g = st.representative(k, i);
                    assert!(g.black_vertices().all(|v| g.valence(v) == 3), "{g}");
                    assert!(!is_ideal_graph(g));
                }
            }
        }
    }
}
