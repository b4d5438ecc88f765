//! The dual space of letters `w_α = s⁻¹e^α`, the Maurer–Cartan element `γ`
//! and the cyclic Hochschild complex of an algebra.
//!
//! Letters have degree `1 − |e_α|`, so the graph parameter of the space is
//! `3 − d` and `Θ` has degree `d − 2`.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{is_odd, sgn, FrobeniusError, PDAlgebra};
use crate::cyclic::random::random_word;
use crate::cyclic::suites::describe;
use crate::cyclic::{
    act, hochschild_complex, mc_check, mc_to_ainfty, twisted_differential, twisted_differential_tuples, CyclicError, CyclicWord,
    GradedSpace, HochschildComplex, Letter, MCElement, SuiteOutcome, WordSum,
};
use crate::linalg::{cohomology_basis, invert_dense};
use crate::properad::{enumerate_basis, twist_differential, Family};
use crate::rational::{q, Q};
use crate::ribbon::BiDegree;
use crate::sum::FormalSum;

/// `Θ(w_α, w_β) = (G⁻¹)_{βα}` and
/// `∂w_k = Σ_i (−1)^{|e_i|} D_{ik} w_i` for `∂e_i = Σ_k D_{ik} e_k`.
pub fn dual_space(a: &PDAlgebra) -> Result<GradedSpace, FrobeniusError> {
    let n = a.dim();
    let inv = invert_dense(&a.pairing_matrix()).ok_or(FrobeniusError::DegeneratePairing)?;
    let names: Vec<String> = a.names().iter().map(|s| format!("{s}*")).collect();
    let degrees: Vec<i64> = a.degrees().iter().map(|g| 1 - g).collect();
    let theta: Vec<Vec<Q>> = (0..n).map(|al| (0..n).map(|be| inv[be][al].clone()).collect()).collect();
    let mut differential: Vec<Vec<(Letter, Q)>> = vec![Vec::new(); n];
    for i in 0..n {
        for (k, c) in a.differential(i).iter().enumerate() {
            if !c.is_zero() {
                differential[k].push((i as Letter, c * sgn(is_odd(a.degree(i)))));
            }
        }
    }
    Ok(GradedSpace::new((3 - a.d()) as i32, names, degrees, theta, Some(differential))?)
}

/// The letter dual to the unit.
pub fn unit_letter(_a: &PDAlgebra) -> Letter {
    0
}

/// Letters dual to the positive degree part.
pub fn reduced_letters(a: &PDAlgebra) -> Vec<Letter> {
    (1..a.dim() as Letter).collect()
}

/// `γ = Σ (−1)^{|e_β|} o(e_α e_β e_γ) w_α w_β w_γ` over ordered triples.
pub fn mc_element(a: &PDAlgebra) -> Result<(GradedSpace, MCElement), FrobeniusError> {
    let space = dual_space(a)?;
    let gamma = gamma_of(a, &space);
    let mc = MCElement::new(&space, gamma)?;
    Ok((space, mc))
}

fn gamma_of(a: &PDAlgebra, space: &GradedSpace) -> WordSum {
    let n = a.dim();
    let mut gamma = WordSum::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let o = a.triple(i, j, k);
                if o.is_zero() {
                    continue;
                }
                let c = o * sgn(is_odd(a.degree(j)));
                gamma.add_letters(space, &[vec![i as Letter, j as Letter, k as Letter]], &c);
            }
        }
    }
    gamma
}

/// Compares `μ_2` recovered from `γ` with the product: on the shifted basis
/// `s e_α` it should be `μ_2(s e_α, s e_β) = (−1)^{|e_α|} s(e_α e_β)`.
/// Returns the first pair where this fails.
pub fn product_from_gamma(a: &PDAlgebra, space: &GradedSpace, gamma: &WordSum) -> Result<Option<(usize, usize)>, FrobeniusError> {
    let ops = mc_to_ainfty(space, gamma)?;
    let empty = Default::default();
    let mu2 = ops.get(&2).unwrap_or(&empty);
    let n = a.dim();
    for i in 0..n {
        for j in 0..n {
            let mut got = vec![Q::zero(); n];
            if let Some(outs) = mu2.get(&vec![i as Letter, j as Letter]) {
                for (e, c) in outs {
                    got[*e as usize] += c;
                }
            }
            let s = sgn(is_odd(a.degree(i)));
            let want: Vec<Q> = a.product(i, j).iter().map(|x| x * &s).collect();
            if got != want {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Rebuilds `γ` in a randomly permuted and rescaled basis and checks that it
/// agrees with `γ` after translating the letters back.
pub fn change_basis_check(a: &PDAlgebra, rng: &mut impl Rng) -> Result<bool, FrobeniusError> {
    let n = a.dim();
    let mut order: Vec<usize> = (1..n).collect();
    order.shuffle(rng);
    order.insert(0, 0);
    let mut scales = vec![q(1)];
    for _ in 1..n {
        let num = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { -1 } else { 1 };
        scales.push(Q::new(num.into(), rng.gen_range(1..=3).into()));
    }
    let b = a.rescaled(&order, &scales)?;
    let (space, mc) = mc_element(a)?;
    let (_, mc_b) = mc_element(&b)?;
    // f_i = s_i e_{order[i]}, so the dual letter of f_i is w_{order[i]} / s_i
    let mut back = WordSum::new();
    for (t, c) in mc_b.gamma.iter() {
        let letters: Vec<Letter> = t[0].letters().iter().map(|&l| order[l as usize] as Letter).collect();
        let scale: Q = t[0].letters().iter().map(|&l| Q::from_integer(1.into()) / &scales[l as usize]).product();
        back.add_letters(&space, &[letters], &(c * scale));
    }
    Ok(back == mc.gamma)
}

/// The cyclic Hochschild complex on words up to `cutoff` letters; the reduced
/// version drops the letter dual to the unit and the empty word.
pub fn hochschild(a: &PDAlgebra, reduced: bool, cutoff: usize) -> Result<(GradedSpace, MCElement, HochschildComplex), FrobeniusError> {
    let (space, mc) = mc_element(a)?;
    let letters: Vec<Letter> = if reduced { reduced_letters(a) } else { space.letters().collect() };
    let cx = hochschild_complex(&space, &mc.gamma, &letters, !reduced, cutoff)?;
    Ok((space, mc, cx))
}

/// Whether `mc_check` holds for the algebra's `γ`.
pub fn gamma_is_mc(a: &PDAlgebra) -> Result<bool, FrobeniusError> {
    let (space, mc) = mc_element(a)?;
    Ok(mc_check(&space, &mc.gamma)?)
}

/// `ρ^γ(δΓ) = ∂_γ ρ^γ(Γ) − (−1)^{|Γ|} ρ^γ(Γ) ∂_γ` on all twisted graphs with
/// at most `max_edges` edges, `m, n ≤ 2` and `k ≤ 1`, each evaluated on
/// `samples` random input tuples.
pub fn twisted_action_suite(a: &PDAlgebra, seed: u64, max_edges: usize, samples: usize) -> Result<SuiteOutcome, FrobeniusError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (space, mc) = mc_element(a)?;
    let gamma = &mc.gamma;
    let mut out = SuiteOutcome::new("twisted representation commutes with the differentials");
    for g in 0..=1 {
        for m in 1..=2 {
            for n in 1..=2 {
                for k in 0..=1 {
                    let bd = BiDegree::new(g, m, n, k);
                    if bd.edges().map_or(true, |e| e > max_edges) {
                        continue;
                    }
                    for graph in enumerate_basis(Family::TwRGra, space.d(), bd) {
                        let single = FormalSum::from_graph(&graph);
                        let dgraph = twist_differential(&graph);
                        for _ in 0..samples {
                            let t: Vec<CyclicWord> = (0..n).map(|_| random_word(&mut rng, &space, 1, 4)).collect();
                            let x = WordSum::single(t, q(1));
                            let lhs = act(&space, &dgraph, gamma, &x)?;
                            let mut rhs = twisted_differential_tuples(&space, gamma, &act(&space, &single, gamma, &x)?)?;
                            let inner = act(&space, &single, gamma, &twisted_differential_tuples(&space, gamma, &x)?)?;
                            rhs.add(&inner, &sgn(!is_odd(graph.degree())));
                            out.record(&lhs, &rhs, !lhs.is_zero() || !rhs.is_zero(), || {
                                describe(&space, &[&graph], &x, &lhs, &rhs)
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Result of applying graphs to Hochschild cycles.
#[derive(Clone, Debug)]
pub struct StringOperation {
    pub space: GradedSpace,
    pub output: WordSum,
    /// For single-output graphs: per output degree, the coordinates of the
    /// class against `representatives` and whether the degree is exact.
    pub classes: Vec<ClassCoordinates>,
}

#[derive(Clone, Debug)]
pub struct ClassCoordinates {
    pub degree: i64,
    pub exact: bool,
    pub representatives: Vec<WordSum>,
    pub coordinates: Vec<(usize, Q)>,
}

/// Applies `ρ^γ(graphs)` to reduced `∂_γ`-cycles and, for single-output
/// graphs, expresses the result in cohomology up to `cutoff` letters.
pub fn string_operation(a: &PDAlgebra, graphs: &FormalSum, inputs: &[WordSum], cutoff: usize) -> Result<StringOperation, FrobeniusError> {
    let (space, mc, cx) = hochschild(a, true, cutoff)?;
    let reduced = reduced_letters(a);
    let mut tensor = WordSum::single(Vec::new(), q(1));
    for (i, x) in inputs.iter().enumerate() {
        let shape_ok = x.iter().all(|(t, _)| t.len() == 1 && !t[0].is_empty() && t[0].letters().iter().all(|l| reduced.contains(l)));
        if !shape_ok || !twisted_differential(&space, &mc.gamma, x)?.is_zero() {
            return Err(CyclicError::NotACycle(i + 1).into());
        }
        tensor = tensor.tensor(x);
    }
    let output = act(&space, graphs, &mc.gamma, &tensor)?.reduced();
    let single_output = graphs.iter().all(|(g, _)| g.boundary_count() == 1);
    let mut classes = Vec::new();
    if single_output {
        let mut by_degree: BTreeMap<i64, WordSum> = BTreeMap::new();
        for (t, c) in output.iter() {
            if t[0].len() > cutoff {
                return Err(CyclicError::CutoffTooSmall(t[0].len()).into());
            }
            by_degree.entry(t[0].degree(&space)).or_default().add_term(t.clone(), c.clone());
        }
        for (degree, part) in by_degree {
            let (piece, v) = cx.coordinates(&space, &part).ok_or(CyclicError::CutoffTooSmall(cutoff + 1))?;
            let basis = cohomology_basis(&cx.complex, piece).map_err(CyclicError::from)?;
            let coordinates = basis.classify(&v).map_err(CyclicError::from)?;
            let representatives = basis
                .reps
                .iter()
                .map(|r| {
                    let mut w = WordSum::new();
                    for (i, c) in r {
                        w.add_term(vec![cx.bases[piece][*i].clone()], c.clone());
                    }
                    w
                })
                .collect();
            classes.push(ClassCoordinates { degree, exact: cx.complex.exact[piece], representatives, coordinates });
        }
    }
    Ok(StringOperation { space, output, classes })
}
