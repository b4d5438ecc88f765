//! Randomized identity checks for the representation on cyclic words.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::random::{random_paired_space, random_word, small_graphs};
use super::represent::{cobracket, compose_apply, differential, lie_bracket, represent, Operation};
use super::space::{odd, GradedSpace};
use super::word::{CyclicWord, WordSum};
use crate::properad::{bracket, coloop, compose};
use crate::rational::{q, Q};
use crate::ribbon::RibbonGraph;

/// Result of one randomized identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOutcome {
    pub name: String,
    pub checked: usize,
    /// Instances where the compared sides were not both zero.
    pub nonzero: usize,
    pub counterexample: Option<String>,
}

impl SuiteOutcome {
    pub(crate) fn new(name: &str) -> Self {
        SuiteOutcome { name: name.into(), checked: 0, nonzero: 0, counterexample: None }
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    /// Compares two sides; `witnessed` marks instances where the identity
    /// was not trivially zero.
    pub(crate) fn record(&mut self, lhs: &WordSum, rhs: &WordSum, witnessed: bool, describe: impl FnOnce() -> String) {
        self.checked += 1;
        self.nonzero += usize::from(witnessed);
        if lhs != rhs && self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }
}

fn sign(odd_exp: bool) -> Q {
    q(if odd_exp { -1 } else { 1 })
}

fn random_tuple(rng: &mut impl Rng, space: &GradedSpace, n: usize, max_len: usize) -> WordSum {
    let mut x = WordSum::new();
    for _ in 0..2 {
        let t: Vec<CyclicWord> = (0..n).map(|_| random_word(rng, space, 1, max_len)).collect();
        x.add_term(t, q(rng.gen_range(1..4)));
    }
    x
}

pub(crate) fn describe(space: &GradedSpace, graphs: &[&RibbonGraph], input: &WordSum, lhs: &WordSum, rhs: &WordSum) -> String {
    let mut s = format!("d = {}\n", space.d());
    for g in graphs {
        s.push_str(&format!("graph {g}\n"));
    }
    s.push_str(&format!("input\n{}lhs\n{}rhs\n{}", input.to_lines(space), lhs.to_lines(space), rhs.to_lines(space)));
    s
}

/// `ρ(Γ1 i∘j Γ2) = ρ(Γ1) i∘j ρ(Γ2)` for random graphs without black vertices
/// having at most `max_edges` edges in total, over random spaces.
pub fn morphism_suite(seed: u64, trials: usize, max_dim: usize, max_edges: usize, max_len: usize) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SuiteOutcome::new("representation is a morphism");
    let graphs: Vec<Vec<RibbonGraph>> = (0..4).map(|d| small_graphs(d, max_edges)).collect();
    while out.checked < trials {
        let d = rng.gen_range(0..4);
        let pool = &graphs[d as usize];
        let g1 = &pool[rng.gen_range(0..pool.len())];
        let g2 = &pool[rng.gen_range(0..pool.len())];
        if g1.edge_count() + g2.edge_count() > max_edges {
            continue;
        }
        let dim = if rng.gen_bool(0.7) { 2 } else { max_dim };
        let dg = rng.gen_bool(0.3);
        let space = random_paired_space(&mut rng, d, dim, dg);
        let i = rng.gen_range(1..=g1.white_count());
        let j = rng.gen_range(1..=g2.boundary_count());
        let input = random_tuple(&mut rng, &space, g1.white_count() - 1 + g2.white_count(), max_len);
        let composite = compose(g1, i as u8, g2, j as u8).expect("valid slots");
        let mut lhs = WordSum::new();
        for (g, c) in composite.iter() {
            lhs.add(&represent(&space, g, &input).expect("matching arity"), c);
        }
        let rhs = compose_apply(&space, &Operation::of_graph(&space, g1), i, &Operation::of_graph(&space, g2), j, &input)
            .expect("matching arity");
        out.record(&lhs, &rhs, !lhs.is_zero() || !rhs.is_zero(), || describe(&space, &[g1, g2], &input, &lhs, &rhs));
    }
    out
}

/// `∂ ρ(Γ)(x) = (−1)^{|Γ|} ρ(Γ)(∂x)` over random spaces with an acyclic
/// differential block.
pub fn chain_map_suite(seed: u64, trials: usize, max_edges: usize, max_len: usize) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SuiteOutcome::new("representation is a chain map");
    let graphs: Vec<Vec<RibbonGraph>> = (0..4).map(|d| small_graphs(d, max_edges)).collect();
    while out.checked < trials {
        let d = rng.gen_range(0..4);
        let pool = &graphs[d as usize];
        let g = &pool[rng.gen_range(0..pool.len())];
        let space = random_paired_space(&mut rng, d, 4, true);
        let input = random_tuple(&mut rng, &space, g.white_count(), max_len);
        let lhs = differential(&space, &represent(&space, g, &input).expect("matching arity"));
        let rhs = represent(&space, g, &differential(&space, &input)).expect("matching arity").scaled(&sign(odd(g.degree())));
        out.record(&lhs, &rhs, !lhs.is_zero() || !rhs.is_zero(), || describe(&space, &[g], &input, &lhs, &rhs));
    }
    out
}

/// Cyclic sum of `op` with its outputs (or inputs) relabeled by the two
/// nontrivial cyclic permutations.
fn cyclic_sum<'a>(
    space: &'a GradedSpace,
    make: &dyn Fn() -> Operation<'a>,
    on_outputs: bool,
    x: &WordSum,
) -> WordSum {
    let mut total = (make().apply)(x).expect("matching arity");
    for p in [[2u8, 3, 1], [3, 1, 2]] {
        let op = if on_outputs { make().relabel_outputs(space, &p) } else { make().relabel_inputs(space, &p) };
        total.add(&(op.apply)(x).expect("matching arity"), &q(1));
    }
    total
}

/// Jacobi, co-Jacobi, the five-term compatibility and involutivity on
/// random words over random spaces of dimension at most `max_dim`.
pub fn lob_suite(seed: u64, trials: usize, max_dim: usize, max_len: usize) -> Vec<SuiteOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut jacobi = SuiteOutcome::new("Jacobi identity");
    let mut co_jacobi = SuiteOutcome::new("co-Jacobi identity");
    let mut drinfeld = SuiteOutcome::new("bracket-cobracket compatibility");
    let mut involutive = SuiteOutcome::new("involutivity");
    let zero = WordSum::new();
    for t in 0..trials {
        let d = (t % 4) as i32;
        let space = random_paired_space(&mut rng, d, max_dim.max(2), false);
        let (b, c) = (bracket(d), coloop(d));
        let ws: Vec<CyclicWord> = (0..3).map(|_| random_word(&mut rng, &space, 1, max_len)).collect();
        let w = |i: usize| WordSum::word(ws[i].clone());
        let br = |x: &WordSum, y: &WordSum| lie_bracket(&space, x, y).expect("valid bracket");
        let deg = |i: usize| ws[i].degree(&space);

        // [[a,b],c] + (−1)^{|a|(|b|+|c|)} [[b,c],a] + (−1)^{|c|(|a|+|b|)} [[c,a],b]
        let mut jac = br(&br(&w(0), &w(1)), &w(2));
        jac.add(&br(&br(&w(1), &w(2)), &w(0)), &sign(odd(deg(0) * (deg(1) + deg(2)))));
        jac.add(&br(&br(&w(2), &w(0)), &w(1)), &sign(odd(deg(2) * (deg(0) + deg(1)))));
        let nested = !br(&br(&w(0), &w(1)), &w(2)).is_zero();
        jacobi.record(&jac, &zero, nested, || describe(&space, &[], &w(0).tensor(&w(1)).tensor(&w(2)), &jac, &zero));

        let long = random_word(&mut rng, &space, 3, max_len.max(5));
        let single = WordSum::word(long);
        let co = || Operation::of_graph(&space, &c).compose(&space, 1, Operation::of_graph(&space, &c), 1);
        let lhs = cyclic_sum(&space, &co, true, &single);
        let nested = !(co().apply)(&single).expect("matching arity").is_zero();
        co_jacobi.record(&lhs, &zero, nested, || describe(&space, &[&c], &single, &lhs, &zero));

        let pair = w(0).tensor(&w(1));
        let mut dr = compose_apply(&space, &Operation::of_graph(&space, &c), 1, &Operation::of_graph(&space, &b), 1, &pair)
            .expect("matching arity");
        let x = || Operation::of_graph(&space, &b).compose(&space, 1, Operation::of_graph(&space, &c), 2);
        let e = sign(odd(d as i64));
        let terms: [(Operation, Q); 4] = [
            (x().relabel_outputs(&space, &[2, 1]).relabel_inputs(&space, &[2, 1]), e.clone()),
            (x().relabel_outputs(&space, &[2, 1]), q(1)),
            (x(), e),
            (x().relabel_inputs(&space, &[2, 1]), q(1)),
        ];
        for (op, k) in &terms {
            dr.add(&(op.apply)(&pair).expect("matching arity"), k);
        }
        let nested = !cobracket(&space, &br(&w(0), &w(1))).expect("valid cobracket").is_zero();
        drinfeld.record(&dr, &zero, nested, || describe(&space, &[&b, &c], &pair, &dr, &zero));

        let cob = cobracket(&space, &single).expect("valid cobracket");
        let inv = represent(&space, &b, &cob).expect("matching arity");
        involutive.record(&inv, &zero, !cob.is_zero(), || describe(&space, &[&b, &c], &single, &inv, &zero));
    }
    vec![jacobi, co_jacobi, drinfeld, involutive]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        assert!(morphism_suite(1, 40, 4, 3, 4).passed());
        assert!(chain_map_suite(1, 40, 2, 4).passed());
        for o in lob_suite(1, 40, 4, 4) {
            assert!(o.passed(), "{}: {:?}", o.name, o.counterexample);
        }
    }
}
