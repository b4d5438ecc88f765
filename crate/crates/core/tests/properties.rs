use std::sync::OnceLock;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rgc_core::cyclic::random::{random_paired_space, random_word};
use rgc_core::cyclic::{cyclic_normalize, GradedSpace, WordSum};
use rgc_core::frobenius::PDAlgebra;
use rgc_core::properad::basis::permute_darts;
use rgc_core::properad::{compose, enumerate_basis, is_ideal_graph, twist_differential, Family};
use rgc_core::rational::q;
use rgc_core::{parse_graph, BiDegree, FormalSum, RibbonGraph};

fn blocks(emax: usize, kmax: usize) -> Vec<BiDegree> {
    let mut out = Vec::new();
    for g in 0..=(emax + 1) / 2 {
        for m in 1..=emax + 2 {
            for n in 0..=emax + 2 {
                for k in 0..=kmax {
                    let bd = BiDegree::new(g, m, n, k);
                    if n + k >= 1 && bd.edges().is_some_and(|e| e <= emax) {
                        out.push(bd);
                    }
                }
            }
        }
    }
    out
}

/// Twisted graphs with at most four edges and two black vertices, per `d`.
fn pool(d: i32) -> &'static [RibbonGraph] {
    static POOLS: OnceLock<Vec<Vec<RibbonGraph>>> = OnceLock::new();
    &POOLS.get_or_init(|| (0..4).map(|d| blocks(4, 2).into_iter().flat_map(|b| enumerate_basis(Family::TwRGra, d, b)).collect()).collect())[d as usize]
}

fn chgrav_pool(d: i32) -> Vec<&'static RibbonGraph> {
    pool(d).iter().filter(|g| Family::ChGrav.admits(g)).collect()
}

fn pick<T: Copy>(xs: &[T], seed: usize) -> T {
    xs[seed % xs.len()]
}

fn graph() -> impl Strategy<Value = RibbonGraph> {
    (0..4i32, any::<usize>()).prop_map(|(d, i)| pool(d)[i % pool(d).len()].clone())
}

fn compose_sum(a: &FormalSum, i: u8, b: &FormalSum, j: u8) -> FormalSum {
    let mut out = FormalSum::new();
    for (x, cx) in a.iter() {
        for (y, cy) in b.iter() {
            out.add_sum(&compose(x, i, y, j).unwrap(), &(cx * cy));
        }
    }
    out
}

fn space(seed: u64, d: i32, dg: bool) -> GradedSpace {
    random_paired_space(&mut ChaCha8Rng::seed_from_u64(seed), d, 6, dg)
}

fn odd(x: i64) -> bool {
    x.rem_euclid(2) == 1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn canonical_form_ignores_dart_names(g in graph(), seed in any::<u64>()) {
        let mut p: Vec<usize> = (0..g.dart_count()).collect();
        rand::seq::SliceRandom::shuffle(&mut p[..], &mut ChaCha8Rng::seed_from_u64(seed));
        let h = permute_darts(&g, &p);
        prop_assert_eq!(FormalSum::from_graph(&h), FormalSum::from_graph(&g));
        prop_assert_eq!(h.canonicalize().0, g.canonicalize().0);
    }

    #[test]
    fn odd_changes_flip_the_sign(g in graph(), x in any::<usize>()) {
        prop_assume!(g.edge_count() >= 2);
        let base = FormalSum::from_graph(&g);
        let flip = if g.d() % 2 == 0 { q(1) } else { q(-1) };
        prop_assert_eq!(FormalSum::from_graph(&g.flip_edge((x % g.dart_count()) as u8)), base.scaled(&flip));
        let swap = if g.d() % 2 == 0 { q(-1) } else { q(1) };
        prop_assert_eq!(FormalSum::from_graph(&g.transpose_symbols(0, 1)), base.scaled(&swap));
        prop_assert_eq!(FormalSum::from_graph(&g.negated()), base.scaled(&q(-1)));
    }

    #[test]
    fn graph_text_round_trips(g in graph()) {
        let h = parse_graph(&g.text()).unwrap();
        prop_assert_eq!(FormalSum::from_graph(&h), FormalSum::from_graph(&g));
        prop_assert_eq!(h.text(), g.text());
    }

    #[test]
    fn composition_is_associative(d in 0..4i32, s in any::<[usize; 7]>()) {
        let small: Vec<&RibbonGraph> = pool(d).iter().filter(|g| g.white_count() >= 1 && g.edge_count() <= 3 && g.edge_count() >= 1).collect();
        let (a, b, c) = (pick(&small, s[0]), pick(&small, s[1]), pick(&small, s[2]));
        let i = (s[3] % a.white_count() + 1) as u8;
        let j = (s[4] % b.boundary_count() + 1) as u8;
        let p = (s[5] % b.white_count() + 1) as u8;
        let l = (s[6] % c.boundary_count() + 1) as u8;
        let (fa, fb, fc) = (FormalSum::from_graph(a), FormalSum::from_graph(b), FormalSum::from_graph(c));
        let lhs = compose_sum(&compose_sum(&fa, i, &fb, j), a.white_count() as u8 - 1 + p, &fc, l);
        let rhs = compose_sum(&fa, i, &compose_sum(&fb, p, &fc, l), j);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn chain_gravity_is_closed_under_the_differential(d in 0..4i32, s in any::<usize>()) {
        let g = pick(&chgrav_pool(d), s);
        let dg = twist_differential(g);
        prop_assert!(dg.graphs().all(|h| Family::ChGrav.admits(h)), "{} has a bad term", g.text());
    }

    #[test]
    fn ideal_is_closed_under_composition(d in 0..4i32, s in any::<[usize; 5]>()) {
        let all = chgrav_pool(d);
        let ideal: Vec<&RibbonGraph> = all.iter().copied().filter(|g| is_ideal_graph(g)).collect();
        let other: Vec<&RibbonGraph> = all.iter().copied().filter(|g| g.white_count() > 0 && g.edge_count() <= 3).collect();
        let (x, y) = (pick(&ideal, s[0]), pick(&other, s[1]));
        let left = compose(y, (s[2] % y.white_count() + 1) as u8, x, (s[3] % x.boundary_count() + 1) as u8).unwrap();
        prop_assert!(left.graphs().all(is_ideal_graph));
        if x.white_count() > 0 {
            let right = compose(x, (s[4] % x.white_count() + 1) as u8, y, (s[3] % y.boundary_count() + 1) as u8).unwrap();
            prop_assert!(right.graphs().all(is_ideal_graph));
        }
    }

    #[test]
    fn cyclic_normal_form_is_rotation_invariant(seed in any::<u64>(), d in 0..4i32, r in any::<usize>(), len in 1usize..7) {
        let space = space(seed, d, false);
        let w = random_word(&mut ChaCha8Rng::seed_from_u64(seed ^ 1), &space, len, len);
        let letters = w.letters();
        let r = r % letters.len();
        let rotated: Vec<_> = letters[r..].iter().chain(&letters[..r]).copied().collect();
        let (nw, sw) = cyclic_normalize(&space, letters);
        let (nr, sr) = cyclic_normalize(&space, &rotated);
        prop_assert_eq!(&nw, &nr);
        let koszul = odd(space.word_degree(&letters[..r])) && odd(space.word_degree(&letters[r..]));
        prop_assert_eq!(sr, if koszul { -sw } else { sw });
    }

    #[test]
    fn pairing_symmetry(seed in any::<u64>(), d in 0..4i32, dg in any::<bool>()) {
        let space = space(seed, d, dg);
        for a in space.letters() {
            for b in space.letters() {
                let sign = if odd(d as i64 + space.degree(a) * space.degree(b)) { q(-1) } else { q(1) };
                prop_assert_eq!(space.theta(b, a), &(space.theta(a, b) * sign));
            }
        }
    }

    #[test]
    fn word_lines_round_trip(seed in any::<u64>(), d in 0..4i32, n in 1usize..5) {
        let space = space(seed, d, false);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 2);
        let mut sum = WordSum::new();
        for i in 0..n {
            let w = random_word(&mut rng, &space, 1, 4);
            sum.add(&WordSum::word(w), &q(i as i64 + 1));
        }
        prop_assert_eq!(WordSum::parse_lines(&space, &sum.to_lines(&space)).unwrap(), sum);
    }

    #[test]
    fn algebra_text_round_trips(which in 0usize..6) {
        let name = ["sphere(2)", "sphere(3)", "cp(2)", "cp(3)", "surface(1)", "surface(2)"][which];
        let a = PDAlgebra::builtin(name).unwrap();
        prop_assert_eq!(PDAlgebra::parse(&a.to_text()).unwrap(), a);
    }
}
