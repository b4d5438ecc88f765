//! Acceptance run: one line per criterion.
//!
//! Two criteria disagree with a literal reading of their statement (see
//! README, "Known deviations"). They are evaluated literally, reported as
//! FAIL, and listed in `KNOWN`; the run exits non-zero only on any other
//! failure, or if a known failure starts passing.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use rgc_core::cyclic::{chain_map_suite, morphism_suite, CyclicError};
use rgc_core::frobenius::{hochschild, mc_element, PDAlgebra};
use rgc_core::linalg::{cohomology_basis, cohomology_dims, is_coboundary, GradedComplex, SparseMatrix};
use rgc_core::properad::{
    co_jacobiator, compose, differential_squared, drinfeld, enumerate_basis, enumerate_orbit_representatives,
    involutivity, jacobiator, quartette_graphs, st_direct_differential, symmetrize_with, twist_differential, Family,
    GraphComplex, StComplex,
};
use rgc_core::rational::q;
use rgc_core::{BiDegree, FormalSum, RibbonGraph, Q};

const KNOWN: [usize; 2] = [4, 8];

struct Outcome {
    pass: bool,
    detail: String,
    notes: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into(), notes: Vec::new() }
    }
}

/// All `(g, m, n, k)` with `m ≥ 1`, at least one vertex, `E ≤ emax`, `k ≤ kmax`.
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

fn criterion_1() -> Outcome {
    let jobs: Vec<(i32, BiDegree)> = (0..4).flat_map(|d| blocks(6, 4).into_iter().map(move |b| (d, b))).collect();
    let results: Vec<(usize, Option<String>)> = jobs
        .par_iter()
        .map(|&(d, bd)| {
            let reps = enumerate_orbit_representatives(Family::TwRGra, d, bd);
            let bad = reps.par_iter().find_any(|g| !differential_squared(g).is_empty());
            (reps.len(), bad.map(|g| format!("d = {d}: {}", g.text())))
        })
        .collect();
    let checked: usize = results.iter().map(|r| r.0).sum();
    match results.into_iter().find_map(|r| r.1) {
        None => Outcome::new(true, format!("δ² = 0 on {checked} orbit representatives, d = 0..3, E ≤ 6, k ≤ 4")),
        Some(g) => Outcome::new(false, format!("δ² ≠ 0 on {g}")),
    }
}

fn compose_sum(a: &FormalSum, i: u8, b: &FormalSum, j: u8) -> FormalSum {
    let mut out = FormalSum::new();
    for (x, cx) in a.iter() {
        for (y, cy) in b.iter() {
            out.add_sum(&compose(x, i, y, j).expect("valid slots"), &(cx * cy));
        }
    }
    out
}

fn small_pool(d: i32) -> Vec<RibbonGraph> {
    blocks(3, 3)
        .into_iter()
        .filter(|b| b.n >= 1)
        .flat_map(|b| enumerate_basis(Family::TwRGra, d, b))
        .filter(|g| g.edge_count() >= 1)
        .collect()
}

/// `(a i∘j b) (n_a−1+p)∘l c = a i∘j (b p∘l c)` on random triples.
fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let pools: Vec<Vec<RibbonGraph>> = (0..4).map(small_pool).collect();
    let mut nonzero = 0;
    for t in 0..100 {
        let d = (t % 4) as i32;
        let pool = &pools[d as usize];
        let pick = |rng: &mut ChaCha8Rng| pool[rng.gen_range(0..pool.len())].clone();
        let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let i = rng.gen_range(1..=a.white_count()) as u8;
        let j = rng.gen_range(1..=b.boundary_count()) as u8;
        let p = rng.gen_range(1..=b.white_count()) as u8;
        let l = rng.gen_range(1..=c.boundary_count()) as u8;
        let (fa, fb, fc) = (FormalSum::from_graph(&a), FormalSum::from_graph(&b), FormalSum::from_graph(&c));
        let lhs = compose_sum(&compose_sum(&fa, i, &fb, j), a.white_count() as u8 - 1 + p, &fc, l);
        let rhs = compose_sum(&fa, i, &compose_sum(&fb, p, &fc, l), j);
        if lhs != rhs {
            return Outcome::new(false, format!("associativity fails for\n{a}\n{b}\n{c}"));
        }
        nonzero += usize::from(!lhs.is_zero());
    }
    for d in 0..4 {
        let rels = [("Jacobi", jacobiator(d)), ("co-Jacobi", co_jacobiator(d)), ("Drinfeld", drinfeld(d)), ("involutivity", involutivity(d))];
        for (name, s) in rels {
            if !s.is_zero() {
                return Outcome::new(false, format!("{name} image nonzero for d = {d}"));
            }
        }
    }
    Outcome::new(true, format!("associativity on 100 triples ({nonzero} nonzero); four relation images vanish, d = 0..3"))
}

fn criterion_3() -> Outcome {
    let m = morphism_suite(3, 200, 4, 3, 5);
    let c = chain_map_suite(3, 200, 3, 5);
    let pass = m.passed() && c.passed();
    let mut o = Outcome::new(
        pass,
        format!("morphism {}/{} ({} nonzero), chain map {}/{} ({} nonzero)", m.checked, 200, m.nonzero, c.checked, 200, c.nonzero),
    );
    o.notes.extend(m.counterexample.into_iter().chain(c.counterexample));
    o
}

/// Trace of the boundary swap on the cohomology at `piece`.
fn swap_trace(cx: &GraphComplex, piece: usize) -> Q {
    let basis = cohomology_basis(&cx.complex, piece).expect("complex");
    let mut tr = Q::zero();
    for (r, rep) in basis.reps.iter().enumerate() {
        let swapped = cx.sum_of(piece, rep).relabel_boundaries(&[2, 1]);
        let v = cx.coordinates(piece, &swapped).expect("closed under relabeling");
        let coords = basis.classify(&v).expect("swap preserves cycles");
        if let Some((_, c)) = coords.iter().find(|e| e.0 == r) {
            tr += c;
        }
    }
    tr
}

fn criterion_4() -> Outcome {
    let mut pass = true;
    let mut detail = Vec::new();
    let mut notes = Vec::new();
    let mut invariant_ok = true;
    for d in [1, 2] {
        let cx = GraphComplex::build(Family::TwRGra, d, 0, 2, 0, 9).expect("complex");
        let table = cohomology_dims(&cx.complex).expect("complex");
        let exact_ks: Vec<usize> = (0..=9).filter(|&k| cx.complex.exact[k]).collect();
        let want: Vec<(i64, usize)> =
            exact_ks.iter().filter(|&&k| k % 4 == (2 * d as usize + 1) % 4).map(|&k| (cx.complex.degree(k), 1)).collect();
        let got = table.nonzero_exact();
        pass &= got == want;
        detail.push(format!("d = {d}: expected {want:?}, got {got:?}"));
        let mut inv = Vec::new();
        for &k in &exact_ks {
            let dim = table.entries[k].dim;
            if dim > 0 {
                let half = (Q::from_integer(dim.into()) + swap_trace(&cx, k)) / q(2);
                if !half.is_zero() {
                    inv.push((cx.complex.degree(k), half.to_integer()));
                }
            }
        }
        let inv_want: Vec<(i64, BigInt)> = want.iter().map(|&(g, c)| (g, BigInt::from(c))).collect();
        invariant_ok &= inv == inv_want;
        notes.push(format!("d = {d}: boundary-swap invariant part {inv:?}"));
    }
    let mut o = Outcome::new(pass, detail.join("; "));
    notes.push(format!(
        "info: invariant part under swapping the two boundaries matches the predicted degrees: {}",
        if invariant_ok { "PASS" } else { "FAIL" }
    ));
    o.notes = notes;
    o
}

/// Expected `(degree, dim)` from `H_c^p` dimensions of the moduli space.
fn placed(g: usize, m: usize, n: usize, d: i32, hc: &[(i64, usize)]) -> Vec<(i64, usize)> {
    let shift = m as i64 - d as i64 * (2 * g as i64 - 2 + m as i64 + n as i64);
    let mut v: Vec<(i64, usize)> = hc.iter().map(|&(p, c)| (p + shift, c)).collect();
    v.sort();
    v
}

fn matches_oracle(family: Family, g: usize, m: usize, n: usize, d: i32, want: &[(i64, usize)]) -> Result<(), String> {
    let first = BiDegree::new(g, m, n, 0).degree(d);
    let top = want.iter().map(|&(deg, _)| (deg - first) as usize).max().unwrap_or(0);
    let cx = GraphComplex::build(family, d, g, m, n, top + 1).map_err(|e| e.to_string())?;
    let table = cohomology_dims(&cx.complex).map_err(|e| e.to_string())?;
    if want.iter().any(|&(deg, _)| !table.get(deg).is_some_and(|e| e.exact)) {
        return Err(format!("({g};{m},{n}) d = {d}: expected degrees outside the exact window"));
    }
    let got = table.nonzero_exact();
    if got != want {
        return Err(format!("({g};{m},{n}) d = {d}: expected {want:?}, got {got:?}"));
    }
    Ok(())
}

const M03: [(i64, usize); 1] = [(0, 1)];
const M04: [(i64, usize); 2] = [(1, 2), (2, 1)];
const M11: [(i64, usize); 1] = [(2, 1)];

fn criterion_5() -> Outcome {
    let cases: [(usize, usize, usize, &[(i64, usize)]); 6] =
        [(0, 1, 2, &M03), (0, 2, 1, &M03), (0, 1, 3, &M04), (0, 2, 2, &M04), (0, 3, 1, &M04), (1, 1, 0, &M11)];
    let jobs: Vec<(i32, usize)> = (0..4).flat_map(|d| (0..cases.len()).map(move |c| (d, c))).collect();
    let errs: Vec<String> = jobs
        .par_iter()
        .filter_map(|&(d, c)| {
            let (g, m, n, hc) = cases[c];
            matches_oracle(Family::TwRGra, g, m, n, d, &placed(g, m, n, d, hc)).err()
        })
        .collect();
    match errs.first() {
        None => Outcome::new(true, "(0;1,2) (0;2,1) (0;1,3) (0;2,2) (0;3,1) (1;1,0) match H_c of M_{0,3}, M_{0,4}, M_{1,1}, d = 0..3"),
        Some(e) => Outcome::new(false, e.clone()),
    }
}

fn criterion_6() -> Outcome {
    let mut detail = Vec::new();
    for d in 0..4 {
        for (n, hc, total) in [(2, &M03[..], 1), (3, &M04[..], 3)] {
            let want = placed(0, 1, n, d, hc);
            if want.iter().map(|e| e.1).sum::<usize>() != total {
                return Outcome::new(false, "oracle total");
            }
            if let Err(e) = matches_oracle(Family::TwRTree, 0, 1, n, d, &want) {
                return Outcome::new(false, e);
            }
            if d == 1 {
                detail.push(format!("n = {n}: {want:?}"));
            }
        }
    }
    Outcome::new(true, format!("tree complexes have total dimension 1 and 3, d = 0..3 (d = 1: {})", detail.join(", ")))
}

fn criterion_7() -> Outcome {
    let mut detail = Vec::new();
    for name in ["sphere(2)", "sphere(3)", "cp(2)", "surface(2)"] {
        let a = PDAlgebra::builtin(name).expect("builtin");
        let (_, mc) = mc_element(&a).expect("mc element");
        if !mc.mc_verified {
            return Outcome::new(false, format!("{name}: γ is not Maurer-Cartan"));
        }
        match hochschild(&a, true, 8) {
            Ok((_, _, cx)) => {
                if let Err(e) = cx.complex.check() {
                    return Outcome::new(false, format!("{name}: {e}"));
                }
                detail.push(format!("{name} ({} words)", cx.bases.iter().map(Vec::len).sum::<usize>()));
            }
            Err(e) => return Outcome::new(false, format!("{name}: {e}")),
        }
    }
    let _: Option<CyclicError> = None;
    Outcome::new(true, format!("MC holds, ∂_γ² = 0 and the reduced words are preserved up to length 8: {}", detail.join(", ")))
}

fn criterion_8() -> Outcome {
    let mut notes = Vec::new();
    let mut literal = true;
    let mut flipped = true;
    let mut detail = Vec::new();
    for d in [1, 2] {
        let c = rgc_core::properad::coloop(d);
        let dc = twist_differential(&c);
        let st = StComplex::build(d, 0, 2, 1, 1).expect("complex");
        let closed_in_st = st.project(1, &dc).expect("chain gravity terms").is_empty();
        if dc.is_zero() || !closed_in_st {
            return Outcome::new(false, format!("d = {d}: cobracket image nonzero in ChGrav: {}, closed in ST: {closed_in_st}", !dc.is_zero()));
        }
        let skew = d % 2 == 0;
        let mut classes = Vec::new();
        for g in quartette_graphs(d) {
            let bd = g.bidegree();
            let st = StComplex::build(d, bd.g, bd.m, bd.n, 2).expect("complex");
            let class = |s: &FormalSum| -> &'static str {
                let v = st.project(1, s).expect("chain gravity terms");
                let dv = st.project(2, &twist_differential_of(s)).expect("chain gravity terms");
                if !dv.is_empty() {
                    "not a cycle"
                } else if v.is_empty() || is_coboundary(&v, st.complex(), 1).expect("cycle") {
                    "coboundary"
                } else {
                    "class"
                }
            };
            let lit = class(&symmetrize_with(&g, skew));
            let alt = class(&symmetrize_with(&g, !skew));
            literal &= lit == "class";
            flipped &= alt == "class";
            classes.push(format!("({},{}) {lit}", bd.m, bd.n));
        }
        detail.push(format!("d = {d}: {}", classes.join(", ")));
    }
    let mut o = Outcome::new(literal, format!("cobracket image closed in ST only; quartette {}", detail.join("; ")));
    notes.push(format!(
        "info: with the opposite (anti)symmetrization parity all four elements are classes for d = 1, 2: {}",
        if flipped { "PASS" } else { "FAIL" }
    ));
    o.notes = notes;
    o
}

fn twist_differential_of(s: &FormalSum) -> FormalSum {
    s.map_linear(twist_differential)
}

fn criterion_9() -> Outcome {
    let mut jobs = Vec::new();
    for d in 0..4 {
        for g in 0..=3 {
            for m in 1..=7 {
                for n in 0..=7 {
                    let base = BiDegree::new(g, m, n, 0);
                    let Some(e0) = base.edges() else { continue };
                    if e0 > 5 {
                        continue;
                    }
                    jobs.push((d, g, m, n, 5 - e0));
                }
            }
        }
    }
    let results: Vec<Result<usize, String>> = jobs
        .par_iter()
        .map(|&(d, g, m, n, ktop)| {
            let st = StComplex::build(d, g, m, n, ktop + 1).map_err(|e| e.to_string())?;
            let mut cols = 0;
            for k in 0..=ktop {
                let dk = &st.complex().diffs[k];
                for i in 0..st.complex().dims[k] {
                    let direct = st.project(k + 1, &st_direct_differential(st.representative(k, i))).map_err(|e| e.to_string())?;
                    if &direct != dk.column(i) {
                        return Err(format!("d = {d}: {}", st.representative(k, i).text()));
                    }
                    cols += 1;
                }
            }
            Ok(cols)
        })
        .collect();
    let mut total = 0;
    for r in results {
        match r {
            Ok(c) => total += c,
            Err(e) => return Outcome::new(false, format!("induced and direct differentials differ on {e}")),
        }
    }
    Outcome::new(true, format!("induced = direct differential on {total} quotient basis columns, E ≤ 5, d = 0..3"))
}

/// Rank by fraction-free Gaussian elimination on a dense integer matrix.
fn bareiss_rank(m: &SparseMatrix) -> usize {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = vec![vec![BigInt::zero(); cols]; rows];
    for j in 0..cols {
        let lcm = m.column(j).iter().fold(BigInt::one(), |l, (_, c)| num_integer::lcm(l, c.denom().clone()));
        for (i, c) in m.column(j) {
            a[*i][j] = c.numer() * (&lcm / c.denom());
        }
    }
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                a[r][c] = v / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].abs();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn dense_dims(cx: &GradedComplex) -> Vec<(i64, usize, bool)> {
    let ranks: Vec<usize> = cx.diffs.iter().map(bareiss_rank).collect();
    (0..cx.len())
        .map(|i| {
            let out = ranks.get(i).copied().unwrap_or(0);
            let inc = if i == 0 { 0 } else { ranks[i - 1] };
            (cx.degree(i), cx.dims[i] - out - inc, cx.exact[i])
        })
        .collect()
}

fn criterion_10() -> Outcome {
    let a = PDAlgebra::sphere(3).expect("builtin");
    let (_, _, cx) = hochschild(&a, true, 8).expect("complex");
    let table = cohomology_dims(&cx.complex).expect("complex");
    let dense: Vec<(i64, usize)> = dense_dims(&cx.complex).into_iter().filter(|e| e.2 && e.1 > 0).map(|e| (e.0, e.1)).collect();
    let got = table.nonzero_exact();
    let pattern: Vec<(i64, usize)> = (1..=8).rev().map(|l| (-2 * l, 1)).collect();
    Outcome::new(
        got == dense && got == pattern,
        format!("sparse {got:?}, dense oracle agrees: {}, one class per word length 1..8: {}", got == dense, got == pattern),
    )
}

fn main() {
    let criteria: [(usize, &str, fn() -> Outcome); 10] = [
        (1, "differential squares to zero", criterion_1),
        (2, "properad axioms and relation images", criterion_2),
        (3, "representation suite", criterion_3),
        (4, "polytope classes", criterion_4),
        (5, "moduli space oracle", criterion_5),
        (6, "gravity operad dimensions", criterion_6),
        (7, "Maurer-Cartan element and Hochschild differential", criterion_7),
        (8, "string topology structure", criterion_8),
        (9, "direct string topology differential", criterion_9),
        (10, "loop space sanity for the three-sphere", criterion_10),
    ];
    let mut unexpected = Vec::new();
    for (n, name, run) in criteria {
        let t = Instant::now();
        let o = run();
        let status = if o.pass { "PASS" } else { "FAIL" };
        let known = KNOWN.contains(&n);
        let tag = if known && !o.pass { " (known deviation)" } else { "" };
        println!("criterion {n:>2} {status}{tag}: {name} [{:.1}s] {}", t.elapsed().as_secs_f64(), o.detail);
        for note in &o.notes {
            println!("              {note}");
        }
        if o.pass == known {
            unexpected.push(n);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
