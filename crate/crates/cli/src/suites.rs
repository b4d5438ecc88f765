//! Verification suites for `rgc verify`.

use anyhow::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use rgc_core::cyclic::{ainfty_violation, chain_map_suite, lob_suite, mc_to_ainfty, morphism_suite, SuiteOutcome};
use rgc_core::frobenius::{change_basis_check, hochschild, mc_element, product_from_gamma, twisted_action_suite, PDAlgebra};
use rgc_core::linalg::is_coboundary;
use rgc_core::properad::{
    co_jacobiator, coloop, compose, differential_squared, drinfeld, enumerate_basis, enumerate_orbit_representatives,
    involutivity, is_ideal_graph, jacobiator, quartette_graphs, st_direct_differential, symmetrize_with, twist_differential,
    EngineError, Family, GraphComplex, StComplex,
};
use rgc_core::{BiDegree, FormalSum, RibbonGraph};

use crate::commands::load_algebra;
use crate::report::{Payload, Table};
use crate::{Context, Span, Suite};

pub struct VerifyConfig {
    pub d: Span,
    pub kmax: usize,
    pub emax: usize,
    pub trials: usize,
    pub dim: usize,
    pub max_len: usize,
    pub algebra: Option<String>,
    pub cutoff: usize,
    pub seed: u64,
}

/// One row of a verification table.
struct Check {
    case: String,
    checked: usize,
    nonzero: usize,
    counterexample: Option<String>,
}

impl Check {
    fn new(case: impl Into<String>) -> Self {
        Check { case: case.into(), checked: 0, nonzero: 0, counterexample: None }
    }

    fn fail(&mut self, why: impl Into<String>) {
        if self.counterexample.is_none() {
            self.counterexample = Some(why.into());
        }
    }

    fn from_outcome(o: SuiteOutcome) -> Self {
        Check { case: o.name, checked: o.checked, nonzero: o.nonzero, counterexample: o.counterexample }
    }
}

/// `(g, m, n, k)` with `m ≥ 1`, a vertex, `E ≤ emax` and `k ≤ kmax`.
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

fn ds(cfg: &VerifyConfig) -> Vec<i32> {
    cfg.d.values().map(|d| d as i32).collect()
}

fn algebras(cfg: &VerifyConfig) -> Result<Vec<(String, PDAlgebra)>> {
    match &cfg.algebra {
        Some(a) => Ok(vec![(a.clone(), load_algebra(a)?)]),
        None => ["sphere(2)", "sphere(3)", "cp(2)", "surface(1)", "surface(2)"]
            .iter()
            .map(|s| Ok((s.to_string(), PDAlgebra::builtin(s)?)))
            .collect(),
    }
}

fn delta2(cfg: &VerifyConfig) -> Vec<Check> {
    ds(cfg)
        .into_iter()
        .map(|d| {
            let mut c = Check::new(format!("d = {d}"));
            for bd in blocks(cfg.emax, cfg.kmax) {
                let reps = enumerate_orbit_representatives(Family::TwRGra, d, bd);
                c.checked += reps.len();
                if let Some(g) = reps.par_iter().find_any(|g| !differential_squared(g).is_empty()) {
                    c.fail(g.text());
                }
            }
            c
        })
        .collect()
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

fn pool(family: Family, d: i32, emax: usize, need_whites: bool) -> Vec<RibbonGraph> {
    blocks(emax, emax)
        .into_iter()
        .filter(|b| !need_whites || b.n >= 1)
        .flat_map(|b| enumerate_basis(family, d, b))
        .filter(|g| g.edge_count() >= 1)
        .collect()
}

fn properad(cfg: &VerifyConfig) -> Vec<Check> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for d in ds(cfg) {
        let graphs = pool(Family::TwRGra, d, 3, true);
        let mut c = Check::new(format!("associativity, d = {d}"));
        for _ in 0..cfg.trials {
            let mut pick = || graphs[rng.gen_range(0..graphs.len())].clone();
            let (a, b, x) = (pick(), pick(), pick());
            let i = rng.gen_range(1..=a.white_count()) as u8;
            let j = rng.gen_range(1..=b.boundary_count()) as u8;
            let p = rng.gen_range(1..=b.white_count()) as u8;
            let l = rng.gen_range(1..=x.boundary_count()) as u8;
            let (fa, fb, fx) = (FormalSum::from_graph(&a), FormalSum::from_graph(&b), FormalSum::from_graph(&x));
            let lhs = compose_sum(&compose_sum(&fa, i, &fb, j), a.white_count() as u8 - 1 + p, &fx, l);
            let rhs = compose_sum(&fa, i, &compose_sum(&fb, p, &fx, l), j);
            c.checked += 1;
            c.nonzero += usize::from(!lhs.is_zero());
            if lhs != rhs {
                c.fail(format!("{} | {} | {}", a.text(), b.text(), x.text()));
            }
        }
        out.push(c);
        for (name, s) in [("Jacobi", jacobiator(d)), ("co-Jacobi", co_jacobiator(d)), ("Drinfeld", drinfeld(d)), ("involutivity", involutivity(d))] {
            let mut c = Check::new(format!("{name} image, d = {d}"));
            c.checked = 1;
            if !s.is_zero() {
                c.fail(s.to_string());
            }
            out.push(c);
        }
    }
    out
}

fn mc(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for (name, a) in algebras(cfg)? {
        let (space, m) = mc_element(&a)?;
        let mut c = Check::new(format!("Maurer-Cartan, {name}"));
        c.checked = 1;
        if !m.mc_verified {
            c.fail("γ fails the Maurer-Cartan equation");
        }
        out.push(c);
        let mut c = Check::new(format!("product recovered from γ, {name}"));
        c.checked = 1;
        if let Some((i, j)) = product_from_gamma(&a, &space, &m.gamma)? {
            c.fail(format!("({}, {})", a.name(i), a.name(j)));
        }
        let ops = mc_to_ainfty(&space, &m.gamma)?;
        if let Some(w) = ainfty_violation(&space, &ops, 4) {
            c.fail(format!("A-infinity relation fails on {w:?}"));
        }
        out.push(c);
        let mut c = Check::new(format!("basis independence, {name}"));
        for _ in 0..cfg.trials.clamp(1, 10) {
            c.checked += 1;
            if !change_basis_check(&a, &mut rng)? {
                c.fail("γ changes under a rescaled, permuted basis");
            }
        }
        out.push(c);
    }
    Ok(out)
}

fn hochschild_suite(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for (name, a) in algebras(cfg)? {
        let mut c = Check::new(format!("reduced complex, {name}, cutoff {}", cfg.cutoff));
        match hochschild(&a, true, cfg.cutoff) {
            Ok((_, _, cx)) => {
                c.checked = cx.bases.iter().map(Vec::len).sum();
                if let Err(e) = cx.complex.check() {
                    c.fail(e.to_string());
                }
            }
            Err(e) => c.fail(e.to_string()),
        }
        out.push(c);
    }
    Ok(out)
}

fn twisted_action(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    algebras(cfg)?
        .into_iter()
        .map(|(name, a)| {
            let mut c = Check::from_outcome(twisted_action_suite(&a, cfg.seed, 3, 2)?);
            c.case = format!("{}, {name}", c.case);
            Ok(c)
        })
        .collect()
}

fn chgrav_closure(cfg: &VerifyConfig) -> Vec<Check> {
    ds(cfg)
        .into_iter()
        .map(|d| {
            let mut c = Check::new(format!("d = {d}"));
            for bd in blocks(cfg.emax, 0) {
                let e0 = bd.edges().unwrap_or(0);
                match GraphComplex::build(Family::ChGrav, d, bd.g, bd.m, bd.n, cfg.emax - e0 + 1) {
                    Ok(cx) => c.checked += cx.complex.dims.iter().sum::<usize>(),
                    Err(EngineError::NotClosed { graph, .. }) => c.fail(graph),
                    Err(e) => c.fail(e.to_string()),
                }
            }
            c
        })
        .collect()
}

fn ideal_closure(cfg: &VerifyConfig) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    ds(cfg)
        .into_iter()
        .map(|d| {
            let mut c = Check::new(format!("d = {d}"));
            let all = pool(Family::ChGrav, d, 4, false);
            let ideal: Vec<&RibbonGraph> = all.iter().filter(|g| is_ideal_graph(g)).collect();
            let with_whites: Vec<&RibbonGraph> = all.iter().filter(|g| g.white_count() > 0 && g.edge_count() <= 3).collect();
            for _ in 0..cfg.trials {
                let x = ideal[rng.gen_range(0..ideal.len())];
                let y = with_whites[rng.gen_range(0..with_whites.len())];
                let mut terms = FormalSum::new();
                let j = rng.gen_range(1..=x.boundary_count()) as u8;
                terms.add_sum(&compose(y, rng.gen_range(1..=y.white_count()) as u8, x, j).expect("valid slots"), &rgc_core::rational::q(1));
                if x.white_count() > 0 {
                    let i = rng.gen_range(1..=x.white_count()) as u8;
                    let j = rng.gen_range(1..=y.boundary_count()) as u8;
                    terms.add_sum(&compose(x, i, y, j).expect("valid slots"), &rgc_core::rational::q(1));
                }
                c.checked += 1;
                c.nonzero += usize::from(!terms.is_zero());
                let bad = terms.graphs().find(|g| !is_ideal_graph(g)).map(RibbonGraph::text);
                if let Some(g) = bad {
                    c.fail(format!("{} composed with {} gives {g}", x.text(), y.text()));
                }
            }
            c
        })
        .collect()
}

/// `class`, `coboundary` or `not a cycle` in the string topology quotient.
fn st_status(st: &StComplex, s: &FormalSum) -> &'static str {
    let v = st.project(1, s).expect("chain gravity terms");
    let dv = st.project(2, &s.map_linear(twist_differential)).expect("chain gravity terms");
    if !dv.is_empty() {
        "not a cycle"
    } else if v.is_empty() || is_coboundary(&v, st.complex(), 1).expect("cycle") {
        "coboundary"
    } else {
        "class"
    }
}

fn st_classes(cfg: &VerifyConfig) -> Vec<Check> {
    let mut out = Vec::new();
    for d in ds(cfg) {
        let skew = d.rem_euclid(2) == 0;
        for (parity, sk) in [("stated parity", skew), ("opposite parity", !skew)] {
            let mut c = Check::new(format!("quartette, d = {d}, {parity}"));
            let mut statuses = Vec::new();
            for g in quartette_graphs(d) {
                let bd = g.bidegree();
                let st = StComplex::build(d, bd.g, bd.m, bd.n, 2).expect("complex");
                let status = st_status(&st, &symmetrize_with(&g, sk));
                c.checked += 1;
                c.nonzero += usize::from(status == "class");
                statuses.push(format!("({},{}) {status}", bd.m, bd.n));
            }
            if c.nonzero < c.checked {
                c.fail(statuses.join(", "));
            }
            out.push(c);
        }
    }
    out
}

fn cobracket_st(cfg: &VerifyConfig) -> Vec<Check> {
    ds(cfg)
        .into_iter()
        .map(|d| {
            let mut c = Check::new(format!("d = {d}"));
            let dc = twist_differential(&coloop(d));
            let st = StComplex::build(d, 0, 2, 1, 1).expect("complex");
            c.checked = 1;
            if dc.is_zero() {
                c.fail("δ of the cobracket image vanishes already in chain gravity");
            } else if !st.project(1, &dc).expect("chain gravity terms").is_empty() {
                c.fail(format!("δ of the cobracket image survives in the quotient: {dc}"));
            }
            c
        })
        .collect()
}

fn st_direct(cfg: &VerifyConfig) -> Vec<Check> {
    ds(cfg)
        .into_iter()
        .map(|d| {
            let mut c = Check::new(format!("d = {d}"));
            for bd in blocks(cfg.emax, 0) {
                let ktop = cfg.emax - bd.edges().unwrap_or(0);
                let st = match StComplex::build(d, bd.g, bd.m, bd.n, ktop + 1) {
                    Ok(st) => st,
                    Err(e) => {
                        c.fail(e.to_string());
                        continue;
                    }
                };
                for k in 0..=ktop {
                    for i in 0..st.complex().dims[k] {
                        let rep = st.representative(k, i);
                        let direct = st.project(k + 1, &st_direct_differential(rep)).expect("chain gravity terms");
                        c.checked += 1;
                        c.nonzero += usize::from(!direct.is_empty());
                        if &direct != st.complex().diffs[k].column(i) {
                            c.fail(rep.text());
                        }
                    }
                }
            }
            c
        })
        .collect()
}

pub fn verify(_ctx: &Context, suite: Suite, cfg: &VerifyConfig) -> Result<(Payload, bool)> {
    let checks = match suite {
        Suite::Delta2 => delta2(cfg),
        Suite::Properad => properad(cfg),
        Suite::Morphism => vec![Check::from_outcome(morphism_suite(cfg.seed, cfg.trials, cfg.dim, 3, cfg.max_len))],
        Suite::ChainMap => vec![Check::from_outcome(chain_map_suite(cfg.seed, cfg.trials, 3, cfg.max_len))],
        Suite::Lob => lob_suite(cfg.seed, cfg.trials, cfg.dim, cfg.max_len).into_iter().map(Check::from_outcome).collect(),
        Suite::Mc => mc(cfg)?,
        Suite::Hochschild => hochschild_suite(cfg)?,
        Suite::TwistedAction => twisted_action(cfg)?,
        Suite::ChgravClosure => chgrav_closure(cfg),
        Suite::IdealClosure => ideal_closure(cfg),
        Suite::StClasses => st_classes(cfg),
        Suite::CobracketSt => cobracket_st(cfg),
        Suite::StDirect => st_direct(cfg),
    };
    let mut t = Table::new("verify", &["case", "checked", "nonzero", "passed", "counterexample"]);
    // the opposite parity rows of st-classes are informational
    let counts = |c: &Check| !(suite == Suite::StClasses && c.case.contains("opposite"));
    let mut ok = true;
    for c in &checks {
        let passed = c.counterexample.is_none();
        if counts(c) {
            ok &= passed;
        }
        t.push(vec![json!(c.case), json!(c.checked), json!(c.nonzero), json!(passed), json!(c.counterexample)]);
    }
    let mut p = Payload::default();
    p.extra.insert("suite".into(), json!(format!("{suite:?}")));
    p.extra.insert("passed".into(), json!(ok));
    p.tables.push(t);
    Ok((p, ok))
}
