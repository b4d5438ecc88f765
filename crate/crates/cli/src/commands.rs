//! `basis`, `cohomology`, `string-ops` and `export`.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context as _, Result};
use rayon::prelude::*;
use serde_json::{json, Value};

use rgc_core::cyclic::WordSum;
use rgc_core::frobenius::{dual_space, string_operation, PDAlgebra};
use rgc_core::linalg::sms::to_sms;
use rgc_core::linalg::{cohomology_dims_with, GradedComplex};
use rgc_core::properad::{bracket, coloop, quartette_graphs, symmetrize, GraphComplex, StComplex};
use rgc_core::rational::fmt_q;
use rgc_core::{parse_graph, BiDegree, FormalSum};

use crate::report::{Payload, Table};
use crate::{Block, Context, FamilyArg, Span};

/// The block's complex for `k = 0..=kmax`, with bases from the cache.
pub enum Built {
    Plain(GraphComplex),
    St(Box<StComplex>),
}

pub fn build(ctx: &Context, family: FamilyArg, d: i32, g: usize, m: usize, n: usize, kmax: usize) -> Result<Built> {
    let fam = family.family();
    let bases = (0..=kmax).map(|k| ctx.cache.basis(fam, d, BiDegree::new(g, m, n, k))).collect::<Result<Vec<_>>>()?;
    let ambient = GraphComplex::from_bases(fam, d, g, m, n, bases)?;
    Ok(match family {
        FamilyArg::St => Built::St(Box::new(StComplex::from_ambient(ambient)?)),
        _ => Built::Plain(ambient),
    })
}

impl Built {
    pub fn graded(&self) -> &GradedComplex {
        match self {
            Built::Plain(c) => &c.complex,
            Built::St(s) => s.complex(),
        }
    }

    /// Basis graphs at `k`: representatives for the quotient.
    pub fn graphs(&self, k: usize) -> Vec<String> {
        match self {
            Built::Plain(c) => c.bases[k].graphs.iter().map(|g| g.text()).collect(),
            Built::St(s) => (0..s.complex().dims[k]).map(|i| s.representative(k, i).text()).collect(),
        }
    }
}

pub fn basis(ctx: &Context, block: &Block, k: &Span, list: bool) -> Result<Payload> {
    let ks = k.naturals()?;
    let kmax = *ks.iter().max().expect("non-empty range");
    let points = block.points()?;
    let fam = block.family.family();
    let st = block.family == FamilyArg::St;
    let rows: Vec<Vec<(usize, usize, usize, usize, Vec<String>)>> = points
        .par_iter()
        .map(|&(d, g, m, n)| -> Result<_> {
            let mut out = Vec::new();
            if st {
                let built = build(ctx, block.family, d, g, m, n, kmax)?;
                let Built::St(s) = &built else { unreachable!() };
                for &k in &ks {
                    let ambient = s.ambient.bases[k].len();
                    let ideal = s.ideal[k].iter().filter(|&&x| x).count();
                    out.push((k, s.complex().dims[k], ambient, ideal, built.graphs(k)));
                }
            } else {
                for &k in &ks {
                    let b = ctx.cache.basis(fam, d, BiDegree::new(g, m, n, k))?;
                    out.push((k, b.len(), b.len(), 0, b.iter().map(|g| g.text()).collect()));
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let cols: &[&str] = if st { &["d", "g", "m", "n", "k", "size", "ambient", "ideal"] } else { &["d", "g", "m", "n", "k", "size"] };
    let mut sizes = Table::new("basis", cols);
    let mut graphs = Table::new("graphs", &["d", "g", "m", "n", "k", "index", "graph"]);
    for (&(d, g, m, n), per_k) in points.iter().zip(rows) {
        for (k, size, ambient, ideal, list_k) in per_k {
            let mut row = vec![json!(d), json!(g), json!(m), json!(n), json!(k), json!(size)];
            if st {
                row.extend([json!(ambient), json!(ideal)]);
            }
            sizes.push(row);
            if list {
                for (i, text) in list_k.into_iter().enumerate() {
                    graphs.push(vec![json!(d), json!(g), json!(m), json!(n), json!(k), json!(i), json!(text)]);
                }
            }
        }
    }
    let mut p = Payload::default();
    p.extra.insert("family".into(), json!(fam.name()));
    p.tables.push(sizes);
    if list {
        p.tables.push(graphs);
    }
    Ok(p)
}

fn read_expected(path: &Path) -> Result<BTreeMap<(i32, usize, usize, usize, i64), usize>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut out = BTreeMap::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('d') {
            continue;
        }
        let f: Vec<&str> = line.split(',').map(str::trim).collect();
        let bad = || anyhow!("{}:{}: expected d,g,m,n,degree,dim", path.display(), no + 1);
        if f.len() != 6 {
            return Err(bad());
        }
        let key = (f[0].parse().map_err(|_| bad())?, f[1].parse().map_err(|_| bad())?, f[2].parse().map_err(|_| bad())?, f[3].parse().map_err(|_| bad())?, f[4].parse().map_err(|_| bad())?);
        out.insert(key, f[5].parse().map_err(|_| bad())?);
    }
    Ok(out)
}

pub fn cohomology(ctx: &Context, block: &Block, kmax: usize, expected: Option<&Path>) -> Result<(Payload, bool)> {
    let expected = expected.map(read_expected).transpose()?;
    let points = block.points()?;
    let tables: Vec<GradedComplex> = points
        .par_iter()
        .map(|&(d, g, m, n)| Ok(build(ctx, block.family, d, g, m, n, kmax)?.graded().clone()))
        .collect::<Result<_>>()?;
    let mut cols = vec!["d", "g", "m", "n", "k", "degree", "basis", "dim", "exact"];
    if expected.is_some() {
        cols.push("expected");
    }
    let mut t = Table::new("cohomology", &cols);
    let mut all_match = true;
    for (&(d, g, m, n), cx) in points.iter().zip(&tables) {
        let dims = cohomology_dims_with(cx, ctx.coeff)?;
        for (k, e) in dims.entries.iter().enumerate() {
            let mut row = vec![json!(d), json!(g), json!(m), json!(n), json!(k), json!(e.degree), json!(cx.dims[k]), json!(e.dim), json!(e.exact)];
            if let Some(exp) = &expected {
                let want = exp.get(&(d, g, m, n, e.degree)).copied().unwrap_or(0);
                if e.exact && want != e.dim {
                    all_match = false;
                }
                row.push(json!(want));
            }
            t.push(row);
        }
    }
    let mut p = Payload::default();
    p.extra.insert("family".into(), json!(block.family.family().name()));
    p.extra.insert("kmax".into(), json!(kmax));
    p.extra.insert("coefficients".into(), json!(format!("{:?}", ctx.coeff)));
    if expected.is_some() {
        p.extra.insert("matches_expected".into(), json!(all_match));
    }
    p.tables.push(t);
    Ok((p, all_match))
}

pub fn load_algebra(spec: &str) -> Result<PDAlgebra> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = fs::read_to_string(path).with_context(|| format!("reading {spec}"))?;
        return Ok(PDAlgebra::parse(&text)?);
    }
    Ok(PDAlgebra::builtin(spec)?)
}

fn read_arg(s: &str) -> Result<String> {
    match s.strip_prefix('@') {
        Some(path) => fs::read_to_string(path).with_context(|| format!("reading {path}")),
        None => Ok(s.to_string()),
    }
}

pub fn named_graph(name: &str, d: i32) -> Result<FormalSum> {
    let quartette = |i: usize| symmetrize(&quartette_graphs(d)[i]);
    Ok(match name {
        "bracket" => FormalSum::from_graph(&bracket(d)),
        "cobracket" => FormalSum::from_graph(&coloop(d)),
        "quartette-13" => quartette(0),
        "quartette-31" => quartette(1),
        "quartette-22" => quartette(2),
        "quartette-11" => quartette(3),
        _ => {
            let text = read_arg(name)?;
            let mut s = FormalSum::new();
            for line in text.lines().filter(|l| !l.trim().is_empty()) {
                let g = parse_graph(line.trim()).map_err(|e| anyhow!("graph {line:?}: {e}"))?;
                if g.d() != d {
                    bail!("graph has d = {}, the algebra acts in d = {d}", g.d());
                }
                s.add_graph(&g, &rgc_core::rational::q(1));
            }
            if s.is_empty() {
                bail!("no graph given");
            }
            s
        }
    })
}

fn word_lines(w: &WordSum, space: &rgc_core::cyclic::GradedSpace) -> Vec<String> {
    w.to_lines(space).lines().map(String::from).collect()
}

pub fn string_ops(algebra: &str, graph: &str, classes: &[String], cutoff: usize) -> Result<Payload> {
    let a = load_algebra(algebra)?;
    let space = dual_space(&a)?;
    let graphs = named_graph(graph, space.d())?;
    let inputs = classes
        .iter()
        .map(|c| Ok(WordSum::parse_lines(&space, &read_arg(c)?.replace("\\n", "\n"))?))
        .collect::<Result<Vec<_>>>()?;
    let op = string_operation(&a, &graphs, &inputs, cutoff)?;
    let mut t = Table::new("classes", &["degree", "exact", "representative", "coefficient", "words"]);
    for c in &op.classes {
        for (i, x) in &c.coordinates {
            t.push(vec![json!(c.degree), json!(c.exact), json!(i), json!(fmt_q(x)), json!(word_lines(&c.representatives[*i], &op.space).join("; "))]);
        }
    }
    let mut p = Payload::default();
    p.extra.insert("algebra".into(), json!(algebra));
    p.extra.insert("d".into(), json!(space.d()));
    p.extra.insert("graph".into(), Value::from(graphs.iter().map(|(g, c)| format!("{} {}", fmt_q(c), g.text())).collect::<Vec<_>>()));
    p.extra.insert("output".into(), json!(word_lines(&op.output, &op.space)));
    p.extra.insert("output_degree".into(), json!(op.output.degree(&op.space)));
    p.tables.push(t);
    Ok(p)
}

pub fn export(ctx: &Context, block: &Block, kmax: usize, dir: &Path) -> Result<Payload> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let mut files = Table::new("files", &["d", "g", "m", "n", "k", "kind", "file", "rows", "cols"]);
    for (d, g, m, n) in block.points()? {
        let built = build(ctx, block.family, d, g, m, n, kmax)?;
        let cx = built.graded();
        let stem = format!("{}_d{d}_g{g}_m{m}_n{n}", block.family.family().name());
        for k in 0..=kmax {
            let name = format!("{stem}_k{k}.basis");
            let mut text = built.graphs(k).join("\n");
            if !text.is_empty() {
                text.push('\n');
            }
            fs::write(dir.join(&name), text).with_context(|| format!("writing {name}"))?;
            files.push(vec![json!(d), json!(g), json!(m), json!(n), json!(k), json!("basis"), json!(name), json!(cx.dims[k]), json!(1)]);
            if let Some(mat) = cx.diffs.get(k) {
                let name = format!("{stem}_k{k}.sms");
                fs::write(dir.join(&name), to_sms(mat)).with_context(|| format!("writing {name}"))?;
                files.push(vec![json!(d), json!(g), json!(m), json!(n), json!(k), json!("differential"), json!(name), json!(mat.rows()), json!(mat.cols())]);
            }
        }
    }
    let mut p = Payload::default();
    p.extra.insert("family".into(), json!(block.family.family().name()));
    p.tables.push(files);
    Ok(p)
}
