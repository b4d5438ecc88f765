//! `rgc`: bases, cohomology, verification suites, string operations and
//! exports for ribbon graph complexes.

mod cache;
mod commands;
mod report;
mod suites;

use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rgc_core::linalg::field::is_prime;
use rgc_core::linalg::{Coefficients, PRIME_A, PRIME_B};
use rgc_core::properad::Family;

use cache::Cache;
use report::Report;

#[derive(Parser, Debug)]
#[command(name = "rgc", version, about = "Ribbon graph complexes workbench")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Report file (for `export`, the output directory).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Coefficients for ranks: `q`, `p:<prime>` or `p:<prime>,<prime>`.
    #[arg(long, global = true, default_value = "q")]
    coeff: Coeff,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Do not read or write the basis cache.
    #[arg(long, global = true)]
    no_cache: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Basis sizes per bidegree.
    Basis {
        #[command(flatten)]
        block: Block,
        /// Number of black vertices, `k` or `a..b`.
        #[arg(long, default_value = "0")]
        k: Span,
        /// Also list the graphs.
        #[arg(long)]
        list: bool,
    },
    /// Cohomology dimensions per `(g; m, n)` block.
    Cohomology {
        #[command(flatten)]
        block: Block,
        #[arg(long, default_value_t = 4)]
        kmax: usize,
        /// CSV lines `d,g,m,n,degree,dim` to compare against.
        #[arg(long)]
        expected: Option<PathBuf>,
    },
    /// Randomized and exhaustive property checks.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        #[arg(long, default_value = "0..3")]
        d: Span,
        /// Largest number of black vertices for exhaustive suites.
        #[arg(long, default_value_t = 4)]
        kmax: usize,
        /// Largest number of edges for exhaustive suites.
        #[arg(long, default_value_t = 4)]
        emax: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Largest dimension of random graded spaces.
        #[arg(long, default_value_t = 4)]
        dim: usize,
        /// Longest random word.
        #[arg(long, default_value_t = 5)]
        max_len: usize,
        /// Built-in name or algebra file for the algebra suites; all
        /// small built-ins when omitted.
        #[arg(long)]
        algebra: Option<String>,
        /// Word length cutoff for Hochschild complexes.
        #[arg(long, default_value_t = 6)]
        cutoff: usize,
    },
    /// Applies a graph to cyclic Hochschild classes of an algebra.
    StringOps {
        /// Built-in name such as `sphere(3)`, or an algebra file.
        #[arg(long)]
        algebra: String,
        /// `bracket`, `cobracket`, `quartette-13|31|22|11`, a graph in text
        /// form, or `@file` with one graph per line.
        #[arg(long)]
        graph: String,
        /// Input class as word lines `coeff ; letter,letter,...`, or `@file`.
        #[arg(long = "class")]
        classes: Vec<String>,
        #[arg(long, default_value_t = 6)]
        cutoff: usize,
    },
    /// Writes bases, differential matrices (SMS) and a report to a directory.
    Export {
        #[command(flatten)]
        block: Block,
        #[arg(long, default_value_t = 4)]
        kmax: usize,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Block {
    #[arg(long, value_enum, default_value_t = FamilyArg::Tw)]
    pub family: FamilyArg,
    /// `d` or a range `a..b` (inclusive).
    #[arg(long, default_value = "2")]
    pub d: Span,
    #[arg(long, default_value = "0")]
    pub g: Span,
    #[arg(long, default_value = "1")]
    pub m: Span,
    #[arg(long, default_value = "1")]
    pub n: Span,
}

impl Block {
    /// All `(d, g, m, n)` in the ranges.
    pub fn points(&self) -> Result<Vec<(i32, usize, usize, usize)>> {
        let mut out = Vec::new();
        for d in self.d.values() {
            for g in self.g.naturals()? {
                for m in self.m.naturals()? {
                    for n in self.n.naturals()? {
                        out.push((d as i32, g, m, n));
                    }
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Tw,
    Chgrav,
    St,
    Trees,
}

impl FamilyArg {
    pub fn family(self) -> Family {
        match self {
            FamilyArg::Tw => Family::TwRGra,
            FamilyArg::Chgrav => Family::ChGrav,
            FamilyArg::St => Family::STAmbient,
            FamilyArg::Trees => Family::TwRTree,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Sms,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Delta2,
    Properad,
    Morphism,
    ChainMap,
    Lob,
    Mc,
    Hochschild,
    TwistedAction,
    ChgravClosure,
    IdealClosure,
    StClasses,
    CobracketSt,
    StDirect,
}

/// An inclusive integer range written `a` or `a..b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span(pub RangeInclusive<i64>);

impl Span {
    pub fn values(&self) -> impl Iterator<Item = i64> {
        self.0.clone()
    }

    pub fn naturals(&self) -> Result<Vec<usize>> {
        self.values().map(|v| usize::try_from(v).map_err(|_| anyhow!("expected a non-negative value, got {v}"))).collect()
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|_| format!("not an integer: {t:?}"));
        let (a, b) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => (parse(s)?, parse(s)?),
        };
        if a > b {
            return Err(format!("empty range {s}"));
        }
        Ok(Span(a..=b))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Coeff(pub Coefficients);

impl FromStr for Coeff {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "q" {
            return Ok(Coeff(Coefficients::Rational));
        }
        let Some(rest) = s.strip_prefix("p:") else {
            return Err(format!("expected q or p:<prime>, got {s:?}"));
        };
        let ps: Vec<u64> = rest.split(',').map(|t| t.trim().parse::<u64>().map_err(|_| format!("not a number: {t:?}"))).collect::<Result<_, _>>()?;
        let (a, b) = match ps.as_slice() {
            [a] => (*a, if *a == PRIME_B { PRIME_A } else { PRIME_B }),
            [a, b] => (*a, *b),
            _ => return Err("at most two primes".into()),
        };
        if let Some(p) = [a, b].into_iter().find(|&p| !is_prime(p)) {
            return Err(format!("{p} is not prime"));
        }
        if a == b {
            return Err("prime mode requires two distinct primes".into());
        }
        Ok(Coeff(Coefficients::TwoPrimes(a, b)))
    }
}

pub struct Context {
    pub cache: Cache,
    pub coeff: Coefficients,
    pub seed: u64,
}

fn run(cli: Cli) -> Result<(Report, bool)> {
    let start = Instant::now();
    let ctx = Context { cache: Cache::from_env(!cli.no_cache), coeff: cli.coeff.0, seed: cli.seed };
    if cli.format == Format::Sms && !matches!(cli.command, Command::Export { .. }) {
        bail!("the sms format applies to `export`, which always writes matrices as SMS");
    }
    let (payload, ok) = match &cli.command {
        Command::Basis { block, k, list } => (commands::basis(&ctx, block, k, *list)?, true),
        Command::Cohomology { block, kmax, expected } => commands::cohomology(&ctx, block, *kmax, expected.as_deref())?,
        Command::Verify { suite, d, kmax, emax, trials, dim, max_len, algebra, cutoff } => {
            let cfg = suites::VerifyConfig {
                d: d.clone(),
                kmax: *kmax,
                emax: *emax,
                trials: *trials,
                dim: *dim,
                max_len: *max_len,
                algebra: algebra.clone(),
                cutoff: *cutoff,
                seed: ctx.seed,
            };
            suites::verify(&ctx, *suite, &cfg)?
        }
        Command::StringOps { algebra, graph, classes, cutoff } => (commands::string_ops(algebra, graph, classes, *cutoff)?, true),
        Command::Export { block, kmax } => {
            let dir = cli.out.clone().ok_or_else(|| anyhow!("export needs --out <directory>"))?;
            (commands::export(&ctx, block, *kmax, &dir)?, true)
        }
    };
    let report = Report {
        command: std::env::args().skip(1).collect(),
        payload,
        elapsed_ms: start.elapsed().as_millis(),
        cache_hits: ctx.cache.hits.load(std::sync::atomic::Ordering::Relaxed),
        cache_misses: ctx.cache.misses.load(std::sync::atomic::Ordering::Relaxed),
    };
    Ok((report, ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let out = match cli.command {
        Command::Export { .. } => cli.out.as_ref().map(|d| d.join("report.json")),
        _ => cli.out.clone(),
    };
    match run(cli) {
        Ok((report, ok)) => {
            let text = match format {
                Format::Csv => report.to_csv(),
                _ => report.to_json(),
            };
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, text) {
                        eprintln!("error: writing {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spans() {
        assert_eq!("0..3".parse::<Span>().unwrap().values().collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        assert_eq!("-1".parse::<Span>().unwrap().values().collect::<Vec<_>>(), vec![-1]);
        assert!("3..1".parse::<Span>().is_err());
        assert!("x".parse::<Span>().is_err());
    }

    #[test]
    fn coefficients() {
        assert_eq!("q".parse::<Coeff>().unwrap().0, Coefficients::Rational);
        assert_eq!("p:101,103".parse::<Coeff>().unwrap().0, Coefficients::TwoPrimes(101, 103));
        assert!("p:100".parse::<Coeff>().is_err());
        assert!("p:101,101".parse::<Coeff>().is_err());
        assert!(matches!("p:101".parse::<Coeff>().unwrap().0, Coefficients::TwoPrimes(101, PRIME_B)));
    }
}
