//! Content-addressed cache of graph bases.
//!
//! One file per `(family, d, g, m, n, k)` and code version, named by the
//! SHA-256 of the key and holding one graph per line. Writers go through a
//! temporary file and an atomic rename, so concurrent readers never see a
//! partial file. The first hit of every run is recomputed and compared.

use std::fs;
use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use anyhow::{bail, Context, Result};
use rgc_core::properad::{enumerate_basis, Family};
use rgc_core::{parse_graph, BiDegree, RibbonGraph};
use sha2::{Digest, Sha256};

const CODE_VERSION: &str = concat!("rgc-basis/1/", env!("CARGO_PKG_VERSION"));

pub struct Cache {
    dir: Option<PathBuf>,
    spot_checked: AtomicBool,
    pub hits: AtomicUsize,
    pub misses: AtomicUsize,
}

impl Cache {
    /// The cache under `RGC_CACHE_DIR` (default `.rgc-cache`), or none.
    pub fn from_env(enabled: bool) -> Self {
        let dir = enabled.then(|| std::env::var_os("RGC_CACHE_DIR").map(PathBuf::from).unwrap_or_else(|| ".rgc-cache".into()));
        Cache { dir, spot_checked: AtomicBool::new(false), hits: AtomicUsize::new(0), misses: AtomicUsize::new(0) }
    }

    fn path(&self, family: Family, d: i32, bd: BiDegree) -> Option<PathBuf> {
        let key = format!("{CODE_VERSION}|{family}|{d}|{}|{}|{}|{}", bd.g, bd.m, bd.n, bd.k);
        let hex: String = Sha256::digest(key.as_bytes()).iter().map(|b| format!("{b:02x}")).collect();
        self.dir.as_ref().map(|dir| dir.join(format!("{hex}.basis")))
    }

    pub fn basis(&self, family: Family, d: i32, bd: BiDegree) -> Result<Vec<RibbonGraph>> {
        let Some(path) = self.path(family, d, bd) else {
            return Ok(enumerate_basis(family, d, bd));
        };
        if let Ok(text) = fs::read_to_string(&path) {
            let cached = text
                .lines()
                .filter(|l| !l.is_empty())
                .map(parse_graph)
                .collect::<Result<Vec<_>, _>>()
                .with_context(|| format!("corrupt cache file {}", path.display()))?;
            self.hits.fetch_add(1, Ordering::Relaxed);
            if !self.spot_checked.swap(true, Ordering::Relaxed) && cached != enumerate_basis(family, d, bd) {
                bail!("cache entry {} differs from a fresh enumeration", path.display());
            }
            return Ok(cached);
        }
        self.misses.fetch_add(1, Ordering::Relaxed);
        let basis = enumerate_basis(family, d, bd);
        let dir = path.parent().expect("file in a directory");
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        let mut text = String::new();
        for g in &basis {
            text.push_str(&g.text());
            text.push('\n');
        }
        let tmp = dir.join(format!(".{}.{}", std::process::id(), path.file_name().unwrap().to_string_lossy()));
        fs::write(&tmp, text).with_context(|| format!("writing {}", tmp.display()))?;
        fs::rename(&tmp, &path).with_context(|| format!("writing {}", path.display()))?;
        Ok(basis)
    }
}
