//! Fixtures shared by the kernel benchmarks.

use rgc_core::properad::basis::permute_darts;
use rgc_core::properad::{enumerate_basis, Family, GraphComplex};
use rgc_core::{BiDegree, RibbonGraph};

/// Basis graphs of `(g; m, n)` with `k` black vertices, darts renamed by a
/// fixed rotation so canonicalization has work to do.
pub fn scrambled(d: i32, bd: BiDegree) -> Vec<RibbonGraph> {
    enumerate_basis(Family::TwRGra, d, bd)
        .into_iter()
        .map(|g| {
            let n = g.dart_count();
            let p: Vec<usize> = (0..n).map(|x| (x * 5 + 3) % n).collect();
            if n % 5 == 0 {
                g
            } else {
                permute_darts(&g, &p)
            }
        })
        .collect()
}

/// The twisted complex of `(g; m, n)` up to `kmax` black vertices.
pub fn complex(d: i32, g: usize, m: usize, n: usize, kmax: usize) -> GraphComplex {
    GraphComplex::build(Family::TwRGra, d, g, m, n, kmax).expect("closed block")
}
