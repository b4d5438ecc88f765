//! Distinguished graphs: generators of the twisted properad, the images of the
//! Lie bialgebra generators, and the one-black-vertex quartette.

use crate::ribbon::Color::{Black, White};
use crate::ribbon::{Color, RibbonGraph};

pub fn unit(d: i32) -> RibbonGraph {
    RibbonGraph::zero_dart(d, White(1))
}

pub fn lone_black(d: i32) -> RibbonGraph {
    RibbonGraph::zero_dart(d, Black)
}

/// Two white vertices joined by an edge from vertex 1 to vertex 2.
pub fn bracket(d: i32) -> RibbonGraph {
    RibbonGraph::build(&[1, 0], &[0, 1], &[White(1), White(2)], &[1], d).unwrap()
}

/// One white vertex carrying a loop; dart 0 bounds boundary 1, dart 1 boundary 2.
pub fn coloop(d: i32) -> RibbonGraph {
    RibbonGraph::build(&[1, 0], &[1, 0], &[White(1)], &[1, 2], d).unwrap()
}

/// Univalent black vertex joined to white vertex 1, edge directed black to white.
pub fn lollipop(d: i32) -> RibbonGraph {
    RibbonGraph::build(&[1, 0], &[0, 1], &[Black, White(1)], &[1], d).unwrap()
}

/// Two univalent black vertices joined by an edge.
pub fn black_edge(d: i32) -> RibbonGraph {
    RibbonGraph::build(&[1, 0], &[0, 1], &[Black, Black], &[1], d).unwrap()
}

/// Images of the bracket and cobracket under the morphism from Lie bialgebras.
pub fn lob_generator_images(d: i32) -> (RibbonGraph, RibbonGraph) {
    (bracket(d), coloop(d))
}

/// A black trivalent vertex (darts 0, 2, 4) with edges to the given vertices;
/// boundaries are labelled in order of their minimal darts.
fn tripod(d: i32, sigma: &[usize], colors: &[Color]) -> RibbonGraph {
    let alpha = [1, 0, 3, 2, 5, 4];
    let mut seen = [false; 6];
    let mut faces = 0u8;
    for x in 0..6 {
        if !seen[x] {
            faces += 1;
            let mut y = x;
            while !seen[y] {
                seen[y] = true;
                y = sigma[alpha[y]];
            }
        }
    }
    let labels: Vec<u8> = (1..=faces).collect();
    RibbonGraph::build(&alpha, sigma, colors, &labels, d).unwrap()
}

/// The four graphs with one trivalent black vertex, of types (m,n) =
/// (1,3), (3,1), (2,2) and (1,1), before symmetrization.
pub fn quartette_graphs(d: i32) -> [RibbonGraph; 4] {
    // black vertex: darts 0, 2, 4 in this cyclic order
    let star = tripod(d, &[2, 1, 4, 3, 0, 5], &[Black, White(1), White(2), White(3)]);
    let planar_theta = tripod(d, &[2, 5, 4, 1, 0, 3], &[Black, White(1)]);
    let double = tripod(d, &[2, 3, 4, 1, 0, 5], &[Black, White(1), White(2)]);
    let torus_theta = tripod(d, &[2, 3, 4, 5, 0, 1], &[Black, White(1)]);
    [star, planar_theta, double, torus_theta]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes() {
        let (b, c) = lob_generator_images(2);
        assert_eq!((b.white_count(), b.edge_count(), b.boundary_count()), (2, 1, 1));
        assert_eq!((c.white_count(), c.edge_count(), c.boundary_count()), (1, 1, 2));
        let q = quartette_graphs(1);
        let types: Vec<(usize, usize, usize)> =
            q.iter().map(|g| (g.boundary_count(), g.white_count(), g.genus())).collect();
        assert_eq!(types, vec![(1, 3, 0), (3, 1, 0), (2, 2, 0), (1, 1, 1)]);
        for g in &q {
            assert_eq!(g.black_count(), 1);
            assert_eq!(g.valence(0), 3);
        }
    }
}
