//! Ribbon graph complexes: the twisted ribbon graph properad, chain gravity and
//! string topology quotients, exact cohomology, and representations on cyclic
//! words over Poincaré duality algebras.

pub mod rational;
pub mod ribbon;

pub use rational::Q;
pub use ribbon::{build_graph, isomorphic_with_sign, parse_graph, BiDegree, Color, GraphError, RibbonGraph};
pub mod cyclic;
pub mod frobenius;
pub mod linalg;
pub mod properad;
pub mod sum;

pub use sum::FormalSum;
