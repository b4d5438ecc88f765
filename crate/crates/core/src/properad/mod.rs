//! Properadic composition, the twisted differential, bases and the string
//! topology quotient.

pub mod basis;
pub mod complex;
pub mod compose;
pub mod differential;
pub mod generators;
pub mod relations;

pub use basis::{enumerate_basis, enumerate_orbit_representatives, Family, IndexedBasis};
pub use complex::{differential_matrix, is_ideal_graph, st_direct_differential, EngineError, GraphComplex, StComplex};
pub use compose::{compose, self_substitute};
pub use differential::{differential_squared, integral_differential, twist_differential, twist_differential_reference, twist_differential_sum, DifferentialCache};
pub use generators::{black_edge, bracket, coloop, lob_generator_images, lollipop, lone_black, quartette_graphs, unit};
pub use relations::{co_jacobiator, drinfeld, holob_quartette, involutivity, jacobiator, symmetrize, symmetrize_with};
