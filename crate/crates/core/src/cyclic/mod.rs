//! Cyclic words over a graded space with pairing, the representation of
//! ribbon graphs on them, Maurer–Cartan elements and cyclic Hochschild
//! complexes.

pub mod hochschild;
pub mod random;
pub mod represent;
pub mod space;
pub mod suites;
pub mod word;

use thiserror::Error;

use crate::linalg::LinalgError;

pub use hochschild::{
    ainfty_violation, cyclic_words, hochschild_complex, invariant_tensor, mc_check, mc_to_ainfty, twisted_differential,
    twisted_differential_tuples, HochschildComplex, MCElement, MultiLinear,
};
pub use represent::{act, cobracket, compose_apply, differential, extend_derivation, lie_bracket, represent, word_differential, Operation};
pub use space::{GradedSpace, Letter};
pub use suites::{chain_map_suite, lob_suite, morphism_suite, SuiteOutcome};
pub use word::{cyclic_normalize, CyclicWord, WordSum};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CyclicError {
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("pairing degree mismatch: {0}")]
    PairingDegreeMismatch(String),
    #[error("pairing is not (skew)symmetric on ({0}, {1})")]
    PairingSymmetry(String, String),
    #[error("differential: {0}")]
    DifferentialError(String),
    #[error("degree: {0}")]
    DegreeError(String),
    #[error("the pairing is degenerate")]
    DegeneratePairing,
    #[error("input {0} is not a cycle")]
    NotACycle(usize),
    #[error("an output word has {0} letters, beyond the cutoff")]
    CutoffTooSmall(usize),
    #[error("the differential leaves the reduced complex: {0}")]
    ReducedViolation(String),
    #[error("invalid space: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}
