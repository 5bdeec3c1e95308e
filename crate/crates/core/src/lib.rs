//! Recursive parameterisation of unitary matrices: construction from factor
//! chains, canonical decomposition, factor reordering, rephasing-invariant
//! phase analysis and symmetric unitaries.

pub mod decomposition;
pub mod error;
pub mod factor;
pub mod invariants;
pub mod json;
pub mod matrix;
pub mod sample;
pub mod symmetric;

pub use decomposition::{
    compose, decompose, gauge_fix, reorder_chain, reorder_swap, reorder_to, Decomposition, FactorOrder,
};
pub use error::{Error, Result};
pub use factor::{block, exp_generator, generator, CharVector, Factor, Generator};
pub use matrix::{haar_random, haar_random_with, phase_matrix, Complex, ComplexMatrix, PhaseVector};
pub use symmetric::{compose_symmetric, SymmetricParams};
