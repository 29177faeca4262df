//! Exact integer and rational linear algebra.
//!
//! Provides arbitrary-precision integer matrices with Smith and Hermite normal
//! forms (including unimodular transition matrices and their inverses),
//! finitely generated abelian group structure extracted from cokernels, and
//! rational matrices with reduced row echelon form, kernels and canonical
//! subspace arithmetic. These are the primitives everything else in the crate
//! reduces to, so all of them carry enough data to be re-verified exactly.

mod abelian;
mod int_matrix;
mod rational;
mod smith;

pub use abelian::{cokernel_structure, AbelianStructure};
pub use int_matrix::IntMatrix;
pub use rational::{QMatrix, Subspace};
pub use smith::{hermite_normal_form, smith_normal_form, SmithNormalForm};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ZlinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("invariant factors do not form a divisibility chain: {0} does not divide {1}")]
    NotAChain(String, String),
}
