//! Exact model of real characters of finitely generated groups.
//!
//! A character is a homomorphism `G → (ℝ, +)`. This module provides the
//! coefficient fields the values live in (`ℚ(θ)` extended by positive
//! transcendental symbols), exact scalar arithmetic on those values, the
//! characters themselves with relator validation, canonical representatives
//! of points on the character sphere, the image subgroup `Im(χ) ⊂ ℝ` as a
//! finitely generated ℤ-module, and the rigidity / transcendence decisions
//! for character classes. No floating point is used anywhere: zero tests are
//! exact and signs are decided by bisecting isolating intervals.

mod character;
mod field;
mod rigidity;
mod scalar;

pub use character::{
    abelianization, canonical_class_rep, character_from_coords, character_from_values,
    fix_subspace, fix_subspace_of, pullback, Character, CharacterClass, CharacterData,
    FixSubspace,
};
pub(crate) use character::{coefficient_slices, primitive_integer_vector};
pub use field::{AlgebraicGenerator, CoefficientField, FieldElem, Sign};
pub use rigidity::{
    image_subgroup, is_rigid, is_transcendental, multiplier_ring_rank, ImageSubgroup,
    RigidityDecision, TranscendenceDecision,
};
pub use scalar::Scalar;

use crate::groups::GroupError;
use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

/// Errors from character construction and the decision procedures.
#[derive(Debug, Error)]
pub enum CharacterError {
    #[error("minimal polynomial must have degree 2 or 3, got degree {0}")]
    MinPolyDegree(usize),
    #[error("minimal polynomial is reducible: {0} is a rational root")]
    MinPolyReducible(BigRational),
    #[error("cannot verify irreducibility: integer root bound {0} exceeds the search cap")]
    IrreducibilityBound(BigInt),
    #[error("invalid isolating interval: {0}")]
    IsolatingInterval(String),
    #[error("invalid transcendental symbol name {0:?}: names must be nonempty and distinct")]
    BadSymbol(String),
    #[error("operands belong to different coefficient fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("exact division failed: divisor does not divide the dividend")]
    InexactDivision,
    #[error("the character is trivial")]
    TrivialCharacter,
    #[error("not a character: relator {relator} evaluates to {value}, not 0")]
    NotACharacter { relator: String, value: String },
    #[error("expected {expected} values (one per generator), got {got}")]
    ValueCount { expected: usize, got: usize },
    #[error("the coefficient field has no algebraic generator")]
    NoAlgebraicPart,
    #[error("the character is defined on a different group than required")]
    GroupMismatch,
    #[error("sign of a scalar could not be determined: {0}")]
    IndeterminateSign(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{0}")]
    Unsupported(String),
}
