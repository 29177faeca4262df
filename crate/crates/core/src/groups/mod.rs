//! Group descriptors, words, normal forms, Cayley balls and homomorphisms.
//!
//! The descriptor families are the ones the rest of the library can reason
//! about exactly: finite presentations, free and finitely generated abelian
//! groups, the soluble Baumslag–Solitar groups `BS(1,n)`, their multi-prime
//! generalizations (semidirect products `Z[1/n] ⋊ Z^r`), finite groups given
//! by multiplication tables, direct and free products, extensions of a kernel
//! by a finite quotient, characteristic quotients, and a couple of builtin
//! groups that enter only through known invariants.
//!
//! The word problem is solved per family (free reduction, exponent vectors,
//! HNN/Britton-style affine normal forms, table folding, componentwise
//! reduction); families without a supported strategy report
//! `UnsupportedFamily` rather than guessing.

mod ball;
mod descriptor;
mod finite;
mod hom;
mod normal_form;
mod sampler;
mod word;

pub use ball::{ball, BallGraph};
#[cfg(test)]
pub(crate) use descriptor::fixtures as descriptor_fixtures;
pub use descriptor::{
    parse_group, AssertionKind, Builtin, FamilyTag, FiniteExtensionData, GroupDescriptor,
    GroupKind, PropertyAssertion,
};
pub use finite::FiniteGroupData;
pub use hom::{validate_homomorphism, Automorphism, Homomorphism, ValidationLevel};
pub use normal_form::normal_form;
pub use sampler::random_automorphism;
pub use word::{parse_word, render_word, Letter, Word};

use crate::zlinalg::ZlinalgError;

/// Errors from descriptor parsing, word manipulation, normal forms, ball
/// enumeration and homomorphism validation.
#[derive(Debug, thiserror::Error)]
pub enum GroupError {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator index {index} out of range for {count} generators")]
    GeneratorIndex { index: usize, count: usize },
    #[error("invalid family parameter: {0}")]
    InvalidParameter(String),
    #[error("inconsistent extension data: {0}")]
    InconsistentExtension(String),
    #[error("multiplication table is not a Latin square: {0}")]
    NotALatinSquare(String),
    #[error("multiplication table is not associative: {0}")]
    NotAssociative(String),
    #[error("multiplication table has no two-sided identity")]
    NoIdentity,
    #[error("unsupported family for this operation: {0}")]
    UnsupportedFamily(String),
    #[error("ball vertex budget of {budget} exceeded")]
    BallTooLarge { budget: usize },
    #[error("relator `{relator}` is not killed: {detail}")]
    NotAHomomorphism { relator: String, detail: String },
    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("exponent too large to expand: {0}")]
    PowerTooLarge(String),
    #[error("linear algebra failure: {0}")]
    Zlinalg(#[from] ZlinalgError),
}
