//! Exact computational kernel for geometric invariants of finitely generated
//! groups: integer/rational linear algebra, real characters with algebraic and
//! transcendental coefficients, character-sphere geometry, BNS-style invariant
//! rules with finite-ball evidence, Reidemeister numbers, and an auditable
//! certificate engine tying those pieces together.
//!
//! Everything is computed over exact arithmetic (arbitrary-precision integers
//! and rationals; number-field elements in a power basis; polynomial rings in
//! declared transcendental symbols). No floating point is used anywhere.

pub mod characters;
pub mod groups;
pub mod jsonnum;
pub mod sphere_geometry;
pub mod zlinalg;

pub use characters::{
    AlgebraicGenerator, Character, CharacterClass, CharacterError, CoefficientField, FieldElem,
    FixSubspace, Scalar, Sign,
};
pub use groups::{GroupDescriptor, GroupError, Word};
pub use sphere_geometry::{SigmaSet, SphereError, SphericalPolytope};
pub use zlinalg::{AbelianStructure, IntMatrix, QMatrix, Subspace};

/// Version stamp embedded in emitted certificates and reports.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
