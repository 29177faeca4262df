//! Exact spherical geometry on the character sphere.
//!
//! The sphere `S^{n−1}` is modeled projectively: a point is a nonzero vector
//! in `ℚ^n` up to positive scaling, stored as its primitive integer
//! representative. Spherical polytopes are vertex sets lying in a common open
//! half-space with no vertex redundant in the cone of the others; sets of
//! sphere points are unions of polytopes and subspheres. All decisions run
//! over exact rational arithmetic, and every half-space claim is backed by a
//! functional or an infeasibility certificate verified before being returned.

mod lp;
mod polytope;
mod sigma_set;

pub use lp::{cone_membership, strict_positive_functional, ConeMembership, StrictLp};
pub use polytope::{
    open_hemisphere_witness, scalar_hemisphere_witness, Hemisphere, HemisphereWitness,
    ScalarHemisphereOutcome, SphericalPolytope,
};
pub use sigma_set::{
    apply_linear_map, isolated_classes, isolated_points, restrict_to_subspace,
    spherical_join_complement, SigmaSet,
};

use crate::zlinalg::ZlinalgError;
use thiserror::Error;

/// Errors from spherical-geometry constructions and queries.
#[derive(Debug, Error)]
pub enum SphereError {
    #[error("expected vectors of dimension {expected}, got {got}")]
    AmbientMismatch { expected: usize, got: usize },
    #[error("point {index} is the zero vector")]
    ZeroVector { index: usize },
    #[error("the point set is empty")]
    EmptyPointSet,
    #[error(
        "vertices do not lie in a common open half-space: a nonnegative \
         combination of them vanishes"
    )]
    NoHalfSpace { combination: Vec<String> },
    #[error("vertex {index} is a nonnegative combination of the other vertices")]
    NotMinimal { index: usize },
    #[error("duplicate vertex at index {index}")]
    DuplicateVertex { index: usize },
    #[error("components {first} and {second} are not disjoint on the sphere")]
    Overlapping { first: usize, second: usize },
    #[error("the linear map is singular")]
    SingularMap,
    #[error("the set is not exact (Unknown); the operation requires an exact set")]
    UnknownSet,
    #[error("{0}")]
    Unsupported(String),
    #[error("internal solver fault: {0}")]
    Internal(String),
    #[error(transparent)]
    Zlinalg(#[from] ZlinalgError),
}
