//! Subsets of the character sphere: the values taken by invariant
//! complements, closed under spherical joins, subsphere restriction, and
//! invertible linear maps.

use super::lp::{cone_meets_subspace, cones_intersect};
use super::polytope::SphericalPolytope;
use super::SphereError;
use crate::characters::{
    canonical_class_rep, character_from_coords, primitive_integer_vector, CharacterClass,
    CharacterError, CoefficientField, Scalar,
};
use crate::groups::GroupDescriptor;
use crate::zlinalg::{QMatrix, Subspace};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

/// A subset of the sphere `S^{n−1}` of positive rays in `ℚ^n`.
///
/// Values are kept canonical: constructors collapse degenerate cases (a
/// subsphere of dimension 0 is `Empty`, a full subsphere is `WholeSphere`, a
/// union with a single kind of component is the plain variant), so equal sets
/// built along different routes compare equal.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSigmaSet", into = "RawSigmaSet")]
pub enum SigmaSet {
    /// The empty subset of `S^{n−1}`.
    Empty { ambient: usize },
    /// All of `S^{n−1}` (with `n ≥ 1`).
    WholeSphere { ambient: usize },
    /// The subsphere `∂W` of a proper nonzero rational subspace `W`.
    Subsphere { space: Subspace },
    /// A disjoint union of spherical polytopes.
    FinitePolytopeUnion {
        ambient: usize,
        components: Vec<SphericalPolytope>,
    },
    /// A disjoint union of at least one subsphere and at least one polytope.
    Union {
        ambient: usize,
        subspheres: Vec<Subspace>,
        polytopes: Vec<SphericalPolytope>,
    },
    /// No exact value is known.
    Unknown { reason: String },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
enum RawSigmaSet {
    Empty {
        ambient: usize,
    },
    WholeSphere {
        ambient: usize,
    },
    Subsphere {
        ambient: usize,
        #[serde(with = "crate::jsonnum::ratrows")]
        basis: Vec<Vec<BigRational>>,
    },
    PolytopeUnion {
        ambient: usize,
        components: Vec<SphericalPolytope>,
    },
    Union {
        ambient: usize,
        subspheres: Vec<RawBasis>,
        polytopes: Vec<SphericalPolytope>,
    },
    Unknown {
        reason: String,
    },
}

/// Wire form of one subsphere: the rows spanning its subspace.
#[derive(Serialize, Deserialize)]
struct RawBasis {
    #[serde(with = "crate::jsonnum::ratrows")]
    basis: Vec<Vec<BigRational>>,
}

impl TryFrom<RawSigmaSet> for SigmaSet {
    type Error = String;
    fn try_from(raw: RawSigmaSet) -> Result<Self, String> {
        let build = |r: RawSigmaSet| -> Result<SigmaSet, SphereError> {
            match r {
                RawSigmaSet::Empty { ambient } => Ok(SigmaSet::empty(ambient)),
                RawSigmaSet::WholeSphere { ambient } => Ok(SigmaSet::whole_sphere(ambient)),
                RawSigmaSet::Subsphere { ambient, basis } => {
                    Ok(SigmaSet::subsphere(Subspace::span(ambient, &basis)?))
                }
                RawSigmaSet::PolytopeUnion {
                    ambient,
                    components,
                } => SigmaSet::polytope_union(ambient, components),
                RawSigmaSet::Union {
                    ambient,
                    subspheres,
                    polytopes,
                } => {
                    let spaces = subspheres
                        .iter()
                        .map(|b| Subspace::span(ambient, &b.basis))
                        .collect::<Result<Vec<_>, _>>()?;
                    SigmaSet::union(ambient, spaces, polytopes)
                }
                RawSigmaSet::Unknown { reason } => Ok(SigmaSet::unknown(reason)),
            }
        };
        build(raw).map_err(|e| e.to_string())
    }
}

impl From<SigmaSet> for RawSigmaSet {
    fn from(s: SigmaSet) -> Self {
        match s {
            SigmaSet::Empty { ambient } => RawSigmaSet::Empty { ambient },
            SigmaSet::WholeSphere { ambient } => RawSigmaSet::WholeSphere { ambient },
            SigmaSet::Subsphere { space } => RawSigmaSet::Subsphere {
                ambient: space.ambient(),
                basis: space.basis().to_vec(),
            },
            SigmaSet::FinitePolytopeUnion {
                ambient,
                components,
            } => RawSigmaSet::PolytopeUnion {
                ambient,
                components,
            },
            SigmaSet::Union {
                ambient,
                subspheres,
                polytopes,
            } => RawSigmaSet::Union {
                ambient,
                subspheres: subspheres
                    .iter()
                    .map(|w| RawBasis {
                        basis: w.basis().to_vec(),
                    })
                    .collect(),
                polytopes,
            },
            SigmaSet::Unknown { reason } => RawSigmaSet::Unknown { reason },
        }
    }
}

impl SigmaSet {
    pub fn empty(ambient: usize) -> SigmaSet {
        SigmaSet::Empty { ambient }
    }

    /// All of `S^{ambient−1}`; the sphere of a 0-dimensional space is empty.
    pub fn whole_sphere(ambient: usize) -> SigmaSet {
        if ambient == 0 {
            SigmaSet::Empty { ambient }
        } else {
            SigmaSet::WholeSphere { ambient }
        }
    }

    /// The boundary sphere of a subspace, collapsed to `Empty`/`WholeSphere`
    /// in the degenerate cases.
    pub fn subsphere(space: Subspace) -> SigmaSet {
        if space.dim() == 0 {
            SigmaSet::Empty {
                ambient: space.ambient(),
            }
        } else if space.dim() == space.ambient() {
            SigmaSet::WholeSphere {
                ambient: space.ambient(),
            }
        } else {
            SigmaSet::Subsphere { space }
        }
    }

    /// A single isolated rational point class.
    pub fn single_point(ambient: usize, vertex: Vec<BigRational>) -> Result<SigmaSet, SphereError> {
        let p = SphericalPolytope::point(ambient, vertex)?;
        SigmaSet::polytope_union(ambient, vec![p])
    }

    /// A disjoint union of polytopes; pairwise disjointness is verified.
    pub fn polytope_union(
        ambient: usize,
        components: Vec<SphericalPolytope>,
    ) -> Result<SigmaSet, SphereError> {
        SigmaSet::union(ambient, Vec::new(), components)
    }

    /// General union of subspheres and polytopes, verified pairwise disjoint
    /// and collapsed to the simplest variant.
    pub fn union(
        ambient: usize,
        subspheres: Vec<Subspace>,
        polytopes: Vec<SphericalPolytope>,
    ) -> Result<SigmaSet, SphereError> {
        let mut spaces = Vec::new();
        for w in subspheres {
            if w.ambient() != ambient {
                return Err(SphereError::AmbientMismatch {
                    expected: ambient,
                    got: w.ambient(),
                });
            }
            if w.dim() == 0 {
                continue;
            }
            if w.dim() == ambient {
                if spaces.is_empty() && polytopes.is_empty() {
                    return Ok(SigmaSet::whole_sphere(ambient));
                }
                return Err(SphereError::Overlapping {
                    first: 0,
                    second: 1,
                });
            }
            spaces.push(w);
        }
        for p in &polytopes {
            if p.ambient() != ambient {
                return Err(SphereError::AmbientMismatch {
                    expected: ambient,
                    got: p.ambient(),
                });
            }
        }
        // Canonical component order, so equal sets compare equal regardless
        // of construction route (bases are already in reduced echelon form,
        // vertices already primitive and sorted).
        let mut polytopes = polytopes;
        spaces.sort_by(|a, b| a.basis().cmp(b.basis()));
        polytopes.sort_by(|a, b| a.vertices().cmp(b.vertices()));
        // Pairwise disjointness.
        for i in 0..spaces.len() {
            for j in i + 1..spaces.len() {
                if spaces[i].intersect(&spaces[j])?.dim() > 0 {
                    return Err(SphereError::Overlapping {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        for i in 0..polytopes.len() {
            for j in i + 1..polytopes.len() {
                if cones_intersect(
                    &polytopes[i].vertices_rational(),
                    &polytopes[j].vertices_rational(),
                    ambient,
                ) {
                    return Err(SphereError::Overlapping {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        for (i, p) in polytopes.iter().enumerate() {
            for (j, w) in spaces.iter().enumerate() {
                if cone_meets_subspace(&p.vertices_rational(), w.basis(), ambient) {
                    return Err(SphereError::Overlapping {
                        first: i,
                        second: j,
                    });
                }
            }
        }
        Ok(match (spaces.is_empty(), polytopes.is_empty()) {
            (true, true) => SigmaSet::Empty { ambient },
            (false, true) => {
                if spaces.len() == 1 {
                    SigmaSet::subsphere(spaces.into_iter().next().expect("one subsphere"))
                } else {
                    SigmaSet::Union {
                        ambient,
                        subspheres: spaces,
                        polytopes,
                    }
                }
            }
            (true, false) => SigmaSet::FinitePolytopeUnion {
                ambient,
                components: polytopes,
            },
            (false, false) => SigmaSet::Union {
                ambient,
                subspheres: spaces,
                polytopes,
            },
        })
    }

    pub fn unknown(reason: impl Into<String>) -> SigmaSet {
        SigmaSet::Unknown {
            reason: reason.into(),
        }
    }

    /// The ambient coordinate dimension (`None` for `Unknown`).
    pub fn ambient(&self) -> Option<usize> {
        match self {
            SigmaSet::Empty { ambient } | SigmaSet::WholeSphere { ambient } => Some(*ambient),
            SigmaSet::Subsphere { space } => Some(space.ambient()),
            SigmaSet::FinitePolytopeUnion { ambient, .. } | SigmaSet::Union { ambient, .. } => {
                Some(*ambient)
            }
            SigmaSet::Unknown { .. } => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, SigmaSet::Unknown { .. })
    }

    /// Is this the empty subset of its sphere?
    pub fn is_empty_set(&self) -> bool {
        matches!(self, SigmaSet::Empty { .. })
    }

    /// All polytope components (empty for sphere-only variants).
    pub fn polytopes(&self) -> &[SphericalPolytope] {
        match self {
            SigmaSet::FinitePolytopeUnion { components, .. } => components,
            SigmaSet::Union { polytopes, .. } => polytopes,
            _ => &[],
        }
    }

    /// Does the set contain the class of the given vector?
    pub fn contains_ray(&self, v: &[BigRational]) -> Result<bool, SphereError> {
        let Some(ambient) = self.ambient() else {
            return Err(SphereError::UnknownSet);
        };
        if v.len() != ambient {
            return Err(SphereError::AmbientMismatch {
                expected: ambient,
                got: v.len(),
            });
        }
        if v.iter().all(Zero::is_zero) {
            return Err(SphereError::ZeroVector { index: 0 });
        }
        Ok(match self {
            SigmaSet::Empty { .. } => false,
            SigmaSet::WholeSphere { .. } => true,
            SigmaSet::Subsphere { space } => space.contains(v)?,
            SigmaSet::FinitePolytopeUnion { components, .. } => {
                let mut found = false;
                for p in components {
                    if p.contains_ray(v)? {
                        found = true;
                        break;
                    }
                }
                found
            }
            SigmaSet::Union {
                subspheres,
                polytopes,
                ..
            } => {
                let mut found = false;
                for w in subspheres {
                    if w.contains(v)? {
                        found = true;
                        break;
                    }
                }
                for p in polytopes {
                    if found {
                        break;
                    }
                    if p.contains_ray(v)? {
                        found = true;
                    }
                }
                found
            }
            SigmaSet::Unknown { .. } => unreachable!("handled above"),
        })
    }
}

/// Pad a vector with zeros on the left or right to reach `total` coordinates.
fn embed(v: &[BigRational], before: usize, total: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); total];
    out[before..before + v.len()].clone_from_slice(v);
    out
}

/// The complement of a product's invariant sphere from its factors'.
///
/// Geometrically: the sphere of `G × H` is the spherical join of the factor
/// spheres, with `S(G)` embedded as the subsphere where the `H`-coordinates
/// vanish and vice versa. The complement of the product invariant is the
/// union of the embedded factor complements: a class survives in the
/// complement exactly when it is a pure factor class whose restriction lies
/// in that factor's complement. `Unknown` inputs propagate to an `Unknown`
/// output.
pub fn spherical_join_complement(
    a: &SigmaSet,
    b: &SigmaSet,
) -> Result<SigmaSet, SphereError> {
    let (Some(da), Some(db)) = (a.ambient(), b.ambient()) else {
        return Ok(SigmaSet::unknown(
            "a factor's invariant complement is unknown, so the product's is too",
        ));
    };
    let total = da + db;
    let mut subspheres = Vec::new();
    let mut polytopes = Vec::new();
    let mut push_embedded =
        |s: &SigmaSet, before: usize, dim: usize| -> Result<(), SphereError> {
            match s {
                SigmaSet::Empty { .. } => {}
                SigmaSet::WholeSphere { .. } => {
                    let basis: Vec<Vec<BigRational>> = (0..dim)
                        .map(|j| {
                            let mut e = vec![BigRational::zero(); total];
                            e[before + j] = BigRational::from_integer(BigInt::from(1));
                            e
                        })
                        .collect();
                    subspheres.push(Subspace::span(total, &basis)?);
                }
                SigmaSet::Subsphere { space } => {
                    let basis: Vec<Vec<BigRational>> = space
                        .basis()
                        .iter()
                        .map(|w| embed(w, before, total))
                        .collect();
                    subspheres.push(Subspace::span(total, &basis)?);
                }
                SigmaSet::FinitePolytopeUnion { components, .. } => {
                    for p in components {
                        let verts: Vec<Vec<BigRational>> = p
                            .vertices_rational()
                            .iter()
                            .map(|v| embed(v, before, total))
                            .collect();
                        polytopes.push(SphericalPolytope::new(total, verts)?);
                    }
                }
                SigmaSet::Union {
                    subspheres: ws,
                    polytopes: ps,
                    ..
                } => {
                    for w in ws {
                        let basis: Vec<Vec<BigRational>> = w
                            .basis()
                            .iter()
                            .map(|x| embed(x, before, total))
                            .collect();
                        subspheres.push(Subspace::span(total, &basis)?);
                    }
                    for p in ps {
                        let verts: Vec<Vec<BigRational>> = p
                            .vertices_rational()
                            .iter()
                            .map(|v| embed(v, before, total))
                            .collect();
                        polytopes.push(SphericalPolytope::new(total, verts)?);
                    }
                }
                SigmaSet::Unknown { .. } => unreachable!("ambient() filtered Unknown"),
            }
            Ok(())
        };
    push_embedded(a, 0, da)?;
    push_embedded(b, da, db)?;
    SigmaSet::union(total, subspheres, polytopes)
}

/// The isolated points of an exact set, as canonical primitive vectors.
///
/// Single-vertex polytopes are isolated; so are the two antipodal classes of
/// a dimension-1 subsphere (`S⁰`) and of the whole sphere in ambient
/// dimension 1. Spheres and polytopes of dimension ≥ 1 contribute nothing.
pub fn isolated_points(s: &SigmaSet) -> Result<Vec<Vec<BigInt>>, SphereError> {
    let mut out: Vec<Vec<BigInt>> = Vec::new();
    let mut push_antipodes = |basis_vec: &[BigRational]| {
        let v = primitive_integer_vector(basis_vec);
        let neg: Vec<BigInt> = v.iter().map(|x| -x).collect();
        out.push(v);
        out.push(neg);
    };
    match s {
        SigmaSet::Empty { .. } => {}
        SigmaSet::WholeSphere { ambient } => {
            if *ambient == 1 {
                push_antipodes(&[BigRational::from_integer(BigInt::from(1))]);
            }
        }
        SigmaSet::Subsphere { space } => {
            if space.dim() == 1 {
                push_antipodes(&space.basis()[0]);
            }
        }
        SigmaSet::FinitePolytopeUnion { components, .. } => {
            for p in components {
                if p.is_point() {
                    out.push(p.vertices()[0].clone());
                }
            }
        }
        SigmaSet::Union {
            subspheres,
            polytopes,
            ..
        } => {
            for w in subspheres {
                if w.dim() == 1 {
                    push_antipodes(&w.basis()[0]);
                }
            }
            for p in polytopes {
                if p.is_point() {
                    out.push(p.vertices()[0].clone());
                }
            }
        }
        SigmaSet::Unknown { .. } => return Err(SphereError::UnknownSet),
    }
    out.sort();
    Ok(out)
}

/// The isolated points of an exact set as canonical character classes of the
/// given group (whose character sphere the set lives on).
pub fn isolated_classes(
    s: &SigmaSet,
    group: &GroupDescriptor,
) -> Result<Vec<CharacterClass>, CharacterError> {
    let points = isolated_points(s)
        .map_err(|e| CharacterError::Unsupported(e.to_string()))?;
    let field = CoefficientField::rational();
    points
        .iter()
        .map(|v| {
            let coords: Vec<Scalar> = v
                .iter()
                .map(|x| Scalar::from_field_elem(&field, field.elem_from_rational(
                    BigRational::from_integer(x.clone()),
                )))
                .collect();
            let chi = character_from_coords(&field, group, coords)?;
            canonical_class_rep(&chi)
        })
        .collect()
}

/// The image of an exact set under an invertible linear map of the ambient
/// space (classes map projectively; polytope structure is preserved).
pub fn apply_linear_map(s: &SigmaSet, m: &QMatrix) -> Result<SigmaSet, SphereError> {
    let Some(ambient) = s.ambient() else {
        return Ok(s.clone());
    };
    if m.rows() != ambient || m.cols() != ambient {
        return Err(SphereError::AmbientMismatch {
            expected: ambient,
            got: if m.rows() != ambient { m.rows() } else { m.cols() },
        });
    }
    if m.rank() != ambient {
        return Err(SphereError::SingularMap);
    }
    let map = |v: &[BigRational]| -> Result<Vec<BigRational>, SphereError> {
        Ok(m.mul_vec(v)?)
    };
    Ok(match s {
        SigmaSet::Empty { .. } | SigmaSet::WholeSphere { .. } => s.clone(),
        SigmaSet::Subsphere { space } => {
            let basis: Vec<Vec<BigRational>> = space
                .basis()
                .iter()
                .map(|w| map(w))
                .collect::<Result<_, _>>()?;
            SigmaSet::subsphere(Subspace::span(ambient, &basis)?)
        }
        SigmaSet::FinitePolytopeUnion { components, .. } => {
            let mapped = components
                .iter()
                .map(|p| {
                    let verts: Vec<Vec<BigRational>> = p
                        .vertices_rational()
                        .iter()
                        .map(|v| map(v))
                        .collect::<Result<_, _>>()?;
                    SphericalPolytope::new(ambient, verts)
                })
                .collect::<Result<Vec<_>, _>>()?;
            SigmaSet::polytope_union(ambient, mapped)?
        }
        SigmaSet::Union {
            subspheres,
            polytopes,
            ..
        } => {
            let spaces = subspheres
                .iter()
                .map(|w| {
                    let basis: Vec<Vec<BigRational>> = w
                        .basis()
                        .iter()
                        .map(|x| map(x))
                        .collect::<Result<_, _>>()?;
                    Ok(Subspace::span(ambient, &basis)?)
                })
                .collect::<Result<Vec<_>, SphereError>>()?;
            let mapped = polytopes
                .iter()
                .map(|p| {
                    let verts: Vec<Vec<BigRational>> = p
                        .vertices_rational()
                        .iter()
                        .map(|v| map(v))
                        .collect::<Result<_, _>>()?;
                    SphericalPolytope::new(ambient, verts)
                })
                .collect::<Result<Vec<_>, _>>()?;
            SigmaSet::union(ambient, spaces, mapped)?
        }
        SigmaSet::Unknown { .. } => unreachable!("ambient() filtered Unknown"),
    })
}

/// Intersect an exact set with the boundary sphere of a subspace `W` and
/// re-express the result in the coordinates of `W`'s basis.
///
/// Supports every variant whose polytope components are points; intersecting
/// a positive-dimensional polytope with a subsphere is out of scope and
/// reported as unsupported.
pub fn restrict_to_subspace(s: &SigmaSet, w: &Subspace) -> Result<SigmaSet, SphereError> {
    let Some(ambient) = s.ambient() else {
        return Ok(s.clone());
    };
    if w.ambient() != ambient {
        return Err(SphereError::AmbientMismatch {
            expected: ambient,
            got: w.ambient(),
        });
    }
    let d = w.dim();
    if d == 0 {
        return Ok(SigmaSet::empty(0));
    }
    // Intersect a subspace with W, in W-coordinates.
    let meet_in_w = |u: &Subspace| -> Result<Subspace, SphereError> {
        let meet = u.intersect(w)?;
        let coords: Vec<Vec<BigRational>> = meet
            .basis()
            .iter()
            .map(|v| {
                w.coords_in_basis(v)?
                    .ok_or_else(|| {
                        SphereError::Internal(
                            "intersection vector fell outside the subspace".into(),
                        )
                    })
            })
            .collect::<Result<_, _>>()?;
        Ok(Subspace::span(d, &coords)?)
    };
    // A point class, if it lies on the subsphere, in W-coordinates.
    let point_in_w = |p: &SphericalPolytope| -> Result<Option<Vec<BigRational>>, SphereError> {
        if !p.is_point() {
            return Err(SphereError::Unsupported(
                "restricting a positive-dimensional polytope to a subsphere is not supported"
                    .into(),
            ));
        }
        let v = p.vertices_rational().remove(0);
        Ok(w.coords_in_basis(&v)?)
    };
    Ok(match s {
        SigmaSet::Empty { .. } => SigmaSet::empty(d),
        SigmaSet::WholeSphere { .. } => SigmaSet::whole_sphere(d),
        SigmaSet::Subsphere { space } => SigmaSet::subsphere(meet_in_w(space)?),
        SigmaSet::FinitePolytopeUnion { components, .. } => {
            let mut pts = Vec::new();
            for p in components {
                if let Some(coords) = point_in_w(p)? {
                    pts.push(SphericalPolytope::point(d, coords)?);
                }
            }
            SigmaSet::polytope_union(d, pts)?
        }
        SigmaSet::Union {
            subspheres,
            polytopes,
            ..
        } => {
            let spaces = subspheres
                .iter()
                .map(&meet_in_w)
                .collect::<Result<Vec<_>, _>>()?;
            let mut pts = Vec::new();
            for p in polytopes {
                if let Some(coords) = point_in_w(p)? {
                    pts.push(SphericalPolytope::point(d, coords)?);
                }
            }
            SigmaSet::union(d, spaces, pts)?
        }
        SigmaSet::Unknown { .. } => unreachable!("ambient() filtered Unknown"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn rv(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| q(x)).collect()
    }

    fn iv(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn point(ambient: usize, v: &[i64]) -> SigmaSet {
        SigmaSet::single_point(ambient, rv(v)).unwrap()
    }

    #[test]
    fn constructors_canonicalize() {
        assert_eq!(SigmaSet::whole_sphere(0), SigmaSet::empty(0));
        assert_eq!(
            SigmaSet::subsphere(Subspace::zero(3)),
            SigmaSet::empty(3)
        );
        assert_eq!(
            SigmaSet::subsphere(Subspace::full(2)),
            SigmaSet::whole_sphere(2)
        );
        assert_eq!(
            SigmaSet::polytope_union(2, Vec::new()).unwrap(),
            SigmaSet::empty(2)
        );
        // A union with only one subsphere collapses to Subsphere.
        let w = Subspace::span(2, &[rv(&[1, 0])]).unwrap();
        let s = SigmaSet::union(2, vec![w.clone()], Vec::new()).unwrap();
        assert_eq!(s, SigmaSet::Subsphere { space: w });
    }

    #[test]
    fn overlapping_components_are_rejected() {
        let p1 = SphericalPolytope::new(2, vec![rv(&[1, 0]), rv(&[0, 1])]).unwrap();
        let inside = SphericalPolytope::point(2, rv(&[1, 1])).unwrap();
        assert!(matches!(
            SigmaSet::polytope_union(2, vec![p1.clone(), inside]),
            Err(SphereError::Overlapping { .. })
        ));
        // A point on a subsphere overlaps it.
        let w = Subspace::span(2, &[rv(&[1, 0])]).unwrap();
        let on = SphericalPolytope::point(2, rv(&[1, 0])).unwrap();
        assert!(matches!(
            SigmaSet::union(2, vec![w.clone()], vec![on]),
            Err(SphereError::Overlapping { .. })
        ));
        // Disjoint point passes.
        let off = SphericalPolytope::point(2, rv(&[0, 1])).unwrap();
        let s = SigmaSet::union(2, vec![w], vec![off]).unwrap();
        assert!(matches!(s, SigmaSet::Union { .. }));
    }

    #[test]
    fn join_of_empties_is_empty() {
        let a = SigmaSet::empty(1);
        let b = SigmaSet::empty(1);
        assert_eq!(
            spherical_join_complement(&a, &b).unwrap(),
            SigmaSet::empty(2)
        );
    }

    #[test]
    fn join_whole_sphere_with_empty_is_a_subsphere() {
        // First factor complement: all of S¹ (ambient 2); second: empty on
        // a 1-dimensional sphere coordinate. The product complement is the
        // embedded subsphere where the last coordinate vanishes.
        let a = SigmaSet::whole_sphere(2);
        let b = SigmaSet::empty(1);
        let joined = spherical_join_complement(&a, &b).unwrap();
        let expected =
            SigmaSet::subsphere(Subspace::span(3, &[rv(&[1, 0, 0]), rv(&[0, 1, 0])]).unwrap());
        assert_eq!(joined, expected);
    }

    #[test]
    fn join_of_two_points_is_two_isolated_points() {
        let a = point(1, &[1]);
        let b = point(1, &[1]);
        let joined = spherical_join_complement(&a, &b).unwrap();
        assert_eq!(
            isolated_points(&joined).unwrap(),
            vec![iv(&[0, 1]), iv(&[1, 0])]
        );
    }

    #[test]
    fn join_is_symmetric_up_to_the_coordinate_swap() {
        let a = point(1, &[1]);
        let b = SigmaSet::whole_sphere(2);
        let ab = spherical_join_complement(&a, &b).unwrap();
        let ba = spherical_join_complement(&b, &a).unwrap();
        // Swap blocks: (x | y z) -> (y z | x).
        let swap = QMatrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
        assert_eq!(apply_linear_map(&ab, &swap).unwrap(), ba);
    }

    #[test]
    fn isolated_points_of_mixed_unions() {
        // S^1 subsphere plus two isolated points.
        let w = Subspace::span(3, &[rv(&[1, 0, 0]), rv(&[0, 1, 0])]).unwrap();
        let p = SphericalPolytope::point(3, rv(&[0, 1, 1])).unwrap();
        let q_ = SphericalPolytope::point(3, rv(&[0, -1, 2])).unwrap();
        let s = SigmaSet::union(3, vec![w], vec![p, q_]).unwrap();
        assert_eq!(
            isolated_points(&s).unwrap(),
            vec![iv(&[0, -1, 2]), iv(&[0, 1, 1])]
        );
        assert_eq!(isolated_points(&SigmaSet::empty(2)).unwrap(), Vec::<Vec<BigInt>>::new());
        // A dimension-0 sphere contributes both antipodes.
        let s0 = SigmaSet::subsphere(Subspace::span(2, &[rv(&[1, 1])]).unwrap());
        assert_eq!(
            isolated_points(&s0).unwrap(),
            vec![iv(&[-1, -1]), iv(&[1, 1])]
        );
        assert_eq!(
            isolated_points(&SigmaSet::whole_sphere(1)).unwrap(),
            vec![iv(&[-1]), iv(&[1])]
        );
        // An arc has no isolated points.
        let arc = SphericalPolytope::new(2, vec![rv(&[1, 0]), rv(&[0, 1])]).unwrap();
        let s = SigmaSet::polytope_union(2, vec![arc]).unwrap();
        assert_eq!(isolated_points(&s).unwrap(), Vec::<Vec<BigInt>>::new());
        assert!(matches!(
            isolated_points(&SigmaSet::unknown("n/a")),
            Err(SphereError::UnknownSet)
        ));
    }

    #[test]
    fn isolated_classes_are_canonical_character_classes() {
        let g = GroupDescriptor::free_abelian(2);
        let s = spherical_join_complement(&point(1, &[1]), &point(1, &[1])).unwrap();
        let classes = isolated_classes(&s, &g).unwrap();
        assert_eq!(classes.len(), 2);
        for c in &classes {
            assert!(c.is_rational());
        }
    }

    #[test]
    fn linear_maps_act_projectively() {
        let two_points = spherical_join_complement(&point(1, &[1]), &point(1, &[1])).unwrap();
        let id = QMatrix::identity(2);
        assert_eq!(apply_linear_map(&two_points, &id).unwrap(), two_points);
        // Swapping the coordinates permutes the two points: same set.
        let swap = QMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(apply_linear_map(&two_points, &swap).unwrap(), two_points);
        // A positive diagonal map fixes every class.
        let arc = SigmaSet::polytope_union(
            2,
            vec![SphericalPolytope::new(2, vec![rv(&[1, 0]), rv(&[0, 1])]).unwrap()],
        )
        .unwrap();
        let diag = QMatrix::from_i64(&[&[3, 0], &[0, 7]]);
        assert_eq!(apply_linear_map(&arc, &diag).unwrap(), arc);
        // Singular maps are rejected.
        let sing = QMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert!(matches!(
            apply_linear_map(&arc, &sing),
            Err(SphereError::SingularMap)
        ));
    }

    #[test]
    fn restriction_to_subspheres() {
        // Empty restricts to empty in the new coordinates.
        let w = Subspace::span(2, &[rv(&[0, 1])]).unwrap();
        assert_eq!(
            restrict_to_subspace(&SigmaSet::empty(2), &w).unwrap(),
            SigmaSet::empty(1)
        );
        // The whole sphere restricts to the whole subsphere.
        assert_eq!(
            restrict_to_subspace(&SigmaSet::whole_sphere(2), &w).unwrap(),
            SigmaSet::whole_sphere(1)
        );
        // A point on the subsphere survives, re-expressed in W-coordinates.
        let s = point(2, &[0, 3]);
        assert_eq!(restrict_to_subspace(&s, &w).unwrap(), point(1, &[1]));
        // A point off the subsphere disappears.
        let s = point(2, &[1, 1]);
        assert_eq!(restrict_to_subspace(&s, &w).unwrap(), SigmaSet::empty(1));
        // Subsphere ∩ subsphere, re-coordinated: the xy-plane meets the
        // yz-plane in the y-axis, which is the first basis vector of W.
        let xy = SigmaSet::subsphere(Subspace::span(3, &[rv(&[1, 0, 0]), rv(&[0, 1, 0])]).unwrap());
        let yz = Subspace::span(3, &[rv(&[0, 1, 0]), rv(&[0, 0, 1])]).unwrap();
        let restricted = restrict_to_subspace(&xy, &yz).unwrap();
        assert_eq!(
            restricted,
            SigmaSet::subsphere(Subspace::span(2, &[rv(&[1, 0])]).unwrap())
        );
        // Positive-dimensional polytopes cannot be restricted.
        let arc = SigmaSet::polytope_union(
            2,
            vec![SphericalPolytope::new(2, vec![rv(&[1, 0]), rv(&[0, 1])]).unwrap()],
        )
        .unwrap();
        assert!(matches!(
            restrict_to_subspace(&arc, &w),
            Err(SphereError::Unsupported(_))
        ));
    }

    #[test]
    fn serde_round_trips_every_variant() {
        let w2 = Subspace::span(3, &[rv(&[1, 0, 0]), rv(&[0, 1, 0])]).unwrap();
        let cases = vec![
            SigmaSet::empty(2),
            SigmaSet::whole_sphere(3),
            SigmaSet::subsphere(w2.clone()),
            spherical_join_complement(&point(1, &[1]), &point(1, &[1])).unwrap(),
            SigmaSet::union(
                3,
                vec![w2],
                vec![SphericalPolytope::point(3, rv(&[0, 1, 5])).unwrap()],
            )
            .unwrap(),
            SigmaSet::unknown("no rule covers this family"),
        ];
        for s in cases {
            let json = serde_json::to_string(&s).unwrap();
            let back: SigmaSet = serde_json::from_str(&json).unwrap();
            assert_eq!(back, s, "round trip failed for {json}");
        }
        // Overlapping wire data is rejected on read.
        let bad = r#"{"variant":"polytope_union","ambient":2,"components":[
            {"ambient":2,"vertices":[["1","0"],["0","1"]]},
            {"ambient":2,"vertices":[["1","1"]]}]}"#;
        assert!(serde_json::from_str::<SigmaSet>(bad).is_err());
    }

    #[test]
    fn contains_ray_queries() {
        let s = spherical_join_complement(&point(1, &[1]), &SigmaSet::whole_sphere(2)).unwrap();
        // Contains the embedded point (1,0,0) and anything in the 0×ℚ² block.
        assert!(s.contains_ray(&rv(&[1, 0, 0])).unwrap());
        assert!(s.contains_ray(&rv(&[0, 2, -5])).unwrap());
        assert!(!s.contains_ray(&rv(&[1, 1, 0])).unwrap());
        assert!(!s.contains_ray(&rv(&[-1, 0, 0])).unwrap());
    }

    fn gl2_strategy() -> impl Strategy<Value = QMatrix> {
        // Products of elementary matrices are always invertible.
        proptest::collection::vec((0usize..4, -2i64..=2), 1..6).prop_map(|moves| {
            let mut m = QMatrix::identity(2);
            for (kind, k) in moves {
                let e = match kind {
                    0 => QMatrix::from_i64(&[&[1, k], &[0, 1]]),
                    1 => QMatrix::from_i64(&[&[1, 0], &[k, 1]]),
                    2 => QMatrix::from_i64(&[&[0, 1], &[1, 0]]),
                    _ => QMatrix::from_i64(&[&[-1, 0], &[0, 1]]),
                };
                m = m.mul(&e).unwrap();
            }
            m
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// apply_linear_map(S, M₁·M₂) = apply_linear_map(apply_linear_map(S, M₂), M₁).
        #[test]
        fn linear_map_composition(m1 in gl2_strategy(), m2 in gl2_strategy()) {
            let s = spherical_join_complement(&point(1, &[1]), &point(1, &[1])).unwrap();
            let prod = m1.mul(&m2).unwrap();
            let once = apply_linear_map(&s, &prod).unwrap();
            let twice = apply_linear_map(&apply_linear_map(&s, &m2).unwrap(), &m1).unwrap();
            prop_assert_eq!(once, twice);
        }
    }
}
