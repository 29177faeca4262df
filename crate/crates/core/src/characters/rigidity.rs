//! Rigidity and transcendence decisions for character images.
//!
//! For a nontrivial character χ the image `Im(χ) ⊂ ℝ` is a finitely
//! generated subgroup. The class `[χ]` is *rigid* when `r·Im(χ) = Im(χ)`
//! forces `r = ±1`, and *transcendental* when every ratio of nonzero values
//! is either rational or transcendental. Both notions are scale-invariant,
//! so they are genuine properties of the point on the character sphere.
//!
//! The decision procedures here are sound and never guess:
//!
//! * values on a single rational line → rigid and transcendental (the image
//!   is infinite cyclic, and `r·cℤ = cℤ` forces `r = ±1`);
//! * values in `ℚ[τ₁,…,τ_k]` (no algebraic-irrational content) →
//!   transcendental by the coefficient-vanishing argument: if a ratio `p/q`
//!   of such values were an algebraic irrational β, the polynomial `p − βq`
//!   would vanish at an algebraically independent point, so coefficientwise,
//!   making β a ratio of rational coefficients — contradiction. Transcendental
//!   classes are rigid: any `r` with `r·Im = Im` acts on a finitely generated
//!   faithful ℤ-module, hence is an algebraic integer; but `r` is also a
//!   ratio of image elements, hence rational or transcendental, so `r ∈ ℤ`,
//!   and the same applies to `1/r`, forcing `r = ±1`;
//! * values in `ℚ(θ)` spanning ℚ-dimension ≥ 2 → not transcendental (an
//!   algebraic irrational ratio is exhibited); rigidity is decided through
//!   the multiplier ring `O = {x ∈ ℚ(θ) : x·Im ⊆ Im}`: every element of `O`
//!   stabilizes the finitely generated faithful module `Im`, so `O` consists
//!   of algebraic integers, and `r·Im = Im` holds exactly for the units of
//!   `O`. If `O` has ℤ-rank 1 it equals ℤ and the only units are ±1
//!   (rigid); if the rank is ≥ 2, `O` is an order in a real quadratic or
//!   cubic field, which has units of infinite order by Dirichlet's unit
//!   theorem, and a bounded search exhibits one as a concrete witness
//!   (verified from first principles: `u·Λ ⊆ Λ` and `u⁻¹·Λ ⊆ Λ`);
//! * genuinely mixed algebraic–transcendental images → unknown, recorded
//!   with a reason, rather than an unsound claim.

use crate::characters::field::{CoefficientField, FieldElem};
use crate::characters::scalar::Scalar;
use crate::characters::CharacterError;
use crate::zlinalg::{hermite_normal_form, smith_normal_form, IntMatrix, QMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// Height cap for the shell search for an infinite-order unit of the
/// multiplier ring. Exhausting it yields an honest `Unknown`, never a claim.
const UNIT_SEARCH_HEIGHT: i64 = 20;

/// Outcome of the rigidity decision for a character class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RigidityDecision {
    /// `r·Im(χ) = Im(χ)` forces `r = ±1`.
    Rigid { reason: String },
    /// A concrete `r ≠ ±1` with `r·Im(χ) = Im(χ)`, verified exactly.
    NotRigid { unit: Scalar, reason: String },
    /// No sound decision; the reason says why.
    Unknown { reason: String },
}

/// Outcome of the transcendence decision for a character class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TranscendenceDecision {
    /// Every ratio of nonzero values is rational or transcendental.
    Transcendental { reason: String },
    /// A concrete pair of values whose ratio is an algebraic irrational.
    NotTranscendental {
        numerator: Scalar,
        denominator: Scalar,
        ratio: Scalar,
        reason: String,
    },
    /// No sound decision; the reason says why.
    Unknown { reason: String },
}

/// The image `Im(χ) ⊂ ℝ` as a canonically presented finitely generated
/// ℤ-module.
///
/// Values are expanded over the monomial basis `θ^i·τ^e`; the support lists
/// the monomials that actually occur (in sorted order), `denominator` is the
/// smallest positive integer `D` with `D·Im` integral in those coordinates,
/// and `basis` is the canonical Hermite-normal-form basis of `D·Im`. All
/// three components are generator-set independent, so two characters have
/// equal images exactly when their `ImageSubgroup`s are equal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageSubgroup {
    #[serde(with = "crate::jsonnum::int")]
    denominator: BigInt,
    #[serde(with = "crate::jsonnum::intmatrix")]
    basis: IntMatrix,
    /// Monomial labels for the basis columns: (symbol exponents, θ-power).
    support: Vec<(Vec<u32>, usize)>,
}

impl ImageSubgroup {
    /// Rank of `Im(χ)` as a free ℤ-module.
    pub fn rank(&self) -> usize {
        self.basis.rows()
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn support(&self) -> &[(Vec<u32>, usize)] {
        &self.support
    }
}

/// Compute the canonical form of `Im(χ)` from the generator values.
pub fn image_subgroup(
    field: &CoefficientField,
    values: &[Scalar],
) -> Result<ImageSubgroup, CharacterError> {
    for v in values {
        v.check_in(field)?;
    }
    let mut support: BTreeSet<(Vec<u32>, usize)> = BTreeSet::new();
    for v in values {
        for (e, c) in v.terms() {
            for (i, coord) in c.iter().enumerate() {
                if !coord.is_zero() {
                    support.insert((e.clone(), i));
                }
            }
        }
    }
    let support: Vec<(Vec<u32>, usize)> = support.into_iter().collect();
    if support.is_empty() {
        return Ok(ImageSubgroup {
            denominator: BigInt::one(),
            basis: IntMatrix::zero(0, 0),
            support,
        });
    }
    let mut rational_rows: Vec<Vec<BigRational>> = Vec::new();
    for v in values {
        if v.is_zero() {
            continue;
        }
        let row: Vec<BigRational> = support
            .iter()
            .map(|(e, i)| {
                v.terms()
                    .find(|(te, _)| te == &e)
                    .map(|(_, c)| c[*i].clone())
                    .unwrap_or_else(BigRational::zero)
            })
            .collect();
        rational_rows.push(row);
    }
    let mut denom = BigInt::one();
    for row in &rational_rows {
        for x in row {
            denom = denom.lcm(x.denom());
        }
    }
    let int_rows: Vec<Vec<BigInt>> = rational_rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let scaled = x * BigRational::from_integer(denom.clone());
                    debug_assert!(scaled.is_integer());
                    scaled.to_integer()
                })
                .collect()
        })
        .collect();
    let matrix = IntMatrix::from_rows(int_rows).expect("rows share the support length");
    Ok(ImageSubgroup {
        denominator: denom,
        basis: hermite_normal_form(&matrix),
        support,
    })
}

/// Decide rigidity of the class of the character with the given generator
/// values. Errors on the trivial character.
pub fn is_rigid(
    field: &CoefficientField,
    values: &[Scalar],
) -> Result<RigidityDecision, CharacterError> {
    Ok(classify(field, values)?.0)
}

/// Decide transcendence of the class of the character with the given
/// generator values. Errors on the trivial character.
pub fn is_transcendental(
    field: &CoefficientField,
    values: &[Scalar],
) -> Result<TranscendenceDecision, CharacterError> {
    Ok(classify(field, values)?.1)
}

/// ℤ-rank of the multiplier ring `O = {x ∈ ℚ(θ) : x·Im(χ) ⊆ Im(χ)}` for a
/// character whose values all lie in `ℚ(θ)` (no transcendental symbols).
///
/// `O` spans the ℚ-subspace `V = {x : x·v_j ∈ ℚ·Im for all j}` (clearing
/// denominators moves any element of `V` into `O`, and `O ⊆ v⁻¹·Λ` keeps it
/// finitely generated), so the rank equals `dim V`, computed by exact
/// linear algebra.
pub fn multiplier_ring_rank(
    field: &CoefficientField,
    values: &[Scalar],
) -> Result<usize, CharacterError> {
    let elems = symbol_free_elems(field, values)?;
    Ok(multiplier_space(field, &elems).len())
}

fn symbol_free_elems(
    field: &CoefficientField,
    values: &[Scalar],
) -> Result<Vec<FieldElem>, CharacterError> {
    let nonzero: Vec<&Scalar> = values.iter().filter(|v| !v.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(CharacterError::TrivialCharacter);
    }
    for v in &nonzero {
        v.check_in(field)?;
        if !v.is_symbol_free() {
            return Err(CharacterError::Unsupported(
                "multiplier ring is only defined for values in the algebraic part ℚ(θ)"
                    .to_string(),
            ));
        }
    }
    Ok(nonzero.iter().map(|v| v.constant_elem(field)).collect())
}

/// Basis of `V = {x ∈ ℚ(θ) : x·v_j ∈ spanℚ(values) for all j}` as rational
/// coordinate vectors in the power basis.
fn multiplier_space(field: &CoefficientField, elems: &[FieldElem]) -> Vec<Vec<BigRational>> {
    let d = field.theta_degree();
    let value_matrix =
        QMatrix::from_rows(elems.to_vec()).expect("equal power-basis lengths");
    // Annihilator of W = spanℚ(values): vectors c with v·c = 0 for all values.
    let annihilator = value_matrix.kernel();
    if annihilator.is_empty() {
        // W is all of ℚ(θ); every multiplication lands inside it, so V = ℚ(θ).
        return (0..d)
            .map(|i| {
                let mut v = vec![BigRational::zero(); d];
                v[i] = BigRational::one();
                v
            })
            .collect();
    }
    let ann_matrix = QMatrix::from_rows(annihilator).expect("ambient dimension d");
    let theta_powers = power_basis_elems(field);
    let mut constraint_rows: Vec<Vec<BigRational>> = Vec::new();
    for v in elems {
        // T_v: column i is the power-basis vector of θ^i·v.
        let cols: Vec<FieldElem> = theta_powers.iter().map(|p| field.elem_mul(p, v)).collect();
        let t_v = columns_to_matrix(&cols);
        let constrained = ann_matrix.mul(&t_v).expect("d × d product");
        for i in 0..constrained.rows() {
            constraint_rows.push(constrained.row(i));
        }
    }
    let v_basis = QMatrix::from_rows(constraint_rows)
        .expect("constraint rows share length d")
        .kernel();
    assert!(
        !v_basis.is_empty(),
        "1 always multiplies the image into its span"
    );
    v_basis
}

fn power_basis_elems(field: &CoefficientField) -> Vec<FieldElem> {
    let d = field.theta_degree();
    let mut powers = vec![field.elem_one()];
    if d >= 2 {
        let theta = field.elem_theta().expect("degree ≥ 2 has a generator");
        for _ in 1..d {
            let next = field.elem_mul(powers.last().expect("nonempty"), &theta);
            powers.push(next);
        }
    }
    powers
}

fn columns_to_matrix(cols: &[FieldElem]) -> QMatrix {
    let d = cols.first().map_or(0, Vec::len);
    let rows: Vec<Vec<BigRational>> = (0..d)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect();
    QMatrix::from_rows(rows).expect("columns share length")
}

fn classify(
    field: &CoefficientField,
    values: &[Scalar],
) -> Result<(RigidityDecision, TranscendenceDecision), CharacterError> {
    let nonzero: Vec<&Scalar> = values.iter().filter(|v| !v.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(CharacterError::TrivialCharacter);
    }
    for v in &nonzero {
        v.check_in(field)?;
    }

    // Case 1: all values on one rational line.
    let base = nonzero[0];
    let mut one_rational_line = true;
    for v in &nonzero[1..] {
        match v.div_exact(base, field)? {
            Some(q) if q.is_rational() => {}
            _ => {
                one_rational_line = false;
                break;
            }
        }
    }
    if one_rational_line {
        return Ok((
            RigidityDecision::Rigid {
                reason: "the image is an infinite cyclic subgroup c·ℤ of ℝ, and r·cℤ = cℤ \
                         forces r = ±1"
                    .to_string(),
            },
            TranscendenceDecision::Transcendental {
                reason: "all values lie on one rational line, so every ratio of nonzero \
                         values is rational"
                    .to_string(),
            },
        ));
    }

    // Case 2: no algebraic-irrational content (values in ℚ[τ₁,…,τ_k]).
    if nonzero.iter().all(|v| v.is_theta_free()) {
        return Ok((
            RigidityDecision::Rigid {
                reason: "the class is transcendental, and transcendental classes are rigid: \
                         any r with r·Im = Im is an algebraic integer stabilizing a finitely \
                         generated faithful module and also a ratio of image elements, hence \
                         rational; so r and 1/r lie in ℤ and r = ±1"
                    .to_string(),
            },
            TranscendenceDecision::Transcendental {
                reason: "values are polynomials in algebraically independent transcendentals \
                         with rational coefficients; an algebraic irrational ratio β would \
                         make the coefficients of numerator − β·denominator vanish, forcing \
                         β rational"
                    .to_string(),
            },
        ));
    }

    // Case 3: purely algebraic values (in ℚ(θ), spanning ℚ-dimension ≥ 2).
    if nonzero.iter().all(|v| v.is_symbol_free()) {
        let elems: Vec<FieldElem> = nonzero.iter().map(|v| v.constant_elem(field)).collect();
        let mut witness = None;
        for (j, e) in elems.iter().enumerate().skip(1) {
            let ratio = field.elem_div(e, &elems[0])?;
            if !CoefficientField::elem_is_rational(&ratio) {
                witness = Some((j, ratio));
                break;
            }
        }
        let (j, ratio) = witness.expect("values outside one rational line have an irrational ratio");
        let transcendence = TranscendenceDecision::NotTranscendental {
            numerator: (*nonzero[j]).clone(),
            denominator: (*base).clone(),
            ratio: Scalar::from_field_elem(field, ratio),
            reason: "this ratio of two image elements is algebraic and irrational".to_string(),
        };
        let v_basis = multiplier_space(field, &elems);
        let q = v_basis.len();
        let rigidity = if q == 1 {
            RigidityDecision::Rigid {
                reason: "the multiplier ring {x : x·Im ⊆ Im} has ℤ-rank 1; it consists of \
                         algebraic integers and contains 1, so it is ℤ and its only units \
                         are ±1"
                    .to_string(),
            }
        } else {
            match search_unit(field, &elems, &v_basis) {
                Some(unit) => RigidityDecision::NotRigid {
                    unit: Scalar::from_field_elem(field, unit),
                    reason: format!(
                        "verified unit of the image: u·Im ⊆ Im and u⁻¹·Im ⊆ Im with u ≠ ±1 \
                         (multiplier ring has ℤ-rank {q})"
                    ),
                },
                None => RigidityDecision::Unknown {
                    reason: format!(
                        "the multiplier ring has ℤ-rank {q} ≥ 2, so it has a unit of \
                         infinite order (Dirichlet), but the bounded search up to height \
                         {UNIT_SEARCH_HEIGHT} did not exhibit one"
                    ),
                },
            }
        };
        return Ok((rigidity, transcendence));
    }

    // Case 4: genuinely mixed content.
    let reason = "the image mixes algebraic-irrational and transcendental parts; no sound \
                  decision procedure applies"
        .to_string();
    Ok((
        RigidityDecision::Unknown {
            reason: reason.clone(),
        },
        TranscendenceDecision::Unknown { reason },
    ))
}

/// Bounded shell search for a unit `u ≠ ±1` of the multiplier ring with
/// `u·Λ ⊆ Λ` and `u⁻¹·Λ ⊆ Λ`, where `Λ` is the image lattice. Any element
/// returned has been verified directly against the lattice basis.
fn search_unit(
    field: &CoefficientField,
    elems: &[FieldElem],
    v_basis: &[Vec<BigRational>],
) -> Option<FieldElem> {
    let q = v_basis.len();
    // Integral model Λ' = D·Λ of the image lattice (same multiplier ring).
    let mut denom = BigInt::one();
    for e in elems {
        for x in e {
            denom = denom.lcm(x.denom());
        }
    }
    let generators: Vec<Vec<BigInt>> = elems
        .iter()
        .map(|e| {
            e.iter()
                .map(|x| {
                    let s = x * BigRational::from_integer(denom.clone());
                    debug_assert!(s.is_integer());
                    s.to_integer()
                })
                .collect()
        })
        .collect();
    let lattice = hermite_normal_form(
        &IntMatrix::from_rows(generators.clone()).expect("generators share length d"),
    );
    let pivots: Vec<usize> = (0..lattice.rows())
        .map(|i| {
            (0..lattice.cols())
                .find(|&j| !lattice.get(i, j).is_zero())
                .expect("HNF has no zero rows")
        })
        .collect();

    // Rational coordinates of a vector with respect to the HNF basis rows,
    // or None when the vector is outside the lattice's rational span.
    let coords = |w: &[BigRational]| -> Option<Vec<BigRational>> {
        let mut residual = w.to_vec();
        let mut out = Vec::with_capacity(lattice.rows());
        for (i, &p) in pivots.iter().enumerate() {
            let pivot = BigRational::from_integer(lattice.get(i, p).clone());
            let c = &residual[p] / &pivot;
            for (j, slot) in residual.iter_mut().enumerate() {
                let delta = &c * BigRational::from_integer(lattice.get(i, j).clone());
                *slot -= delta;
            }
            out.push(c);
        }
        if residual.iter().all(BigRational::is_zero) {
            Some(out)
        } else {
            None
        }
    };
    let in_lattice = |w: &[BigRational]| -> bool {
        coords(w).is_some_and(|c| c.iter().all(BigRational::is_integer))
    };

    // ℤ-basis of the multiplier ring O = {x : F·x integral}: substitute
    // x = V·z, clear denominators (F = A/s), and read the solution lattice
    // off the Smith normal form of A.
    let mut f_rows: Vec<Vec<BigRational>> = Vec::new();
    for g in &generators {
        let g_elem: FieldElem = g.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        let cols: Vec<Vec<BigRational>> = v_basis
            .iter()
            .map(|zb| {
                let product = field.elem_mul(zb, &g_elem);
                coords(&product).expect("multiplier-space elements map the lattice into its span")
            })
            .collect();
        for i in 0..lattice.rows() {
            f_rows.push(cols.iter().map(|c| c[i].clone()).collect());
        }
    }
    let mut scale = BigInt::one();
    for row in &f_rows {
        for x in row {
            scale = scale.lcm(x.denom());
        }
    }
    let int_rows: Vec<Vec<BigInt>> = f_rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let s = x * BigRational::from_integer(scale.clone());
                    debug_assert!(s.is_integer());
                    s.to_integer()
                })
                .collect()
        })
        .collect();
    let snf = smith_normal_form(&IntMatrix::from_rows(int_rows).expect("rows share length q"));
    assert_eq!(snf.rank(), q, "a nonzero multiplier acts injectively");
    let diag = snf.diagonal();
    let mut ring_basis: Vec<FieldElem> = Vec::with_capacity(q);
    for (l, d_l) in diag.iter().enumerate().take(q) {
        let factor = BigRational::new(scale.clone(), d_l.clone());
        // z-coordinates of the l-th ring basis vector.
        let z: Vec<BigRational> = (0..q)
            .map(|i| BigRational::from_integer(snf.v.get(i, l).clone()) * &factor)
            .collect();
        let mut elem = field.elem_zero();
        for (zi, vb) in z.iter().zip(v_basis) {
            elem = field.elem_add(&elem, &field.elem_scale(vb, zi));
        }
        ring_basis.push(elem);
    }

    let lattice_rows: Vec<FieldElem> = (0..lattice.rows())
        .map(|i| {
            lattice
                .row(i)
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let preserves_lattice = |x: &FieldElem| -> bool {
        lattice_rows
            .iter()
            .all(|row| in_lattice(&field.elem_mul(x, row)))
    };

    for height in 1..=UNIT_SEARCH_HEIGHT {
        let mut coeffs = vec![-height; q];
        loop {
            if coeffs.iter().map(|c| c.abs()).max() == Some(height) {
                let mut x = field.elem_zero();
                for (c, b) in coeffs.iter().zip(&ring_basis) {
                    let scaled = field.elem_scale(b, &BigRational::from_integer((*c).into()));
                    x = field.elem_add(&x, &scaled);
                }
                let is_plus_minus_one = CoefficientField::elem_as_rational(&x)
                    .is_some_and(|r| r.abs() == BigRational::one());
                if !CoefficientField::elem_is_zero(&x) && !is_plus_minus_one {
                    if let Ok(x_inv) = field.elem_inv(&x) {
                        if preserves_lattice(&x) && preserves_lattice(&x_inv) {
                            return Some(x);
                        }
                    }
                }
            }
            // Odometer step over the box [−height, height]^q.
            let mut pos = 0;
            loop {
                if pos == q {
                    break;
                }
                coeffs[pos] += 1;
                if coeffs[pos] > height {
                    coeffs[pos] = -height;
                    pos += 1;
                } else {
                    break;
                }
            }
            if pos == q {
                break;
            }
        }
    }
    None
}
