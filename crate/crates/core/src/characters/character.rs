//! Characters of finitely generated groups: construction with relator
//! validation, evaluation on words, pullback along homomorphisms, canonical
//! representatives of points on the character sphere, and the subspace of
//! kernel characters fixed by the conjugation action of a finite extension.
//!
//! A character is a homomorphism `χ: G → (ℝ, +)`. Since ℝ is torsion-free
//! abelian, χ factors through the free part `ℤ^{b₁}` of the abelianization,
//! so every character is determined by its `b₁` *abelianization coordinates*;
//! both the per-generator values and those coordinates are stored. All
//! arithmetic is exact ([`Scalar`] values over a [`CoefficientField`]).

use crate::characters::field::{CoefficientField, Sign};
use crate::characters::rigidity::{
    image_subgroup, is_rigid, is_transcendental, ImageSubgroup, RigidityDecision,
    TranscendenceDecision,
};
use crate::characters::scalar::Scalar;
use crate::characters::CharacterError;
use crate::groups::{
    FiniteExtensionData, GroupDescriptor, GroupError, GroupKind, Homomorphism, Word,
};
use crate::zlinalg::{AbelianStructure, QMatrix, Subspace};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Abelianization of a group descriptor, the coordinate system for all
/// character-sphere computations (`b₁` = free rank = sphere dimension + 1).
pub fn abelianization(g: &GroupDescriptor) -> Result<AbelianStructure, GroupError> {
    g.abelianization()
}

/// A homomorphism `G → (ℝ, +)` with exact values.
///
/// Stores one value per generator plus the induced coordinates on the free
/// part of the abelianization. Constructed only through the validating
/// constructors, so every instance satisfies: each relator evaluates to zero,
/// and generators that are torsion in the abelianization evaluate to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    field: CoefficientField,
    group: GroupDescriptor,
    values: Vec<Scalar>,
    coords: Vec<Scalar>,
}

/// Wire format for a character: the coefficient field plus either
/// per-generator `values` or abelianization `coords` (exactly one).
/// Emission always uses `coords`, the canonical coordinate system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterData {
    #[serde(default)]
    pub field: CoefficientField,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<Scalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<Scalar>>,
}

/// Build a character from one value per generator, validating that every
/// relator of the group evaluates to zero.
///
/// The check runs over the columns of the relation matrix: a homomorphism to
/// an abelian target kills a relator exactly when it kills its exponent
/// vector. Torsion generators are then forced to zero automatically (if
/// `d·x` lies in the relation lattice, `d·χ(x) = 0` and the values live in a
/// ℚ-vector space).
pub fn character_from_values(
    field: &CoefficientField,
    group: &GroupDescriptor,
    values: Vec<Scalar>,
) -> Result<Character, CharacterError> {
    let n = group.ngens();
    if values.len() != n {
        return Err(CharacterError::ValueCount {
            expected: n,
            got: values.len(),
        });
    }
    for v in &values {
        v.check_in(field)?;
    }
    let relations = group.relation_matrix()?;
    let names = group.generator_names();
    for col in 0..relations.cols() {
        let mut eval = Scalar::zero();
        for (i, v) in values.iter().enumerate() {
            let e = relations.get(i, col);
            if !e.is_zero() {
                eval = eval.add(&v.scale_int(e, field), field);
            }
        }
        if !eval.is_zero() {
            let relator = (0..n)
                .filter(|&i| !relations.get(i, col).is_zero())
                .map(|i| {
                    let e = relations.get(i, col);
                    if e.is_one() {
                        names[i].clone()
                    } else {
                        format!("{}^{}", names[i], e)
                    }
                })
                .collect::<Vec<_>>()
                .join(" ");
            return Err(CharacterError::NotACharacter {
                relator,
                value: eval.render(field),
            });
        }
    }
    let ab = group.abelianization()?;
    let coords = coords_from_values(field, &ab, &values);
    let chi = Character {
        field: field.clone(),
        group: group.clone(),
        values,
        coords,
    };
    debug_assert!(
        chi.values == values_from_coords(&chi.field, &ab, &chi.coords),
        "values of a valid character factor through the free abelianization"
    );
    Ok(chi)
}

/// Build a character from its abelianization coordinates (one [`Scalar`] per
/// free basis element of the abelianization). Any coordinate vector yields a
/// valid character, so this never fails beyond shape checks.
pub fn character_from_coords(
    field: &CoefficientField,
    group: &GroupDescriptor,
    coords: Vec<Scalar>,
) -> Result<Character, CharacterError> {
    let ab = group.abelianization()?;
    if coords.len() != ab.free_rank() {
        return Err(CharacterError::ValueCount {
            expected: ab.free_rank(),
            got: coords.len(),
        });
    }
    for c in &coords {
        c.check_in(field)?;
    }
    let values = values_from_coords(field, &ab, &coords);
    Ok(Character {
        field: field.clone(),
        group: group.clone(),
        values,
        coords,
    })
}

fn coords_from_values(
    field: &CoefficientField,
    ab: &AbelianStructure,
    values: &[Scalar],
) -> Vec<Scalar> {
    let basis = ab.free_basis_in_gens(); // ngens × free_rank
    (0..ab.free_rank())
        .map(|j| {
            let mut acc = Scalar::zero();
            for (i, v) in values.iter().enumerate() {
                let e = basis.get(i, j);
                if !e.is_zero() {
                    acc = acc.add(&v.scale_int(e, field), field);
                }
            }
            acc
        })
        .collect()
}

fn values_from_coords(
    field: &CoefficientField,
    ab: &AbelianStructure,
    coords: &[Scalar],
) -> Vec<Scalar> {
    let free = ab.free_of_gen(); // free_rank × ngens
    (0..ab.ngens())
        .map(|i| {
            let mut acc = Scalar::zero();
            for (j, c) in coords.iter().enumerate() {
                let e = free.get(j, i);
                if !e.is_zero() {
                    acc = acc.add(&c.scale_int(e, field), field);
                }
            }
            acc
        })
        .collect()
}

impl Character {
    /// Build from the wire format: exactly one of `values`/`coords`.
    pub fn from_data(
        group: &GroupDescriptor,
        data: &CharacterData,
    ) -> Result<Character, CharacterError> {
        match (&data.values, &data.coords) {
            (Some(v), None) => character_from_values(&data.field, group, v.clone()),
            (None, Some(c)) => character_from_coords(&data.field, group, c.clone()),
            (Some(_), Some(_)) => Err(CharacterError::Unsupported(
                "character data carries both `values` and `coords`; give exactly one".into(),
            )),
            (None, None) => Err(CharacterError::Unsupported(
                "character data carries neither `values` nor `coords`".into(),
            )),
        }
    }

    /// Wire form of this character (field + abelianization coordinates).
    pub fn data(&self) -> CharacterData {
        CharacterData {
            field: self.field.clone(),
            values: None,
            coords: Some(self.coords.clone()),
        }
    }

    pub fn field(&self) -> &CoefficientField {
        &self.field
    }

    pub fn group(&self) -> &GroupDescriptor {
        &self.group
    }

    /// One value per generator of the group.
    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    /// Coordinates on the free part of the abelianization (length `b₁`).
    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    /// The zero homomorphism?
    pub fn is_trivial(&self) -> bool {
        self.coords.iter().all(Scalar::is_zero)
    }

    /// Exact value `χ(w)` of the character on a word.
    pub fn evaluate(&self, w: &Word) -> Result<Scalar, CharacterError> {
        let sums = w.exponent_sums(self.group.ngens())?;
        let mut acc = Scalar::zero();
        for (e, v) in sums.iter().zip(&self.values) {
            if !e.is_zero() {
                acc = acc.add(&v.scale_int(e, &self.field), &self.field);
            }
        }
        Ok(acc)
    }

    /// Exact sign of `χ(w)`, when the scalar sign rule determines it.
    pub fn sign_on(&self, w: &Word) -> Result<Option<Sign>, CharacterError> {
        Ok(self.evaluate(w)?.sign(&self.field))
    }

    /// The character `s·χ` (any rational `s`; `s > 0` stays in the class).
    pub fn scale_rational(&self, s: &BigRational) -> Character {
        Character {
            field: self.field.clone(),
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .map(|v| v.scale_rational(s, &self.field))
                .collect(),
            coords: self
                .coords
                .iter()
                .map(|c| c.scale_rational(s, &self.field))
                .collect(),
        }
    }

    /// The image `Im(χ) ⊂ ℝ` as a canonically presented ℤ-module.
    pub fn image(&self) -> Result<ImageSubgroup, CharacterError> {
        image_subgroup(&self.field, &self.values)
    }

    /// Rigidity decision for the class of this character.
    pub fn rigidity(&self) -> Result<RigidityDecision, CharacterError> {
        is_rigid(&self.field, &self.values)
    }

    /// Transcendence decision for the class of this character.
    pub fn transcendence(&self) -> Result<TranscendenceDecision, CharacterError> {
        is_transcendental(&self.field, &self.values)
    }
}

/// Pull a character back along a homomorphism: `(χ∘φ)(g) = χ(φ(g))`.
///
/// Works at any validation level of `φ`: the pulled-back values satisfy the
/// source relations automatically, because the (at least abelianized)
/// homomorphism property moves every source relator into the relation
/// lattice of the target, which `χ` kills.
pub fn pullback(chi: &Character, phi: &Homomorphism) -> Result<Character, CharacterError> {
    if phi.target() != chi.group() {
        return Err(CharacterError::GroupMismatch);
    }
    let values = phi
        .images()
        .iter()
        .map(|w| chi.evaluate(w))
        .collect::<Result<Vec<_>, _>>()?;
    character_from_values(&chi.field, phi.source(), values)
}

/// A point of the character sphere `S(G)`: the canonical representative of
/// the ray `{s·χ : s > 0}`, plus whether the ray contains a rational vector.
///
/// Canonicalization uses only positive scalings, so `[χ]` and `[−χ]` stay
/// distinct (they are antipodal points).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterClass {
    representative: Character,
    rational: bool,
}

impl CharacterClass {
    pub fn representative(&self) -> &Character {
        &self.representative
    }

    /// True when the ray contains a rational (equivalently primitive-integer)
    /// coordinate vector; the representative is then that primitive vector.
    pub fn is_rational(&self) -> bool {
        self.rational
    }
}

/// Canonical representative of the positive-scaling class of `χ`.
///
/// Procedure (deterministic and invariant under positive rational scaling):
/// 1. all coordinates rational → the primitive integer vector on the same ray;
/// 2. otherwise, if the first nonzero coordinate `c₀` has a determinable sign
///    and divides every coordinate exactly, scale by `1/|c₀|`; if the
///    quotients are all rational the class is rational and gets its primitive
///    integer vector, else the quotients are the representative;
/// 3. otherwise divide by the positive rational content (the gcd of all
///    rational coefficients appearing in the coordinates).
pub fn canonical_class_rep(chi: &Character) -> Result<CharacterClass, CharacterError> {
    if chi.is_trivial() {
        return Err(CharacterError::TrivialCharacter);
    }
    let field = &chi.field;

    if let Some(rat) = rational_coords(&chi.coords) {
        return Ok(CharacterClass {
            representative: rep_from_integers(chi, &primitive_integer_vector(&rat))?,
            rational: true,
        });
    }

    let c0 = chi
        .coords
        .iter()
        .find(|c| !c.is_zero())
        .expect("nontrivial character has a nonzero coordinate");
    if let Some(sign) = c0.sign(field) {
        debug_assert!(!sign.is_zero(), "a nonzero scalar never has sign zero");
        let mut quotients = Vec::with_capacity(chi.coords.len());
        let mut divisible = true;
        for c in &chi.coords {
            match c.div_exact(c0, field)? {
                Some(q) => quotients.push(q),
                None => {
                    divisible = false;
                    break;
                }
            }
        }
        if divisible {
            // Scaling by 1/|c₀| is positive; with c₀ < 0 that is −(1/c₀).
            let adjusted: Vec<Scalar> = if sign.is_negative() {
                quotients.iter().map(|q| q.neg(field)).collect()
            } else {
                quotients
            };
            if let Some(rat) = rational_coords(&adjusted) {
                return Ok(CharacterClass {
                    representative: rep_from_integers(chi, &primitive_integer_vector(&rat))?,
                    rational: true,
                });
            }
            return Ok(CharacterClass {
                representative: character_from_coords(field, &chi.group, adjusted)?,
                rational: false,
            });
        }
    }

    let content = rational_content(&chi.coords);
    debug_assert!(content.is_positive());
    let inv = content.recip();
    let scaled = chi
        .coords
        .iter()
        .map(|c| c.scale_rational(&inv, field))
        .collect();
    Ok(CharacterClass {
        representative: character_from_coords(field, &chi.group, scaled)?,
        rational: false,
    })
}

fn rational_coords(coords: &[Scalar]) -> Option<Vec<BigRational>> {
    coords.iter().map(Scalar::as_rational).collect()
}

fn rep_from_integers(chi: &Character, ints: &[BigInt]) -> Result<Character, CharacterError> {
    let coords = ints
        .iter()
        .map(|n| Scalar::from_rational(&chi.field, BigRational::from_integer(n.clone())))
        .collect();
    character_from_coords(&chi.field, &chi.group, coords)
}

/// The primitive integer vector on the ray of a nonzero rational vector:
/// clear denominators, divide by the gcd of the entries. Signs are kept
/// (only positive scalings are applied).
pub(crate) fn primitive_integer_vector(rat: &[BigRational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for r in rat {
        l = l.lcm(r.denom());
    }
    let ints: Vec<BigInt> = rat
        .iter()
        .map(|r| {
            let s = r * BigRational::from_integer(l.clone());
            debug_assert!(s.is_integer());
            s.to_integer()
        })
        .collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    debug_assert!(g.is_positive(), "a nonzero vector has positive gcd");
    ints.iter().map(|x| x / &g).collect()
}

/// Positive rational gcd of every coefficient appearing in the scalars:
/// gcd of the (reduced) numerators over the lcm of the denominators. The
/// unique positive rational `c` such that dividing by `c` makes all
/// coefficients integers with overall gcd 1.
fn rational_content(coords: &[Scalar]) -> BigRational {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for c in coords {
        for (_, coeff) in c.terms() {
            for x in coeff {
                if !x.is_zero() {
                    num = num.gcd(x.numer());
                    den = den.lcm(x.denom());
                }
            }
        }
    }
    debug_assert!(num.is_positive(), "some coefficient is nonzero");
    BigRational::new(num, den)
}

/// The rational subspace of characters of an extension's kernel that are
/// invariant under all the stored conjugation maps — the characters that can
/// extend over the finite quotient.
///
/// Stored in the abelianization coordinates of the kernel; the canonical
/// (reduced-row-echelon) basis makes equality set equality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFixSubspace", into = "RawFixSubspace")]
pub struct FixSubspace {
    kernel: GroupDescriptor,
    space: Subspace,
}

#[derive(Serialize, Deserialize)]
struct RawFixSubspace {
    kernel: GroupDescriptor,
    #[serde(with = "crate::jsonnum::ratrows")]
    basis: Vec<Vec<BigRational>>,
}

impl TryFrom<RawFixSubspace> for FixSubspace {
    type Error = CharacterError;

    fn try_from(raw: RawFixSubspace) -> Result<Self, CharacterError> {
        let ambient = raw.kernel.b1()?;
        for v in &raw.basis {
            if v.len() != ambient {
                return Err(CharacterError::Unsupported(format!(
                    "fixed-subspace basis vector has length {}, expected b₁ = {ambient}",
                    v.len()
                )));
            }
        }
        let space = Subspace::span(ambient, &raw.basis).map_err(GroupError::from)?;
        Ok(FixSubspace {
            kernel: raw.kernel,
            space,
        })
    }
}

impl From<FixSubspace> for RawFixSubspace {
    fn from(f: FixSubspace) -> Self {
        RawFixSubspace {
            basis: f.space.basis().to_vec(),
            kernel: f.kernel,
        }
    }
}

impl FixSubspace {
    /// The kernel group `H` whose characters this subspace lives in.
    pub fn kernel_group(&self) -> &GroupDescriptor {
        &self.kernel
    }

    /// Dimension of the ambient character space `Hom(H, ℝ) ≅ ℝ^{b₁(H)}`.
    pub fn ambient(&self) -> usize {
        self.space.ambient()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Canonical basis, rows in kernel abelianization coordinates.
    pub fn basis(&self) -> &[Vec<BigRational>] {
        self.space.basis()
    }

    /// The underlying rational subspace.
    pub fn subspace(&self) -> &Subspace {
        &self.space
    }

    /// Membership of a rational coordinate vector.
    pub fn contains_coords(&self, v: &[BigRational]) -> Result<bool, CharacterError> {
        self.space
            .contains(v)
            .map_err(|e| CharacterError::Group(GroupError::from(e)))
    }

    /// Membership of a character of the kernel (any coefficient field):
    /// a scalar vector lies in a rational subspace exactly when each of its
    /// monomial/θ-power coefficient slices does.
    pub fn contains(&self, chi: &Character) -> Result<bool, CharacterError> {
        if chi.group() != &self.kernel {
            return Err(CharacterError::GroupMismatch);
        }
        for slice in coefficient_slices(chi.coords()).values() {
            if !self.contains_coords(slice)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The basis vectors as rational characters of the kernel.
    pub fn basis_characters(
        &self,
        field: &CoefficientField,
    ) -> Result<Vec<Character>, CharacterError> {
        self.space
            .basis()
            .iter()
            .map(|v| {
                let coords = v
                    .iter()
                    .map(|x| Scalar::from_rational(field, x.clone()))
                    .collect();
                character_from_coords(field, &self.kernel, coords)
            })
            .collect()
    }
}

/// Decompose a scalar vector into rational vectors, one per monomial/θ-power
/// pair that occurs anywhere in it.
pub(crate) fn coefficient_slices(
    coords: &[Scalar],
) -> BTreeMap<(Vec<u32>, usize), Vec<BigRational>> {
    let mut slices: BTreeMap<(Vec<u32>, usize), Vec<BigRational>> = BTreeMap::new();
    for (j, c) in coords.iter().enumerate() {
        for (powers, coeff) in c.terms() {
            for (t, x) in coeff.iter().enumerate() {
                if !x.is_zero() {
                    slices
                        .entry((powers.clone(), t))
                        .or_insert_with(|| vec![BigRational::zero(); coords.len()])[j] = x.clone();
                }
            }
        }
    }
    slices
}

/// Compute the fixed subspace of a finite-extension descriptor: all
/// `φ ∈ Hom(H, ℝ)` with `φ(ν(q)⁻¹ h ν(q)) = φ(h)` for every stored
/// conjugation map and every kernel generator `h`.
pub fn fix_subspace(group: &GroupDescriptor) -> Result<FixSubspace, CharacterError> {
    match group.kind() {
        GroupKind::FiniteExtension(data) => fix_subspace_of(data),
        _ => Err(CharacterError::Unsupported(
            "the fixed character subspace is defined for finite-extension descriptors".into(),
        )),
    }
}

/// [`fix_subspace`] on the raw extension data.
pub fn fix_subspace_of(data: &FiniteExtensionData) -> Result<FixSubspace, CharacterError> {
    let kernel = data.kernel();
    let ab = kernel.abelianization()?;
    let n = ab.ngens();
    let b = ab.free_rank();
    let free = ab.free_of_gen(); // b × n

    // One linear constraint per (conjugator, generator): the free-part image
    // of α_q(h_i) minus the free part of h_i, dotted with the coordinate
    // vector, must vanish.
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for q in data.non_identity_elements() {
        for i in 0..n {
            let e = data.conjugation()[q][i].exponent_sums(n)?;
            let img = ab.free_coords(&e).map_err(GroupError::from)?;
            let row: Vec<BigRational> = (0..b)
                .map(|j| BigRational::from_integer(&img[j] - free.get(j, i)))
                .collect();
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    let space = if rows.is_empty() {
        Subspace::full(b)
    } else {
        let kernel_basis = QMatrix::from_rows(rows)
            .map_err(GroupError::from)?
            .kernel();
        Subspace::span(b, &kernel_basis).map_err(GroupError::from)?
    };

    // Re-verify the defining equations on the canonical basis: for every
    // basis vector c and every stored conjugation word, φ_c(α_q(h_i)) equals
    // φ_c(h_i), where φ_c(h_k) = Σ_j free[j][k]·c[j].
    for c in space.basis() {
        let phi_of_gen: Vec<BigRational> = (0..n)
            .map(|k| {
                (0..b)
                    .map(|j| BigRational::from_integer(free.get(j, k).clone()) * &c[j])
                    .sum()
            })
            .collect();
        for q in data.non_identity_elements() {
            for (i, w) in data.conjugation()[q].iter().enumerate() {
                let e = w.exponent_sums(n)?;
                let lhs: BigRational = e
                    .iter()
                    .zip(&phi_of_gen)
                    .map(|(exp, val)| BigRational::from_integer(exp.clone()) * val)
                    .sum();
                assert_eq!(
                    lhs, phi_of_gen[i],
                    "fixed-subspace basis vector fails a conjugation-invariance equation"
                );
            }
        }
    }

    Ok(FixSubspace {
        kernel: kernel.clone(),
        space,
    })
}
