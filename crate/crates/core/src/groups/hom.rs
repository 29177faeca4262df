//! Homomorphism validation and application.
//!
//! A candidate map is given by one image word per source generator. The
//! validator always runs the abelianized necessary check (the induced map
//! must kill every relation column in the target's abelianization). On top
//! of that it tries to certify exactness: every defining relator of the
//! source must map to a word that provably dies in the target, via free
//! reduction, the target's normal forms, or — for one-relator targets — a
//! conjugacy test against the relator and its inverse. The reported level
//! records how far validation got; `AbelianizedOnly` never claims the map
//! is a homomorphism, only that the abelianized obstruction vanishes.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::descriptor::GroupDescriptor;
use super::normal_form::normal_form;
use super::word::{render_word, Word};
use super::GroupError;
use crate::zlinalg::IntMatrix;

/// How thoroughly a candidate map has been checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ValidationLevel {
    /// Every defining relator of the source provably dies in the target.
    Exact,
    /// Only the abelianized obstruction was checked; relator images could
    /// not all be resolved in the target.
    AbelianizedOnly,
}

/// Outcome of asking whether a word represents the identity of a group.
enum Death {
    Dies,
    Lives(Word),
    Unknown,
}

/// Substitute generator images into a word.
fn substitute(w: &Word, images: &[Word]) -> Result<Word, GroupError> {
    let mut acc = Word::identity();
    for l in w.letters() {
        let img = images.get(l.gen).ok_or(GroupError::GeneratorIndex {
            index: l.gen,
            count: images.len(),
        })?;
        acc = acc.mul(&img.pow(&l.exp)?);
    }
    Ok(acc)
}

fn cyclic_reduce_units(mut units: Vec<(usize, i8)>) -> Vec<(usize, i8)> {
    while units.len() >= 2 {
        let first = units[0];
        let last = units[units.len() - 1];
        if first.0 == last.0 && first.1 == -last.1 {
            units.remove(0);
            units.pop();
        } else {
            break;
        }
    }
    units
}

fn invert_units(units: &[(usize, i8)]) -> Vec<(usize, i8)> {
    units.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

fn is_rotation(a: &[(usize, i8)], b: &[(usize, i8)]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let doubled: Vec<(usize, i8)> = b.iter().chain(b.iter()).copied().collect();
    doubled.windows(a.len()).any(|win| win == a)
}

/// Sound, incomplete test: is `w` conjugate to the relator or its inverse
/// (as cyclic words)? `Ok(true)` means `w` dies in the one-relator group.
fn conjugate_of_relator(w: &Word, r: &Word) -> Result<bool, GroupError> {
    let wu = cyclic_reduce_units(w.expand_units()?);
    let ru = cyclic_reduce_units(r.expand_units()?);
    if wu.is_empty() {
        return Ok(true);
    }
    Ok(is_rotation(&wu, &ru) || is_rotation(&wu, &invert_units(&ru)))
}

/// Decide, as far as possible, whether `w` is the identity of `target`.
fn word_dies(target: &GroupDescriptor, w: &Word) -> Result<Death, GroupError> {
    if w.is_identity() {
        return Ok(Death::Dies);
    }
    if target.supports_normal_forms() {
        return match normal_form(target, w) {
            Ok(nf) if nf.is_identity() => Ok(Death::Dies),
            Ok(nf) => Ok(Death::Lives(nf)),
            Err(GroupError::PowerTooLarge(_)) => Ok(Death::Unknown),
            Err(e) => Err(e),
        };
    }
    if let Ok(rels) = target.relators() {
        if rels.len() == 1 && !rels[0].is_identity() {
            return match conjugate_of_relator(w, &rels[0]) {
                Ok(true) => Ok(Death::Dies),
                Ok(false) => Ok(Death::Unknown),
                Err(GroupError::PowerTooLarge(_)) => Ok(Death::Unknown),
                Err(e) => Err(e),
            };
        }
    }
    Ok(Death::Unknown)
}

/// Validate a candidate homomorphism given by generator images.
///
/// Errors with `NotAHomomorphism` when a relator provably survives, and
/// with `ImageCount`/`GeneratorIndex` on malformed input. On success the
/// returned level says whether every relator was seen to die.
pub fn validate_homomorphism(
    source: &GroupDescriptor,
    target: &GroupDescriptor,
    images: &[Word],
) -> Result<ValidationLevel, GroupError> {
    let sn = source.ngens();
    let tn = target.ngens();
    if images.len() != sn {
        return Err(GroupError::ImageCount {
            expected: sn,
            got: images.len(),
        });
    }
    for img in images {
        if img.max_gen().is_some_and(|m| m >= tn) {
            return Err(GroupError::GeneratorIndex {
                index: img.max_gen().unwrap(),
                count: tn,
            });
        }
    }

    // Abelianized necessary condition, on the full relation matrix.
    let relmat = source.relation_matrix()?;
    let mut a = IntMatrix::zero(tn, sn);
    for (j, img) in images.iter().enumerate() {
        for (i, e) in img.exponent_sums(tn)?.into_iter().enumerate() {
            a.set(i, j, e);
        }
    }
    let mapped = a.mul(&relmat).map_err(GroupError::from)?;
    let tab = target.abelianization()?;
    for j in 0..mapped.cols() {
        let col: Vec<BigInt> = (0..mapped.rows()).map(|i| mapped.get(i, j).clone()).collect();
        if !tab.is_identity(&col)? {
            let relator = describe_relator(source, j);
            return Err(GroupError::NotAHomomorphism {
                relator,
                detail: "its image is nonzero in the target abelianization".into(),
            });
        }
    }

    // Exact check, when the source relators are available as words.
    let rels = match source.relators() {
        Ok(r) => r,
        Err(GroupError::UnsupportedFamily(_)) => return Ok(ValidationLevel::AbelianizedOnly),
        Err(e) => return Err(e),
    };
    let mut level = ValidationLevel::Exact;
    for r in &rels {
        let image = match substitute(r, images) {
            Ok(w) => w,
            Err(GroupError::PowerTooLarge(_)) => {
                level = ValidationLevel::AbelianizedOnly;
                continue;
            }
            Err(e) => return Err(e),
        };
        match word_dies(target, &image)? {
            Death::Dies => {}
            Death::Lives(nf) => {
                return Err(GroupError::NotAHomomorphism {
                    relator: describe_word(source, r),
                    detail: format!(
                        "its image has nontrivial normal form `{}` in the target",
                        describe_word(target, &nf)
                    ),
                });
            }
            Death::Unknown => level = ValidationLevel::AbelianizedOnly,
        }
    }
    Ok(level)
}

fn describe_word(g: &GroupDescriptor, w: &Word) -> String {
    render_word(w, &g.generator_names())
        .map(|toks| toks.join(" "))
        .unwrap_or_else(|_| format!("{w:?}"))
}

fn describe_relator(source: &GroupDescriptor, j: usize) -> String {
    match source.relators() {
        Ok(rels) if j < rels.len() => describe_word(source, &rels[j]),
        _ => format!("relation column {j}"),
    }
}

/// A validated homomorphism, carried with its validation level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    source: GroupDescriptor,
    target: GroupDescriptor,
    images: Vec<Word>,
    level: ValidationLevel,
}

impl Homomorphism {
    pub fn new(
        source: GroupDescriptor,
        target: GroupDescriptor,
        images: Vec<Word>,
    ) -> Result<Self, GroupError> {
        let level = validate_homomorphism(&source, &target, &images)?;
        Ok(Homomorphism {
            source,
            target,
            images,
            level,
        })
    }

    /// The identity endomorphism.
    pub fn identity(g: &GroupDescriptor) -> Result<Self, GroupError> {
        let images = (0..g.ngens()).map(Word::generator).collect();
        Homomorphism::new(g.clone(), g.clone(), images)
    }

    pub fn source(&self) -> &GroupDescriptor {
        &self.source
    }

    pub fn target(&self) -> &GroupDescriptor {
        &self.target
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn level(&self) -> ValidationLevel {
        self.level
    }

    /// Image of a word (substitution only; no target normal form).
    pub fn apply(&self, w: &Word) -> Result<Word, GroupError> {
        substitute(w, &self.images)
    }

    /// Exponent matrix of the generator images: target generators by
    /// source generators.
    pub fn generator_exponent_matrix(&self) -> Result<IntMatrix, GroupError> {
        let tn = self.target.ngens();
        let sn = self.source.ngens();
        let mut a = IntMatrix::zero(tn, sn);
        for (j, img) in self.images.iter().enumerate() {
            for (i, e) in img.exponent_sums(tn)?.into_iter().enumerate() {
                a.set(i, j, e);
            }
        }
        Ok(a)
    }

    /// Induced map on the free parts of the abelianizations, as a matrix
    /// from the source's free basis to the target's.
    pub fn induced_free_map(&self) -> Result<IntMatrix, GroupError> {
        let sab = self.source.abelianization()?;
        let tab = self.target.abelianization()?;
        let a = self.generator_exponent_matrix()?;
        let m = tab.free_of_gen().mul(&a).map_err(GroupError::from)?;
        m.mul(sab.free_basis_in_gens()).map_err(GroupError::from)
    }

    /// Composition `then ∘ self` (first `self`, then `then`), revalidated.
    pub fn compose(&self, then: &Homomorphism) -> Result<Homomorphism, GroupError> {
        if then.source != self.target {
            return Err(GroupError::InvalidParameter(
                "composition needs the second map to start where the first ends".into(),
            ));
        }
        let images = self
            .images
            .iter()
            .map(|w| then.apply(w))
            .collect::<Result<Vec<_>, _>>()?;
        Homomorphism::new(self.source.clone(), then.target.clone(), images)
    }
}

/// Decide equality of two words in `g`, as far as the word problem allows.
/// Falls back to the abelianized comparison, reported as such.
fn equality_level(
    g: &GroupDescriptor,
    u: &Word,
    v: &Word,
) -> Result<(bool, ValidationLevel), GroupError> {
    let w = u.mul(&v.inverse());
    match word_dies(g, &w)? {
        Death::Dies => Ok((true, ValidationLevel::Exact)),
        Death::Lives(_) => Ok((false, ValidationLevel::Exact)),
        Death::Unknown => {
            let ab = g.abelianization()?;
            let same = ab.is_identity(&w.exponent_sums(g.ngens())?)?;
            Ok((same, ValidationLevel::AbelianizedOnly))
        }
    }
}

/// An automorphism: a validated endomorphism together with a validated
/// inverse, checked to compose to the identity in both orders (exactly
/// where the word problem is solved, abelianized otherwise).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    forward: Homomorphism,
    inverse: Homomorphism,
    level: ValidationLevel,
}

impl Automorphism {
    pub fn new(forward: Homomorphism, inverse: Homomorphism) -> Result<Self, GroupError> {
        let g = forward.source().clone();
        if forward.target() != &g || inverse.source() != &g || inverse.target() != &g {
            return Err(GroupError::InvalidParameter(
                "automorphism data must be two endomorphisms of the same group".into(),
            ));
        }
        let mut level = forward.level().max(inverse.level());
        for i in 0..g.ngens() {
            let gen = Word::generator(i);
            let round1 = inverse.apply(&forward.images()[i])?;
            let round2 = forward.apply(&inverse.images()[i])?;
            for round in [round1, round2] {
                let (same, lvl) = equality_level(&g, &round, &gen)?;
                if !same {
                    return Err(GroupError::InvalidParameter(format!(
                        "claimed inverse does not invert at generator `{}`",
                        g.generator_names()[i]
                    )));
                }
                level = level.max(lvl);
            }
        }
        Ok(Automorphism {
            forward,
            inverse,
            level,
        })
    }

    /// Build from image lists, validating both directions.
    pub fn from_images(
        g: &GroupDescriptor,
        forward: Vec<Word>,
        inverse: Vec<Word>,
    ) -> Result<Self, GroupError> {
        let f = Homomorphism::new(g.clone(), g.clone(), forward)?;
        let i = Homomorphism::new(g.clone(), g.clone(), inverse)?;
        Automorphism::new(f, i)
    }

    pub fn identity(g: &GroupDescriptor) -> Result<Self, GroupError> {
        let id = Homomorphism::identity(g)?;
        Automorphism::new(id.clone(), id)
    }

    pub fn group(&self) -> &GroupDescriptor {
        self.forward.source()
    }

    pub fn forward(&self) -> &Homomorphism {
        &self.forward
    }

    pub fn inverse(&self) -> &Homomorphism {
        &self.inverse
    }

    pub fn level(&self) -> ValidationLevel {
        self.level
    }

    pub fn apply(&self, w: &Word) -> Result<Word, GroupError> {
        self.forward.apply(w)
    }

    /// The inverse automorphism (swap directions).
    pub fn flipped(&self) -> Automorphism {
        Automorphism {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
            level: self.level,
        }
    }

    /// Composition `other ∘ self`, revalidated.
    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism, GroupError> {
        let f = self.forward.compose(&other.forward)?;
        let i = other.inverse.compose(&self.inverse)?;
        Automorphism::new(f, i)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::finite::FiniteGroupData;

    #[test]
    fn free_sources_are_exact() {
        let f2 = GroupDescriptor::free_group(2);
        let bs = GroupDescriptor::baumslag_solitar(2).unwrap();
        let images = vec![Word::generator(0), Word::generator(1)];
        assert_eq!(
            validate_homomorphism(&f2, &bs, &images).unwrap(),
            ValidationLevel::Exact
        );
    }

    #[test]
    fn abelianized_check_rejects() {
        let bs = GroupDescriptor::baumslag_solitar(2).unwrap();
        // a -> t, t -> t: kills nothing; relator image has t-exponent -1.
        let images = vec![Word::generator(1), Word::generator(1)];
        let err = validate_homomorphism(&bs, &bs, &images).unwrap_err();
        assert!(matches!(err, GroupError::NotAHomomorphism { .. }));
    }

    #[test]
    fn exact_check_rejects_beyond_abelianization() {
        let bs = GroupDescriptor::baumslag_solitar(2).unwrap();
        // a -> a, t -> a: abelianized obstruction vanishes but the relator
        // image is a^-1.
        let images = vec![Word::generator(0), Word::generator(0)];
        let err = validate_homomorphism(&bs, &bs, &images).unwrap_err();
        match err {
            GroupError::NotAHomomorphism { detail, .. } => {
                assert!(detail.contains("normal form"))
            }
            e => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn endomorphisms_of_the_ascending_family() {
        let bs = GroupDescriptor::baumslag_solitar(2).unwrap();
        // a -> a^2, t -> t is a (non-surjective) endomorphism.
        let images = vec![Word::letter(0, 2), Word::generator(1)];
        assert_eq!(
            validate_homomorphism(&bs, &bs, &images).unwrap(),
            ValidationLevel::Exact
        );
    }

    #[test]
    fn one_relator_rotation_test() {
        let names = vec!["a".to_string(), "b".to_string()];
        let rel = crate::groups::word::parse_word(
            &["b".into(), "a".into(), "b^-1".into(), "a".into()],
            &names,
        )
        .unwrap();
        let klein =
            GroupDescriptor::finite_presentation(names, vec![rel]).unwrap();
        let id = Homomorphism::identity(&klein).unwrap();
        assert_eq!(id.level(), ValidationLevel::Exact);

        // a -> a^-1, b -> b conjugates the relator to a rotation of itself.
        let images = vec![Word::letter(0, -1), Word::generator(1)];
        assert_eq!(
            validate_homomorphism(&klein, &klein, &images).unwrap(),
            ValidationLevel::Exact
        );
    }

    #[test]
    fn multi_relator_target_degrades_to_abelianized() {
        let f = GroupDescriptor::thompson_f();
        let id_images = vec![Word::generator(0), Word::generator(1)];
        assert_eq!(
            validate_homomorphism(&f, &f, &id_images).unwrap(),
            ValidationLevel::AbelianizedOnly
        );
    }

    #[test]
    fn finite_group_maps_are_exact() {
        let s3 = GroupDescriptor::finite(FiniteGroupData::symmetric(3).unwrap());
        let data = FiniteGroupData::symmetric(3).unwrap();
        // Conjugation by s: g -> s g s^-1.
        let s = data.element_index("s").unwrap();
        let images: Vec<Word> = (0..data.order())
            .map(|g| {
                let c = data.conj(s, g);
                if c == data.identity() {
                    Word::identity()
                } else {
                    Word::generator(c)
                }
            })
            .collect();
        assert_eq!(
            validate_homomorphism(&s3, &s3, &images).unwrap(),
            ValidationLevel::Exact
        );
    }

    #[test]
    fn automorphism_inverse_is_verified() {
        let z2 = GroupDescriptor::free_abelian(2);
        // [[1,1],[0,1]]: a -> a, b -> a b; inverse b -> a^-1 b.
        let fwd = vec![
            Word::generator(0),
            Word::from_i64_pairs(&[(0, 1), (1, 1)]),
        ];
        let inv = vec![
            Word::generator(0),
            Word::from_i64_pairs(&[(0, -1), (1, 1)]),
        ];
        let auto = Automorphism::from_images(&z2, fwd.clone(), inv).unwrap();
        assert_eq!(auto.level(), ValidationLevel::Exact);

        let bad_inv = vec![
            Word::generator(0),
            Word::from_i64_pairs(&[(0, 1), (1, 1)]),
        ];
        assert!(Automorphism::from_images(&z2, fwd, bad_inv).is_err());
    }

    #[test]
    fn baumslag_solitar_mirror_automorphism() {
        let bs = GroupDescriptor::baumslag_solitar(2).unwrap();
        let fwd = vec![Word::letter(0, -1), Word::generator(1)];
        let auto = Automorphism::from_images(&bs, fwd.clone(), fwd).unwrap();
        assert_eq!(auto.level(), ValidationLevel::Exact);

        // a -> a, t -> t a: inverse t -> t a^-1.
        let fwd = vec![
            Word::generator(0),
            Word::from_i64_pairs(&[(1, 1), (0, 1)]),
        ];
        let inv = vec![
            Word::generator(0),
            Word::from_i64_pairs(&[(1, 1), (0, -1)]),
        ];
        let auto = Automorphism::from_images(&bs, fwd, inv).unwrap();
        assert_eq!(auto.level(), ValidationLevel::Exact);
    }

    #[test]
    fn composition_revalidates() {
        let z2 = GroupDescriptor::free_abelian(2);
        let shear = Automorphism::from_images(
            &z2,
            vec![Word::generator(0), Word::from_i64_pairs(&[(0, 1), (1, 1)])],
            vec![Word::generator(0), Word::from_i64_pairs(&[(0, -1), (1, 1)])],
        )
        .unwrap();
        let twice = shear.compose(&shear).unwrap();
        let m = twice.forward().generator_exponent_matrix().unwrap();
        assert_eq!(m.get(0, 1), &BigInt::from(2));
    }

    #[test]
    fn induced_free_map_uses_free_coordinates() {
        // Lamplighter source: only the shift survives rationally.
        let l = GroupDescriptor::lamplighter(5).unwrap();
        let z = GroupDescriptor::free_abelian(1);
        let h = Homomorphism::new(
            l.clone(),
            z,
            vec![Word::identity(), Word::generator(0)],
        )
        .unwrap();
        assert_eq!(h.level(), ValidationLevel::AbelianizedOnly);
        let m = h.induced_free_map().unwrap();
        assert_eq!(m.rows(), 1);
        assert_eq!(m.cols(), 1);
        assert_eq!(m.get(0, 0), &BigInt::from(1));
    }
}
