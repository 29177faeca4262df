//! Group descriptors: the families the library understands, their
//! presentations, abelianizations, and the JSON wire format.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::finite::FiniteGroupData;
use super::hom::{validate_homomorphism, Homomorphism, ValidationLevel};
use super::word::{parse_word, render_word, Word};
use super::GroupError;
use crate::zlinalg::{cokernel_structure, AbelianStructure, IntMatrix};

/// Name for the `i`-th generator in families without explicit names.
pub(crate) fn letter_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("x{i}")
    }
}

/// Opaque family labels for groups entering only through asserted properties:
/// divisible groups, torsion groups, finitely generated acyclic groups, and
/// finite-index subgroups of products of irreducible higher-rank lattices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyTag {
    Divisible,
    Torsion,
    Acyclic,
    HigherRankLattice,
}

/// The shape of a user-supplied property assertion.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum AssertionKind {
    /// Every homomorphism from `source` to `target` is trivial.
    HomsTrivial { source: String, target: String },
    /// The commutator subgroup contains an infinite simple group of finite
    /// index (forces first-Betti-number stability for all finite-index
    /// subgroups).
    CommutatorContainsFiniteIndexInfiniteSimple,
    /// Every finite-index subgroup has the same first Betti number as the
    /// whole group.
    B1StableAllFiniteIndex,
    /// Membership in one of the opaque group families.
    ClassTag { family: FamilyTag },
    /// In a semidirect decomposition, the finite quotient acts by inner
    /// automorphisms of the kernel.
    ThetaImageInner,
    /// The transversal conjugations lie in the center of the outer
    /// automorphism group of the kernel.
    CentralInOut,
}

/// A property the user vouches for, with their justification. Assertions are
/// inputs, never derived; certificates list every assertion they consume.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PropertyAssertion {
    #[serde(flatten)]
    pub kind: AssertionKind,
    pub justification: String,
}

/// Builtin groups that enter through known invariants rather than a
/// computable word problem.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Builtin {
    /// Thompson's group F: two generators, two commutator relators,
    /// first Betti number 2.
    ThompsonF,
    /// The wreath product of a finite cyclic group of order `modulus` with
    /// the integers.
    Lamplighter { modulus: u64 },
}

/// A group descriptor: a structural variant plus user assertions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawGroupDescriptor", into = "RawGroupDescriptor")]
pub struct GroupDescriptor {
    kind: GroupKind,
    assertions: Vec<PropertyAssertion>,
}

/// The structural variants.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum GroupKind {
    FinitePresentation {
        generators: Vec<String>,
        relators: Vec<Word>,
    },
    FreeGroup {
        rank: usize,
    },
    /// `Z^rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_s` with `2 <= d_1 | d_2 | ... | d_s`.
    /// Generators: free ones first, then one per torsion factor.
    FinitelyGeneratedAbelian {
        rank: usize,
        torsion: Vec<BigInt>,
    },
    /// `<a, t | t a t^-1 = a^n>`, `n >= 2`.
    BaumslagSolitar1n {
        n: u64,
    },
    /// For `n = p_1^{y_1} ... p_r^{y_r}` with distinct primes:
    /// `<a, t_1..t_r | [t_i,t_j], t_i a t_i^-1 = a^{p_i^{y_i}}>`,
    /// isomorphic to `Z[1/n] ⋊ Z^r` with the `i`-th factor acting by
    /// multiplication by `p_i^{y_i}`.
    GammaN {
        n: u64,
    },
    FiniteGroup(FiniteGroupData),
    DirectProduct(Vec<GroupDescriptor>),
    FreeProduct(Vec<GroupDescriptor>),
    FiniteExtension(FiniteExtensionData),
    /// A quotient of an ambient group (named by a label only) by a
    /// characteristic subgroup; computations happen on the quotient.
    CharacteristicQuotient {
        ambient: String,
        quotient: Box<GroupDescriptor>,
        justification: String,
    },
    Builtin(Builtin),
    /// A group with no computable structure; usable only as an assertion
    /// carrier (e.g. a product factor whose role is property-theoretic).
    Abstract {
        label: String,
    },
}

/// An extension `1 -> H -> G -> K -> 1` with finite quotient `K`, presented
/// by a transversal, conjugation data and a factor set.
///
/// `G` is generated by the generators of `H` together with one letter per
/// non-identity element of `K` (named by that element). The transversal
/// `ν : K -> G` has `ν(1) = 1`; `conjugation[q][h] = ν(q)^-1 h ν(q)` as a
/// word in the generators of `H` (defining `α_q ∈ Aut(H)`); and
/// `cocycle[q][q']` is the `H`-word `c` with `ν(q)ν(q') = ν(qq')·c`. Together
/// these pin down a presentation of `G`: the relators of `H`, the
/// conjugation relators, and the transversal multiplication relators.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FiniteExtensionData {
    kernel: Box<GroupDescriptor>,
    quotient: FiniteGroupData,
    /// Indexed by quotient element; words over the `G`-generators.
    transversal: Vec<Word>,
    /// `[q][kernel generator]`, words over the kernel generators.
    conjugation: Vec<Vec<Word>>,
    /// `[q][q']`, words over the kernel generators.
    cocycle: Vec<Vec<Word>>,
    /// Validation level obtained for each `α_q`.
    alpha_levels: Vec<ValidationLevel>,
}

impl FiniteExtensionData {
    pub fn new(
        kernel: GroupDescriptor,
        quotient: FiniteGroupData,
        transversal: Vec<Word>,
        conjugation: Vec<Vec<Word>>,
        cocycle: Vec<Vec<Word>>,
    ) -> Result<Self, GroupError> {
        let k = quotient.order();
        let kernel_names = kernel.generator_names();
        let kn = kernel_names.len();
        for q in 0..k {
            let name = &quotient.element_names()[q];
            if q != quotient.identity() && kernel_names.contains(name) {
                return Err(GroupError::InconsistentExtension(format!(
                    "quotient element `{name}` collides with a kernel generator"
                )));
            }
        }
        let g_ngens = kn + k - 1;
        if transversal.len() != k {
            return Err(GroupError::InconsistentExtension(format!(
                "transversal has {} entries for a quotient of order {k}",
                transversal.len()
            )));
        }
        if !transversal[quotient.identity()].is_identity() {
            return Err(GroupError::InconsistentExtension(
                "transversal of the identity must be the empty word".into(),
            ));
        }
        for (q, w) in transversal.iter().enumerate() {
            if let Some(m) = w.max_gen() {
                if m >= g_ngens {
                    return Err(GroupError::InconsistentExtension(format!(
                        "transversal word for element {q} uses generator index {m} out of range"
                    )));
                }
            }
        }
        if conjugation.len() != k || cocycle.len() != k {
            return Err(GroupError::InconsistentExtension(
                "conjugation and cocycle tables must have one row per quotient element".into(),
            ));
        }
        for (q, row) in conjugation.iter().enumerate() {
            if row.len() != kn {
                return Err(GroupError::InconsistentExtension(format!(
                    "conjugation row {q} has {} entries for {kn} kernel generators",
                    row.len()
                )));
            }
            for (h, w) in row.iter().enumerate() {
                if w.max_gen().is_some_and(|m| m >= kn) {
                    return Err(GroupError::InconsistentExtension(format!(
                        "conjugation word for ({q},{h}) leaves the kernel generators"
                    )));
                }
            }
            if q == quotient.identity() {
                for (h, w) in row.iter().enumerate() {
                    if *w != Word::generator(h) {
                        return Err(GroupError::InconsistentExtension(
                            "conjugation by the identity must fix each kernel generator".into(),
                        ));
                    }
                }
            }
        }
        for (q, row) in cocycle.iter().enumerate() {
            if row.len() != k {
                return Err(GroupError::InconsistentExtension(format!(
                    "cocycle row {q} has {} entries for a quotient of order {k}",
                    row.len()
                )));
            }
            for (q2, w) in row.iter().enumerate() {
                if w.max_gen().is_some_and(|m| m >= kn) {
                    return Err(GroupError::InconsistentExtension(format!(
                        "cocycle word for ({q},{q2}) leaves the kernel generators"
                    )));
                }
                if (q == quotient.identity() || q2 == quotient.identity()) && !w.is_identity() {
                    return Err(GroupError::InconsistentExtension(
                        "cocycle entries involving the identity must be trivial".into(),
                    ));
                }
            }
        }
        let mut alpha_levels = Vec::with_capacity(k);
        for (q, row) in conjugation.iter().enumerate() {
            let level =
                validate_homomorphism(&kernel, &kernel, row).map_err(|e| {
                    GroupError::InconsistentExtension(format!(
                        "conjugation by element {q} is not an endomorphism of the kernel: {e}"
                    ))
                })?;
            alpha_levels.push(level);
        }
        if matches!(kernel.kind(), GroupKind::FinitelyGeneratedAbelian { .. }) {
            // Conjugation must be invertible; on an abelian kernel that is
            // visible on the free part of the abelianization.
            for (q, row) in conjugation.iter().enumerate() {
                let hom = Homomorphism::new(kernel.clone(), kernel.clone(), row.clone())?;
                let m = hom.induced_free_map()?;
                if m.rows() != m.cols() || !m.is_unimodular() {
                    return Err(GroupError::InconsistentExtension(format!(
                        "conjugation by element {q} is not invertible on the kernel"
                    )));
                }
            }
        }
        Ok(FiniteExtensionData {
            kernel: Box::new(kernel),
            quotient,
            transversal,
            conjugation,
            cocycle,
            alpha_levels,
        })
    }

    pub fn kernel(&self) -> &GroupDescriptor {
        &self.kernel
    }

    pub fn quotient(&self) -> &FiniteGroupData {
        &self.quotient
    }

    pub fn transversal(&self) -> &[Word] {
        &self.transversal
    }

    pub fn conjugation(&self) -> &[Vec<Word>] {
        &self.conjugation
    }

    pub fn cocycle(&self) -> &[Vec<Word>] {
        &self.cocycle
    }

    pub fn alpha_levels(&self) -> &[ValidationLevel] {
        &self.alpha_levels
    }

    /// Generator names of the total group: kernel generators, then one
    /// letter per non-identity quotient element.
    pub fn g_generator_names(&self) -> Vec<String> {
        let mut names = self.kernel.generator_names();
        for (q, name) in self.quotient.element_names().iter().enumerate() {
            if q != self.quotient.identity() {
                names.push(name.clone());
            }
        }
        names
    }

    /// Non-identity quotient elements in index order.
    pub fn non_identity_elements(&self) -> Vec<usize> {
        (0..self.quotient.order())
            .filter(|&q| q != self.quotient.identity())
            .collect()
    }

    /// Index of the extension letter of a non-identity quotient element
    /// among the total group's generators.
    pub fn ext_letter_index(&self, q: usize) -> Option<usize> {
        let kn = self.kernel.generator_names().len();
        self.non_identity_elements()
            .iter()
            .position(|&x| x == q)
            .map(|p| kn + p)
    }

    /// Relators of the total group presentation.
    pub fn relators(&self) -> Result<Vec<Word>, GroupError> {
        let mut rels = self.kernel.relators()?;
        let ident = self.quotient.identity();
        for q in 0..self.quotient.order() {
            if q == ident {
                continue;
            }
            let nu_q = &self.transversal[q];
            for (h, w) in self.conjugation[q].iter().enumerate() {
                // ν(q)^-1 h ν(q) w^-1
                rels.push(
                    nu_q.inverse()
                        .mul(&Word::generator(h))
                        .mul(nu_q)
                        .mul(&w.inverse()),
                );
            }
        }
        for q in 0..self.quotient.order() {
            for q2 in 0..self.quotient.order() {
                if q == ident || q2 == ident {
                    continue;
                }
                let prod = self.quotient.mul(q, q2);
                // ν(q) ν(q') c^-1 ν(q q')^-1
                rels.push(
                    self.transversal[q]
                        .mul(&self.transversal[q2])
                        .mul(&self.cocycle[q][q2].inverse())
                        .mul(&self.transversal[prod].inverse()),
                );
            }
        }
        Ok(rels)
    }
}

impl GroupDescriptor {
    fn from_kind(kind: GroupKind) -> Self {
        GroupDescriptor {
            kind,
            assertions: Vec::new(),
        }
    }

    pub fn with_assertions(mut self, assertions: Vec<PropertyAssertion>) -> Self {
        self.assertions = assertions;
        self
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    pub fn assertions(&self) -> &[PropertyAssertion] {
        &self.assertions
    }

    /// Look up an assertion of the given shape (ignoring justification).
    pub fn find_assertion(&self, pred: impl Fn(&AssertionKind) -> bool) -> Option<&PropertyAssertion> {
        self.assertions.iter().find(|a| pred(&a.kind))
    }

    pub fn finite_presentation(
        generators: Vec<String>,
        relators: Vec<Word>,
    ) -> Result<Self, GroupError> {
        for (i, g) in generators.iter().enumerate() {
            if g.is_empty() || g.contains('^') || g.chars().any(char::is_whitespace) {
                return Err(GroupError::InvalidParameter(format!(
                    "generator name `{g}` is empty or contains `^`/whitespace"
                )));
            }
            if generators[..i].contains(g) {
                return Err(GroupError::InvalidParameter(format!(
                    "duplicate generator name `{g}`"
                )));
            }
        }
        for r in &relators {
            if r.max_gen().is_some_and(|m| m >= generators.len()) {
                return Err(GroupError::GeneratorIndex {
                    index: r.max_gen().unwrap(),
                    count: generators.len(),
                });
            }
        }
        Ok(GroupDescriptor::from_kind(GroupKind::FinitePresentation {
            generators,
            relators,
        }))
    }

    pub fn free_group(rank: usize) -> Self {
        GroupDescriptor::from_kind(GroupKind::FreeGroup { rank })
    }

    pub fn free_abelian(rank: usize) -> Self {
        GroupDescriptor::from_kind(GroupKind::FinitelyGeneratedAbelian {
            rank,
            torsion: Vec::new(),
        })
    }

    pub fn abelian(rank: usize, torsion: Vec<BigInt>) -> Result<Self, GroupError> {
        for (i, d) in torsion.iter().enumerate() {
            if d < &BigInt::from(2) {
                return Err(GroupError::InvalidParameter(format!(
                    "torsion invariant factor {d} must be at least 2"
                )));
            }
            if i > 0 && !(d % &torsion[i - 1]).is_zero() {
                return Err(GroupError::InvalidParameter(format!(
                    "invariant factors must form a divisibility chain: {} does not divide {d}",
                    torsion[i - 1]
                )));
            }
        }
        Ok(GroupDescriptor::from_kind(GroupKind::FinitelyGeneratedAbelian { rank, torsion }))
    }

    pub fn baumslag_solitar(n: u64) -> Result<Self, GroupError> {
        if n < 2 {
            return Err(GroupError::InvalidParameter(format!(
                "the soluble Baumslag-Solitar family needs n >= 2, got {n}"
            )));
        }
        Ok(GroupDescriptor::from_kind(GroupKind::BaumslagSolitar1n { n }))
    }

    pub fn gamma(n: u64) -> Result<Self, GroupError> {
        if n < 2 {
            return Err(GroupError::InvalidParameter(format!(
                "the multi-prime family needs n >= 2, got {n}"
            )));
        }
        Ok(GroupDescriptor::from_kind(GroupKind::GammaN { n }))
    }

    pub fn finite(data: FiniteGroupData) -> Self {
        GroupDescriptor::from_kind(GroupKind::FiniteGroup(data))
    }

    pub fn direct_product(factors: Vec<GroupDescriptor>) -> Result<Self, GroupError> {
        if factors.is_empty() {
            return Err(GroupError::InvalidParameter(
                "a direct product needs at least one factor".into(),
            ));
        }
        Ok(GroupDescriptor::from_kind(GroupKind::DirectProduct(factors)))
    }

    pub fn free_product(factors: Vec<GroupDescriptor>) -> Result<Self, GroupError> {
        if factors.is_empty() {
            return Err(GroupError::InvalidParameter(
                "a free product needs at least one factor".into(),
            ));
        }
        Ok(GroupDescriptor::from_kind(GroupKind::FreeProduct(factors)))
    }

    pub fn extension(data: FiniteExtensionData) -> Self {
        GroupDescriptor::from_kind(GroupKind::FiniteExtension(data))
    }

    pub fn characteristic_quotient(
        ambient: impl Into<String>,
        quotient: GroupDescriptor,
        justification: impl Into<String>,
    ) -> Self {
        GroupDescriptor::from_kind(GroupKind::CharacteristicQuotient {
            ambient: ambient.into(),
            quotient: Box::new(quotient),
            justification: justification.into(),
        })
    }

    pub fn thompson_f() -> Self {
        GroupDescriptor::from_kind(GroupKind::Builtin(Builtin::ThompsonF))
    }

    pub fn lamplighter(modulus: u64) -> Result<Self, GroupError> {
        if modulus < 2 {
            return Err(GroupError::InvalidParameter(format!(
                "the lamplighter family needs modulus >= 2, got {modulus}"
            )));
        }
        Ok(GroupDescriptor::from_kind(GroupKind::Builtin(Builtin::Lamplighter { modulus })))
    }

    pub fn abstract_group(label: impl Into<String>) -> Self {
        GroupDescriptor::from_kind(GroupKind::Abstract { label: label.into() })
    }

    /// Distinct prime factorization `p_1^{y_1} ... p_r^{y_r}` of a
    /// multi-prime parameter, ascending in `p`.
    pub fn factorize(n: u64) -> Vec<(u64, u32)> {
        let mut n = n;
        let mut out = Vec::new();
        let mut p = 2u64;
        while p * p <= n {
            if n.is_multiple_of(p) {
                let mut y = 0u32;
                while n.is_multiple_of(p) {
                    n /= p;
                    y += 1;
                }
                out.push((p, y));
            }
            p += 1;
        }
        if n > 1 {
            out.push((n, 1));
        }
        out
    }

    /// Generator names, in the fixed order the rest of the library uses.
    pub fn generator_names(&self) -> Vec<String> {
        match &self.kind {
            GroupKind::FinitePresentation { generators, .. } => generators.clone(),
            GroupKind::FreeGroup { rank } => (0..*rank).map(letter_name).collect(),
            GroupKind::FinitelyGeneratedAbelian { rank, torsion } => {
                (0..rank + torsion.len()).map(letter_name).collect()
            }
            GroupKind::BaumslagSolitar1n { .. } => vec!["a".into(), "t".into()],
            GroupKind::GammaN { n } => {
                let r = GroupDescriptor::factorize(*n).len();
                let mut names = vec!["a".to_string()];
                names.extend((1..=r).map(|i| format!("t{i}")));
                names
            }
            GroupKind::FiniteGroup(data) => data.element_names().to_vec(),
            GroupKind::DirectProduct(factors) | GroupKind::FreeProduct(factors) => {
                let mut names = Vec::new();
                for (k, f) in factors.iter().enumerate() {
                    for n in f.generator_names() {
                        names.push(format!("p{}_{n}", k + 1));
                    }
                }
                names
            }
            GroupKind::FiniteExtension(data) => data.g_generator_names(),
            GroupKind::CharacteristicQuotient { quotient, .. } => quotient.generator_names(),
            GroupKind::Builtin(Builtin::ThompsonF) => vec!["x0".into(), "x1".into()],
            GroupKind::Builtin(Builtin::Lamplighter { .. }) => vec!["a".into(), "t".into()],
            GroupKind::Abstract { .. } => Vec::new(),
        }
    }

    pub fn ngens(&self) -> usize {
        self.generator_names().len()
    }

    /// Defining relators as explicit words, for families with a finite
    /// presentation the library knows completely.
    pub fn relators(&self) -> Result<Vec<Word>, GroupError> {
        match &self.kind {
            GroupKind::FinitePresentation { relators, .. } => Ok(relators.clone()),
            GroupKind::FreeGroup { .. } => Ok(Vec::new()),
            GroupKind::FinitelyGeneratedAbelian { rank, torsion } => {
                let n = rank + torsion.len();
                let mut rels = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        rels.push(Word::commutator(&Word::generator(i), &Word::generator(j)));
                    }
                }
                for (i, d) in torsion.iter().enumerate() {
                    rels.push(Word::letter(rank + i, d.clone()));
                }
                Ok(rels)
            }
            GroupKind::BaumslagSolitar1n { n } => {
                // t a t^-1 a^-n
                Ok(vec![Word::from_pairs(vec![
                    (1, BigInt::one()),
                    (0, BigInt::one()),
                    (1, -BigInt::one()),
                    (0, -BigInt::from(*n)),
                ])])
            }
            GroupKind::GammaN { n } => {
                let factors = GroupDescriptor::factorize(*n);
                let r = factors.len();
                let mut rels = Vec::new();
                for i in 0..r {
                    for j in i + 1..r {
                        rels.push(Word::commutator(
                            &Word::generator(1 + i),
                            &Word::generator(1 + j),
                        ));
                    }
                }
                for (i, (p, y)) in factors.iter().enumerate() {
                    let m = BigInt::from(*p).pow(*y);
                    rels.push(Word::from_pairs(vec![
                        (1 + i, BigInt::one()),
                        (0, BigInt::one()),
                        (1 + i, -BigInt::one()),
                        (0, -m),
                    ]));
                }
                Ok(rels)
            }
            GroupKind::FiniteGroup(data) => {
                let n = data.order();
                let mut rels = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        let k = data.mul(i, j);
                        // i j k^-1
                        rels.push(Word::from_pairs(vec![
                            (i, BigInt::one()),
                            (j, BigInt::one()),
                            (k, -BigInt::one()),
                        ]));
                    }
                }
                Ok(rels)
            }
            GroupKind::DirectProduct(factors) => {
                let mut rels = Vec::new();
                let offsets = factor_offsets(factors);
                for (k, f) in factors.iter().enumerate() {
                    let off = offsets[k];
                    for r in f.relators()? {
                        rels.push(r.map_gens(|g| g + off));
                    }
                }
                for (k1, f1) in factors.iter().enumerate() {
                    for k2 in k1 + 1..factors.len() {
                        for i in 0..f1.ngens() {
                            for j in 0..factors[k2].ngens() {
                                rels.push(Word::commutator(
                                    &Word::generator(offsets[k1] + i),
                                    &Word::generator(offsets[k2] + j),
                                ));
                            }
                        }
                    }
                }
                Ok(rels)
            }
            GroupKind::FreeProduct(factors) => {
                let mut rels = Vec::new();
                let offsets = factor_offsets(factors);
                for (k, f) in factors.iter().enumerate() {
                    for r in f.relators()? {
                        rels.push(r.map_gens(|g| g + offsets[k]));
                    }
                }
                Ok(rels)
            }
            GroupKind::FiniteExtension(data) => data.relators(),
            GroupKind::CharacteristicQuotient { quotient, .. } => quotient.relators(),
            GroupKind::Builtin(Builtin::ThompsonF) => {
                // [x0 x1^-1, x0^-1 x1 x0] and [x0 x1^-1, x0^-2 x1 x0^2]
                let u = Word::from_i64_pairs(&[(0, 1), (1, -1)]);
                let v1 = Word::from_i64_pairs(&[(0, -1), (1, 1), (0, 1)]);
                let v2 = Word::from_i64_pairs(&[(0, -2), (1, 1), (0, 2)]);
                Ok(vec![Word::commutator(&u, &v1), Word::commutator(&u, &v2)])
            }
            GroupKind::Builtin(Builtin::Lamplighter { .. }) => Err(GroupError::UnsupportedFamily(
                "the lamplighter family has no finite presentation on its two generators".into(),
            )),
            GroupKind::Abstract { label } => Err(GroupError::UnsupportedFamily(format!(
                "abstract group `{label}` has no presentation data"
            ))),
        }
    }

    /// Relation matrix presenting the abelianization: one column per
    /// defining relator, rows indexed by generators. Available for some
    /// families whose full relator list is not (their abelianization is
    /// still known exactly).
    pub fn relation_matrix(&self) -> Result<IntMatrix, GroupError> {
        match &self.kind {
            GroupKind::Builtin(Builtin::Lamplighter { modulus }) => {
                let mut m = IntMatrix::zero(2, 1);
                m.set(0, 0, BigInt::from(*modulus));
                Ok(m)
            }
            GroupKind::DirectProduct(factors) | GroupKind::FreeProduct(factors) => {
                // Block diagonal: cross relators abelianize to zero anyway.
                let offsets = factor_offsets(factors);
                let total: usize = self.ngens();
                let blocks: Vec<IntMatrix> = factors
                    .iter()
                    .map(|f| f.relation_matrix())
                    .collect::<Result<_, _>>()?;
                let cols: usize = blocks.iter().map(|b| b.cols()).sum();
                let mut m = IntMatrix::zero(total, cols);
                let mut c0 = 0usize;
                for (k, b) in blocks.iter().enumerate() {
                    for i in 0..b.rows() {
                        for j in 0..b.cols() {
                            m.set(offsets[k] + i, c0 + j, b.get(i, j).clone());
                        }
                    }
                    c0 += b.cols();
                }
                Ok(m)
            }
            GroupKind::CharacteristicQuotient { quotient, .. } => quotient.relation_matrix(),
            _ => {
                let ngens = self.ngens();
                let rels = self.relators()?;
                let mut m = IntMatrix::zero(ngens, rels.len());
                for (j, r) in rels.iter().enumerate() {
                    for (i, e) in r.exponent_sums(ngens)?.into_iter().enumerate() {
                        m.set(i, j, e);
                    }
                }
                Ok(m)
            }
        }
    }

    /// Structure of the abelianization, with coordinate maps from the
    /// generator basis.
    pub fn abelianization(&self) -> Result<AbelianStructure, GroupError> {
        Ok(cokernel_structure(&self.relation_matrix()?))
    }

    /// First Betti number: the free rank of the abelianization.
    pub fn b1(&self) -> Result<usize, GroupError> {
        Ok(self.abelianization()?.free_rank())
    }

    /// Whether `normal_form` supports this family.
    pub fn supports_normal_forms(&self) -> bool {
        match &self.kind {
            GroupKind::FreeGroup { .. }
            | GroupKind::FinitelyGeneratedAbelian { .. }
            | GroupKind::BaumslagSolitar1n { .. }
            | GroupKind::GammaN { .. }
            | GroupKind::FiniteGroup(_) => true,
            GroupKind::DirectProduct(factors) => {
                factors.iter().all(GroupDescriptor::supports_normal_forms)
            }
            GroupKind::CharacteristicQuotient { quotient, .. } => quotient.supports_normal_forms(),
            _ => false,
        }
    }

    /// Whether the group is known to be nontrivial (`None` when undecided).
    pub fn is_known_nontrivial(&self) -> Option<bool> {
        match &self.kind {
            GroupKind::FreeGroup { rank } => Some(*rank > 0),
            GroupKind::FinitelyGeneratedAbelian { rank, torsion } => {
                Some(*rank > 0 || !torsion.is_empty())
            }
            GroupKind::BaumslagSolitar1n { .. }
            | GroupKind::GammaN { .. }
            | GroupKind::Builtin(_) => Some(true),
            GroupKind::FiniteGroup(data) => Some(data.order() > 1),
            GroupKind::DirectProduct(factors) | GroupKind::FreeProduct(factors) => {
                let flags: Vec<Option<bool>> =
                    factors.iter().map(GroupDescriptor::is_known_nontrivial).collect();
                if flags.contains(&Some(true)) {
                    Some(true)
                } else if flags.iter().all(|f| *f == Some(false)) {
                    Some(false)
                } else {
                    None
                }
            }
            GroupKind::FiniteExtension(data) => {
                if data.quotient().order() > 1 || data.kernel().is_known_nontrivial() == Some(true) {
                    Some(true)
                } else {
                    data.kernel().is_known_nontrivial()
                }
            }
            GroupKind::CharacteristicQuotient { quotient, .. } => quotient.is_known_nontrivial(),
            GroupKind::FinitePresentation { generators, relators } => {
                if generators.is_empty() {
                    Some(false)
                } else if relators.is_empty() {
                    Some(true)
                } else {
                    match self.abelianization() {
                        Ok(ab) if ab.free_rank() > 0 || !ab.torsion().is_empty() => Some(true),
                        _ => None,
                    }
                }
            }
            GroupKind::Abstract { .. } => None,
        }
    }

    /// A short human-readable label for reports.
    pub fn describe(&self) -> String {
        match &self.kind {
            GroupKind::FinitePresentation { generators, relators } => format!(
                "finite presentation with {} generators and {} relators",
                generators.len(),
                relators.len()
            ),
            GroupKind::FreeGroup { rank } => format!("free group of rank {rank}"),
            GroupKind::FinitelyGeneratedAbelian { rank, torsion } => {
                if torsion.is_empty() {
                    format!("free abelian group of rank {rank}")
                } else {
                    let t: Vec<String> = torsion.iter().map(|d| d.to_string()).collect();
                    format!("abelian group of rank {rank} with torsion [{}]", t.join(", "))
                }
            }
            GroupKind::BaumslagSolitar1n { n } => format!("BS(1,{n})"),
            GroupKind::GammaN { n } => format!("Z[1/{n}] extension by Z^r"),
            GroupKind::FiniteGroup(data) => format!("finite group of order {}", data.order()),
            GroupKind::DirectProduct(factors) => format!(
                "direct product of {} factors",
                factors.len()
            ),
            GroupKind::FreeProduct(factors) => format!("free product of {} factors", factors.len()),
            GroupKind::FiniteExtension(data) => format!(
                "extension of a kernel by a finite group of order {}",
                data.quotient().order()
            ),
            GroupKind::CharacteristicQuotient { ambient, .. } => {
                format!("characteristic quotient of {ambient}")
            }
            GroupKind::Builtin(Builtin::ThompsonF) => "Thompson's group F".into(),
            GroupKind::Builtin(Builtin::Lamplighter { modulus }) => {
                format!("lamplighter group Z/{modulus} wr Z")
            }
            GroupKind::Abstract { label } => format!("abstract group {label}"),
        }
    }
}

/// Generator index offset of each factor in a product descriptor.
pub(crate) fn factor_offsets(factors: &[GroupDescriptor]) -> Vec<usize> {
    let mut offsets = Vec::with_capacity(factors.len());
    let mut acc = 0usize;
    for f in factors {
        offsets.push(acc);
        acc += f.ngens();
    }
    offsets
}

/// Parse a descriptor document (JSON) into a validated descriptor.
pub fn parse_group(text: &str) -> Result<GroupDescriptor, GroupError> {
    serde_json::from_str(text).map_err(|e| GroupError::Syntax(e.to_string()))
}

// ---------------------------------------------------------------------------
// Wire format
// ---------------------------------------------------------------------------

#[derive(Clone, Serialize, Deserialize)]
struct RawGroupDescriptor {
    #[serde(flatten)]
    kind: RawKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    assertions: Vec<PropertyAssertion>,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(tag = "kind")]
enum RawKind {
    FinitePresentation {
        generators: Vec<String>,
        relators: Vec<Vec<String>>,
    },
    FreeGroup {
        rank: usize,
    },
    FinitelyGeneratedAbelian {
        rank: usize,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        torsion: Vec<String>,
    },
    BaumslagSolitar1n {
        n: u64,
    },
    GammaN {
        n: u64,
    },
    FiniteGroup {
        elements: Vec<String>,
        table: Vec<Vec<usize>>,
    },
    DirectProduct {
        factors: Vec<RawGroupDescriptor>,
    },
    FreeProduct {
        factors: Vec<RawGroupDescriptor>,
    },
    FiniteExtension {
        kernel: Box<RawGroupDescriptor>,
        quotient: Box<RawGroupDescriptor>,
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        transversal: BTreeMap<String, Vec<String>>,
        conjugation: BTreeMap<String, BTreeMap<String, Vec<String>>>,
        #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
        cocycle: BTreeMap<String, BTreeMap<String, Vec<String>>>,
    },
    CharacteristicQuotient {
        ambient: String,
        quotient: Box<RawGroupDescriptor>,
        justification: String,
    },
    Builtin {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        n: Option<u64>,
    },
    Abstract {
        label: String,
    },
}

impl TryFrom<RawGroupDescriptor> for GroupDescriptor {
    type Error = GroupError;

    fn try_from(raw: RawGroupDescriptor) -> Result<Self, Self::Error> {
        let desc = match raw.kind {
            RawKind::FinitePresentation { generators, relators } => {
                let words = relators
                    .iter()
                    .map(|toks| parse_word(toks, &generators))
                    .collect::<Result<Vec<_>, _>>()?;
                GroupDescriptor::finite_presentation(generators, words)?
            }
            RawKind::FreeGroup { rank } => GroupDescriptor::free_group(rank),
            RawKind::FinitelyGeneratedAbelian { rank, torsion } => {
                let torsion = torsion
                    .iter()
                    .map(|s| {
                        crate::jsonnum::parse_int(s).map_err(GroupError::Syntax)
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                GroupDescriptor::abelian(rank, torsion)?
            }
            RawKind::BaumslagSolitar1n { n } => GroupDescriptor::baumslag_solitar(n)?,
            RawKind::GammaN { n } => GroupDescriptor::gamma(n)?,
            RawKind::FiniteGroup { elements, table } => {
                GroupDescriptor::finite(FiniteGroupData::new(elements, table)?)
            }
            RawKind::DirectProduct { factors } => GroupDescriptor::direct_product(
                factors
                    .into_iter()
                    .map(GroupDescriptor::try_from)
                    .collect::<Result<Vec<_>, _>>()?,
            )?,
            RawKind::FreeProduct { factors } => GroupDescriptor::free_product(
                factors
                    .into_iter()
                    .map(GroupDescriptor::try_from)
                    .collect::<Result<Vec<_>, _>>()?,
            )?,
            RawKind::FiniteExtension {
                kernel,
                quotient,
                transversal,
                conjugation,
                cocycle,
            } => {
                let kernel = GroupDescriptor::try_from(*kernel)?;
                let quotient = match GroupDescriptor::try_from(*quotient)?.kind {
                    GroupKind::FiniteGroup(data) => data,
                    _ => {
                        return Err(GroupError::InconsistentExtension(
                            "extension quotient must be a finite group table".into(),
                        ))
                    }
                };
                let data = build_extension(kernel, quotient, transversal, conjugation, cocycle)?;
                GroupDescriptor::extension(data)
            }
            RawKind::CharacteristicQuotient {
                ambient,
                quotient,
                justification,
            } => GroupDescriptor::characteristic_quotient(
                ambient,
                GroupDescriptor::try_from(*quotient)?,
                justification,
            ),
            RawKind::Builtin { name, n } => match (name.as_str(), n) {
                ("ThompsonF", None) => GroupDescriptor::thompson_f(),
                ("Lamplighter", Some(n)) => GroupDescriptor::lamplighter(n)?,
                ("Lamplighter", None) => {
                    return Err(GroupError::InvalidParameter(
                        "the lamplighter builtin needs a modulus field `n`".into(),
                    ))
                }
                (other, _) => {
                    return Err(GroupError::InvalidParameter(format!(
                        "unknown builtin `{other}`"
                    )))
                }
            },
            RawKind::Abstract { label } => GroupDescriptor::abstract_group(label),
        };
        Ok(desc.with_assertions(raw.assertions))
    }
}

/// Assemble extension data from name-keyed JSON tables.
fn build_extension(
    kernel: GroupDescriptor,
    quotient: FiniteGroupData,
    transversal: BTreeMap<String, Vec<String>>,
    conjugation: BTreeMap<String, BTreeMap<String, Vec<String>>>,
    cocycle: BTreeMap<String, BTreeMap<String, Vec<String>>>,
) -> Result<FiniteExtensionData, GroupError> {
    let kernel_names = kernel.generator_names();
    let k = quotient.order();
    let ident = quotient.identity();
    let mut g_names = kernel_names.clone();
    for (q, name) in quotient.element_names().iter().enumerate() {
        if q != ident {
            g_names.push(name.clone());
        }
    }
    let elem_index = |name: &str| -> Result<usize, GroupError> {
        quotient.element_index(name).ok_or_else(|| {
            GroupError::InconsistentExtension(format!("unknown quotient element `{name}`"))
        })
    };

    let mut trans = vec![Word::identity(); k];
    for (q, slot) in trans.iter_mut().enumerate() {
        if q != ident {
            // default: the extension letter itself
            let letter = kernel_names.len()
                + (0..k).filter(|&x| x != ident && x < q).count();
            *slot = Word::generator(letter);
        }
    }
    for (name, toks) in &transversal {
        let q = elem_index(name)?;
        trans[q] = parse_word(toks, &g_names)?;
    }

    let mut conj = vec![Vec::new(); k];
    conj[ident] = (0..kernel_names.len()).map(Word::generator).collect();
    for (q, slot) in conj.iter_mut().enumerate() {
        if q == ident {
            continue;
        }
        let qname = &quotient.element_names()[q];
        let row = conjugation.get(qname).ok_or_else(|| {
            GroupError::InconsistentExtension(format!(
                "missing conjugation data for quotient element `{qname}`"
            ))
        })?;
        let mut words = Vec::with_capacity(kernel_names.len());
        for hname in &kernel_names {
            let toks = row.get(hname).ok_or_else(|| {
                GroupError::InconsistentExtension(format!(
                    "missing conjugation word for kernel generator `{hname}` under `{qname}`"
                ))
            })?;
            words.push(parse_word(toks, &kernel_names)?);
        }
        *slot = words;
    }

    let mut coc = vec![vec![Word::identity(); k]; k];
    for (n1, row) in &cocycle {
        let q1 = elem_index(n1)?;
        for (n2, toks) in row {
            let q2 = elem_index(n2)?;
            coc[q1][q2] = parse_word(toks, &kernel_names)?;
        }
    }

    FiniteExtensionData::new(kernel, quotient, trans, conj, coc)
}

impl From<GroupDescriptor> for RawGroupDescriptor {
    fn from(desc: GroupDescriptor) -> Self {
        let GroupDescriptor { kind, assertions } = desc;
        let raw_kind = match kind {
            GroupKind::FinitePresentation { generators, relators } => {
                let toks = relators
                    .iter()
                    .map(|w| render_word(w, &generators).expect("validated indices"))
                    .collect();
                RawKind::FinitePresentation {
                    generators,
                    relators: toks,
                }
            }
            GroupKind::FreeGroup { rank } => RawKind::FreeGroup { rank },
            GroupKind::FinitelyGeneratedAbelian { rank, torsion } => {
                RawKind::FinitelyGeneratedAbelian {
                    rank,
                    torsion: torsion.iter().map(|d| d.to_string()).collect(),
                }
            }
            GroupKind::BaumslagSolitar1n { n } => RawKind::BaumslagSolitar1n { n },
            GroupKind::GammaN { n } => RawKind::GammaN { n },
            GroupKind::FiniteGroup(data) => RawKind::FiniteGroup {
                elements: data.element_names().to_vec(),
                table: data.table().to_vec(),
            },
            GroupKind::DirectProduct(factors) => RawKind::DirectProduct {
                factors: factors.into_iter().map(RawGroupDescriptor::from).collect(),
            },
            GroupKind::FreeProduct(factors) => RawKind::FreeProduct {
                factors: factors.into_iter().map(RawGroupDescriptor::from).collect(),
            },
            GroupKind::FiniteExtension(data) => {
                let g_names = data.g_generator_names();
                let kernel_names = data.kernel().generator_names();
                let quotient = data.quotient();
                let ident = quotient.identity();
                let mut transversal = BTreeMap::new();
                let mut conjugation = BTreeMap::new();
                let mut cocycle = BTreeMap::new();
                for q in 0..quotient.order() {
                    if q == ident {
                        continue;
                    }
                    let qname = quotient.element_names()[q].clone();
                    transversal.insert(
                        qname.clone(),
                        render_word(&data.transversal()[q], &g_names).expect("validated"),
                    );
                    let mut row = BTreeMap::new();
                    for (h, w) in data.conjugation()[q].iter().enumerate() {
                        row.insert(
                            kernel_names[h].clone(),
                            render_word(w, &kernel_names).expect("validated"),
                        );
                    }
                    conjugation.insert(qname.clone(), row);
                    let mut crow = BTreeMap::new();
                    for q2 in 0..quotient.order() {
                        if q2 == ident {
                            continue;
                        }
                        let w = &data.cocycle()[q][q2];
                        if !w.is_identity() {
                            crow.insert(
                                quotient.element_names()[q2].clone(),
                                render_word(w, &kernel_names).expect("validated"),
                            );
                        }
                    }
                    if !crow.is_empty() {
                        cocycle.insert(qname, crow);
                    }
                }
                RawKind::FiniteExtension {
                    kernel: Box::new(RawGroupDescriptor::from((*data.kernel()).clone())),
                    quotient: Box::new(RawGroupDescriptor::from(GroupDescriptor::finite(
                        data.quotient().clone(),
                    ))),
                    transversal,
                    conjugation,
                    cocycle,
                }
            }
            GroupKind::CharacteristicQuotient {
                ambient,
                quotient,
                justification,
            } => RawKind::CharacteristicQuotient {
                ambient,
                quotient: Box::new(RawGroupDescriptor::from(*quotient)),
                justification,
            },
            GroupKind::Builtin(Builtin::ThompsonF) => RawKind::Builtin {
                name: "ThompsonF".into(),
                n: None,
            },
            GroupKind::Builtin(Builtin::Lamplighter { modulus }) => RawKind::Builtin {
                name: "Lamplighter".into(),
                n: Some(modulus),
            },
            GroupKind::Abstract { label } => RawKind::Abstract { label },
        };
        RawGroupDescriptor {
            kind: raw_kind,
            assertions,
        }
    }
}

/// Extension fixtures shared by tests across the crate.
#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::groups::finite::FiniteGroupData;

    /// Torus-bundle extension: kernel Z^2 = <a, b>, quotient of order 2
    /// acting by (a, b) -> (a^-1, b), squaring into b. Total group is the
    /// Klein-bottle group.
    pub(crate) fn klein_extension() -> GroupDescriptor {
        let kernel = GroupDescriptor::free_abelian(2);
        let quotient = FiniteGroupData::cyclic_named(2, "x").unwrap();
        let transversal = vec![Word::identity(), Word::generator(2)];
        let conjugation = vec![
            vec![Word::generator(0), Word::generator(1)],
            vec![Word::letter(0, -1), Word::generator(1)],
        ];
        let cocycle = vec![
            vec![Word::identity(), Word::identity()],
            vec![Word::identity(), Word::generator(1)],
        ];
        let data =
            FiniteExtensionData::new(kernel, quotient, transversal, conjugation, cocycle).unwrap();
        GroupDescriptor::extension(data)
    }

    /// Same shape with kernel Z and trivial cocycle: the infinite dihedral
    /// group.
    pub(crate) fn dihedral_extension() -> GroupDescriptor {
        let kernel = GroupDescriptor::free_abelian(1);
        let quotient = FiniteGroupData::cyclic_named(2, "x").unwrap();
        let transversal = vec![Word::identity(), Word::generator(1)];
        let conjugation = vec![vec![Word::generator(0)], vec![Word::letter(0, -1)]];
        let cocycle = vec![
            vec![Word::identity(), Word::identity()],
            vec![Word::identity(), Word::identity()],
        ];
        let data =
            FiniteExtensionData::new(kernel, quotient, transversal, conjugation, cocycle).unwrap();
        GroupDescriptor::extension(data)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::fixtures::{dihedral_extension, klein_extension};

    #[test]
    fn factorization() {
        assert_eq!(GroupDescriptor::factorize(12), vec![(2, 2), (3, 1)]);
        assert_eq!(GroupDescriptor::factorize(30), vec![(2, 1), (3, 1), (5, 1)]);
        assert_eq!(GroupDescriptor::factorize(7), vec![(7, 1)]);
    }

    #[test]
    fn parse_families_from_json() {
        let bs = parse_group(r#"{"kind": "BaumslagSolitar1n", "n": 2}"#).unwrap();
        assert_eq!(bs.generator_names(), vec!["a".to_string(), "t".to_string()]);
        assert!(parse_group(r#"{"kind": "BaumslagSolitar1n", "n": 1}"#).is_err());

        let gamma = parse_group(r#"{"kind": "GammaN", "n": 12}"#).unwrap();
        assert_eq!(
            gamma.generator_names(),
            vec!["a".to_string(), "t1".to_string(), "t2".to_string()]
        );

        let klein = parse_group(
            r#"{"kind": "FinitePresentation", "generators": ["a", "b"],
                "relators": [["b", "a", "b^-1", "a"]]}"#,
        )
        .unwrap();
        assert_eq!(klein.relators().unwrap().len(), 1);

        assert!(parse_group("{").is_err());
        assert!(parse_group(r#"{"kind": "Nonsense"}"#).is_err());
    }

    #[test]
    fn abelianizations_of_the_bundled_families() {
        let bs2 = GroupDescriptor::baumslag_solitar(2).unwrap();
        let ab = bs2.abelianization().unwrap();
        assert_eq!(ab.free_rank(), 1);
        assert!(ab.torsion().is_empty());

        let bs4 = GroupDescriptor::baumslag_solitar(4).unwrap();
        let ab = bs4.abelianization().unwrap();
        assert_eq!(ab.free_rank(), 1);
        assert_eq!(ab.torsion(), &[BigInt::from(3)]);

        let gamma12 = GroupDescriptor::gamma(12).unwrap();
        let ab = gamma12.abelianization().unwrap();
        assert_eq!(ab.free_rank(), 2);
        assert!(ab.torsion().is_empty());

        let gamma30 = GroupDescriptor::gamma(30).unwrap();
        assert_eq!(gamma30.b1().unwrap(), 3);

        let klein = GroupDescriptor::finite_presentation(
            vec!["a".into(), "b".into()],
            vec![parse_word(
                &["b".into(), "a".into(), "b^-1".into(), "a".into()],
                &["a".to_string(), "b".to_string()],
            )
            .unwrap()],
        )
        .unwrap();
        let ab = klein.abelianization().unwrap();
        assert_eq!(ab.free_rank(), 1);
        assert_eq!(ab.torsion(), &[BigInt::from(2)]);

        let f = GroupDescriptor::thompson_f();
        let ab = f.abelianization().unwrap();
        assert_eq!(ab.free_rank(), 2);
        assert!(ab.torsion().is_empty());

        let l5 = GroupDescriptor::lamplighter(5).unwrap();
        let ab = l5.abelianization().unwrap();
        assert_eq!(ab.free_rank(), 1);
        assert_eq!(ab.torsion(), &[BigInt::from(5)]);

        let s3 = GroupDescriptor::finite(FiniteGroupData::symmetric(3).unwrap());
        let ab = s3.abelianization().unwrap();
        assert_eq!(ab.free_rank(), 0);
        assert_eq!(ab.torsion(), &[BigInt::from(2)]);
    }

    #[test]
    fn product_generator_naming_and_abelianization() {
        let p = GroupDescriptor::direct_product(vec![
            GroupDescriptor::free_group(2),
            GroupDescriptor::baumslag_solitar(2).unwrap(),
        ])
        .unwrap();
        assert_eq!(
            p.generator_names(),
            vec!["p1_a", "p1_b", "p2_a", "p2_t"]
        );
        let ab = p.abelianization().unwrap();
        assert_eq!(ab.free_rank(), 3);
        assert!(ab.torsion().is_empty());

        let fp = GroupDescriptor::free_product(vec![
            GroupDescriptor::free_abelian(1),
            GroupDescriptor::free_abelian(1),
        ])
        .unwrap();
        assert_eq!(fp.b1().unwrap(), 2);
    }

    #[test]
    fn torsion_chain_validation() {
        assert!(GroupDescriptor::abelian(1, vec![BigInt::from(2), BigInt::from(4)]).is_ok());
        assert!(GroupDescriptor::abelian(1, vec![BigInt::from(2), BigInt::from(3)]).is_err());
        assert!(GroupDescriptor::abelian(0, vec![BigInt::from(1)]).is_err());
    }

    #[test]
    fn serde_round_trip() {
        let gamma = GroupDescriptor::gamma(12)
            .unwrap()
            .with_assertions(vec![PropertyAssertion {
                kind: AssertionKind::B1StableAllFiniteIndex,
                justification: "finite-index subgroups stay in the same family".into(),
            }]);
        let json = serde_json::to_string(&gamma).unwrap();
        let back: GroupDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(gamma, back);

        let assertion_json = serde_json::to_string(&PropertyAssertion {
            kind: AssertionKind::ClassTag {
                family: FamilyTag::Torsion,
            },
            justification: "all elements have finite order".into(),
        })
        .unwrap();
        assert!(assertion_json.contains("ClassTag"));
        assert!(assertion_json.contains("Torsion"));
    }

    #[test]
    fn extension_abelianization_sees_the_cocycle() {
        // Identical transversal and conjugation data; only the cocycle
        // differs — and it decides the first Betti number.
        let klein = klein_extension();
        assert_eq!(klein.generator_names(), vec!["a", "b", "x"]);
        let ab = klein.abelianization().unwrap();
        assert_eq!(ab.free_rank(), 1);
        assert_eq!(ab.torsion(), &[BigInt::from(2)]);

        let dihedral = dihedral_extension();
        let ab = dihedral.abelianization().unwrap();
        assert_eq!(ab.free_rank(), 0);
        assert_eq!(ab.torsion(), &[BigInt::from(2), BigInt::from(2)]);
    }

    #[test]
    fn extension_round_trips_through_json() {
        let klein = klein_extension();
        let json = serde_json::to_string_pretty(&klein).unwrap();
        let back: GroupDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(klein, back);

        // And parses from a hand-written document.
        let doc = r#"{
            "kind": "FiniteExtension",
            "kernel": {"kind": "FinitelyGeneratedAbelian", "rank": 2},
            "quotient": {"kind": "FiniteGroup", "elements": ["1", "x"],
                         "table": [[0, 1], [1, 0]]},
            "conjugation": {"x": {"a": ["a^-1"], "b": ["b"]}},
            "cocycle": {"x": {"x": ["b"]}}
        }"#;
        let parsed = parse_group(doc).unwrap();
        assert_eq!(parsed.b1().unwrap(), 1);
    }

    #[test]
    fn inconsistent_extensions_are_rejected() {
        let quotient = || FiniteGroupData::cyclic_named(2, "x").unwrap();
        let z = GroupDescriptor::free_abelian(1);

        // Conjugation a -> a^2 is an endomorphism but not invertible.
        let bad = FiniteExtensionData::new(
            z.clone(),
            quotient(),
            vec![Word::identity(), Word::generator(1)],
            vec![vec![Word::generator(0)], vec![Word::letter(0, 2)]],
            vec![
                vec![Word::identity(), Word::identity()],
                vec![Word::identity(), Word::identity()],
            ],
        );
        assert!(matches!(bad, Err(GroupError::InconsistentExtension(_))));

        // Name collision between kernel generator and quotient element.
        let clash = FiniteExtensionData::new(
            z.clone(),
            FiniteGroupData::cyclic_named(2, "a").unwrap(),
            vec![Word::identity(), Word::generator(1)],
            vec![vec![Word::generator(0)], vec![Word::letter(0, -1)]],
            vec![
                vec![Word::identity(), Word::identity()],
                vec![Word::identity(), Word::identity()],
            ],
        );
        assert!(matches!(clash, Err(GroupError::InconsistentExtension(_))));

        // Cocycle entries touching the identity must be trivial.
        let bad_cocycle = FiniteExtensionData::new(
            z,
            quotient(),
            vec![Word::identity(), Word::generator(1)],
            vec![vec![Word::generator(0)], vec![Word::letter(0, -1)]],
            vec![
                vec![Word::generator(0), Word::identity()],
                vec![Word::identity(), Word::identity()],
            ],
        );
        assert!(matches!(
            bad_cocycle,
            Err(GroupError::InconsistentExtension(_))
        ));
    }

    #[test]
    fn is_known_nontrivial_rules() {
        assert_eq!(GroupDescriptor::free_group(0).is_known_nontrivial(), Some(false));
        assert_eq!(GroupDescriptor::free_group(2).is_known_nontrivial(), Some(true));
        assert_eq!(
            GroupDescriptor::abstract_group("mystery").is_known_nontrivial(),
            None
        );
        assert_eq!(
            GroupDescriptor::baumslag_solitar(3)
                .unwrap()
                .is_known_nontrivial(),
            Some(true)
        );
    }
}
