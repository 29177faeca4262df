//! Canonical normal forms for the families with a solved word problem.
//!
//! Strategies: free groups use free reduction; abelian groups sort and
//! reduce exponents; finite groups fold the multiplication table; the
//! one-relator ascending families (`BS(1,n)` and its multi-prime cousins)
//! evaluate words in a faithful affine model `Z[1/n] ⋊ Z^r` and read the
//! canonical word back off the model; direct products split along factors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::descriptor::{factor_offsets, GroupDescriptor, GroupKind};
use super::word::Word;
use super::GroupError;

/// Largest conjugation depth the affine models will exponentiate through.
const MAX_SHIFT: u32 = 4096;

/// Canonical form of `w` in `g`. Two words represent the same element of
/// `g` if and only if their normal forms are equal. Families without an
/// implemented word problem return `UnsupportedFamily`.
pub fn normal_form(g: &GroupDescriptor, w: &Word) -> Result<Word, GroupError> {
    match g.kind() {
        GroupKind::FreeGroup { rank } => {
            check_range(w, *rank)?;
            Ok(w.clone())
        }
        GroupKind::FinitelyGeneratedAbelian { rank, torsion } => {
            let n = rank + torsion.len();
            let sums = w.exponent_sums(n)?;
            let mut pairs = Vec::new();
            for (i, mut e) in sums.into_iter().enumerate() {
                if i >= *rank {
                    let d = &torsion[i - rank];
                    e = e.mod_floor(d);
                }
                if !e.is_zero() {
                    pairs.push((i, e));
                }
            }
            Ok(Word::from_pairs(pairs))
        }
        GroupKind::BaumslagSolitar1n { n } => {
            check_range(w, 2)?;
            let mut u = BigRational::zero();
            let mut k = BigInt::zero();
            let n_big = BigInt::from(*n);
            for l in w.letters() {
                if l.gen == 0 {
                    let mult = rational_power(&n_big, &k)?;
                    u += mult * BigRational::from(l.exp.clone());
                } else {
                    k += &l.exp;
                }
            }
            // Minimal alpha with n^alpha * u integral.
            let mut alpha = BigInt::zero();
            let mut scaled = u.clone();
            while !scaled.is_integer() {
                scaled *= BigRational::from(n_big.clone());
                alpha += 1;
                if alpha > BigInt::from(MAX_SHIFT) {
                    return Err(GroupError::PowerTooLarge(format!(
                        "normal form needs a conjugation depth above {MAX_SHIFT}"
                    )));
                }
            }
            let m = scaled.to_integer();
            let beta = &k + &alpha;
            Ok(Word::from_pairs(vec![(1, -alpha), (0, m), (1, beta)]))
        }
        GroupKind::GammaN { n } => {
            let factors = GroupDescriptor::factorize(*n);
            let r = factors.len();
            check_range(w, 1 + r)?;
            let mults: Vec<BigInt> = factors
                .iter()
                .map(|(p, y)| BigInt::from(*p).pow(*y))
                .collect();
            let mut u = BigRational::zero();
            let mut k = vec![BigInt::zero(); r];
            for l in w.letters() {
                if l.gen == 0 {
                    let mut mult = BigRational::one();
                    for i in 0..r {
                        mult *= rational_power(&mults[i], &k[i])?;
                    }
                    u += mult * BigRational::from(l.exp.clone());
                } else {
                    k[l.gen - 1] += &l.exp;
                }
            }
            // alpha_i = ceil(v_{p_i}(denominator) / y_i)
            let denom = u.denom().abs();
            let mut alphas = Vec::with_capacity(r);
            let mut m = u.clone();
            for (i, (p, y)) in factors.iter().enumerate() {
                let v = padic_valuation(&denom, &BigInt::from(*p));
                let alpha = v.div_ceil(u64::from(*y));
                if alpha > u64::from(MAX_SHIFT) {
                    return Err(GroupError::PowerTooLarge(format!(
                        "normal form needs a conjugation depth above {MAX_SHIFT}"
                    )));
                }
                m *= BigRational::from(mults[i].pow(alpha as u32));
                alphas.push(BigInt::from(alpha));
            }
            debug_assert!(m.is_integer());
            let mut pairs = Vec::new();
            for (i, a) in alphas.iter().enumerate() {
                pairs.push((1 + i, -a.clone()));
            }
            pairs.push((0, m.to_integer()));
            for (i, a) in alphas.iter().enumerate() {
                pairs.push((1 + i, &k[i] + a));
            }
            Ok(Word::from_pairs(pairs))
        }
        GroupKind::FiniteGroup(data) => {
            check_range(w, data.order())?;
            let e = data.fold_word(w.letters().iter().map(|l| (l.gen, l.exp.clone())))?;
            if e == data.identity() {
                Ok(Word::identity())
            } else {
                Ok(Word::generator(e))
            }
        }
        GroupKind::DirectProduct(factors) => {
            let offsets = factor_offsets(factors);
            check_range(w, g.ngens())?;
            let mut out = Vec::new();
            for (idx, f) in factors.iter().enumerate() {
                let off = offsets[idx];
                let ng = f.ngens();
                let part = Word::from_pairs(
                    w.letters()
                        .iter()
                        .filter(|l| l.gen >= off && l.gen < off + ng)
                        .map(|l| (l.gen - off, l.exp.clone()))
                        .collect::<Vec<_>>(),
                );
                let nf = normal_form(f, &part)?;
                out.extend(
                    nf.letters()
                        .iter()
                        .map(|l| (l.gen + off, l.exp.clone())),
                );
            }
            Ok(Word::from_pairs(out))
        }
        GroupKind::CharacteristicQuotient { quotient, .. } => normal_form(quotient, w),
        _ => Err(GroupError::UnsupportedFamily(format!(
            "no normal form algorithm for: {}",
            g.describe()
        ))),
    }
}

fn check_range(w: &Word, ngens: usize) -> Result<(), GroupError> {
    if let Some(m) = w.max_gen() {
        if m >= ngens {
            return Err(GroupError::GeneratorIndex {
                index: m,
                count: ngens,
            });
        }
    }
    Ok(())
}

/// `base^exp` as an exact rational, with `|exp|` capped.
fn rational_power(base: &BigInt, exp: &BigInt) -> Result<BigRational, GroupError> {
    let mag = exp.abs();
    if mag > BigInt::from(MAX_SHIFT) {
        return Err(GroupError::PowerTooLarge(format!(
            "affine evaluation at conjugation depth |{exp}| exceeds {MAX_SHIFT}"
        )));
    }
    let e = u32::try_from(&mag).expect("bounded above");
    let p = base.pow(e);
    if exp.is_negative() {
        Ok(BigRational::new(BigInt::one(), p))
    } else {
        Ok(BigRational::from(p))
    }
}

/// Largest `v` with `p^v | n` (for `n != 0`).
fn padic_valuation(n: &BigInt, p: &BigInt) -> u64 {
    let mut v = 0u64;
    let mut n = n.abs();
    while (&n % p).is_zero() && !n.is_zero() {
        n /= p;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::word::parse_word;

    fn nf_str(g: &GroupDescriptor, tokens: &[&str]) -> String {
        let names = g.generator_names();
        let toks: Vec<String> = tokens.iter().map(|s| s.to_string()).collect();
        let w = parse_word(&toks, &names).unwrap();
        let nf = normal_form(g, &w).unwrap();
        crate::groups::word::render_word(&nf, &names)
            .unwrap()
            .join(" ")
    }

    #[test]
    fn free_and_abelian_forms() {
        let f2 = GroupDescriptor::free_group(2);
        assert_eq!(nf_str(&f2, &["a", "b", "b^-1", "a"]), "a^2");

        let z2 = GroupDescriptor::free_abelian(2);
        assert_eq!(nf_str(&z2, &["b", "a", "b", "a^-2", "a"]), "b^2");

        let zz2 = GroupDescriptor::abelian(1, vec![BigInt::from(2)]).unwrap();
        assert_eq!(nf_str(&zz2, &["b", "a", "b", "b"]), "a b");
        assert_eq!(nf_str(&zz2, &["b^-1"]), "b");
        assert_eq!(nf_str(&zz2, &["b", "b"]), "");
    }

    #[test]
    fn baumslag_solitar_relations_collapse() {
        let bs2 = GroupDescriptor::baumslag_solitar(2).unwrap();
        assert_eq!(nf_str(&bs2, &["t", "a", "t^-1"]), "a^2");
        assert_eq!(nf_str(&bs2, &["t^-1", "a^2", "t"]), "a");
        assert_eq!(nf_str(&bs2, &["t^-1", "a", "t"]), "t^-1 a t");
        assert_eq!(nf_str(&bs2, &["a", "t"]), "a t");
        assert_eq!(nf_str(&bs2, &["t", "a"]), "a^2 t");
        // (t^-1 a t)^2 carries 1/2 + 1/2 = 1 back into the integers.
        assert_eq!(nf_str(&bs2, &["t^-1", "a", "t", "t^-1", "a", "t"]), "a");
        assert_eq!(nf_str(&bs2, &["a", "t^-1", "a", "t"]), "t^-1 a^3 t");
    }

    #[test]
    fn gamma_relations_collapse() {
        let g12 = GroupDescriptor::gamma(12).unwrap();
        assert_eq!(nf_str(&g12, &["t1", "a", "t1^-1"]), "a^4");
        assert_eq!(nf_str(&g12, &["t2", "a", "t2^-1"]), "a^3");
        assert_eq!(nf_str(&g12, &["t2", "t1"]), "t1 t2");
        assert_eq!(nf_str(&g12, &["t1^-1", "a", "t1"]), "t1^-1 a t1");
        assert_eq!(nf_str(&g12, &["a", "t1^-1", "a", "t1"]), "t1^-1 a^5 t1");
        assert_eq!(
            nf_str(&g12, &["t2^-1", "a", "t2", "a^-1"]),
            "t2^-1 a^-2 t2"
        );
        // 1/4 + 1/3 = 7/12 needs both conjugation depths.
        assert_eq!(
            nf_str(&g12, &["t1^-1", "a", "t1", "t2^-1", "a", "t2"]),
            "t1^-1 t2^-1 a^7 t1 t2"
        );

        let g30 = GroupDescriptor::gamma(30).unwrap();
        assert_eq!(nf_str(&g30, &["t1", "a", "t1^-1"]), "a^2");
        assert_eq!(nf_str(&g30, &["t3", "a", "t3^-1"]), "a^5");
    }

    #[test]
    fn finite_group_forms() {
        use crate::groups::finite::FiniteGroupData;
        let s3 = GroupDescriptor::finite(FiniteGroupData::symmetric(3).unwrap());
        let names = s3.generator_names();
        assert!(names.contains(&"s".to_string()));
        assert_eq!(nf_str(&s3, &["s", "s"]), "");
        assert_eq!(nf_str(&s3, &["c", "c", "c"]), "");
        // s c s^-1 = c^-1 = c^2 in S3.
        let lhs = nf_str(&s3, &["s", "c", "s^-1"]);
        let rhs = nf_str(&s3, &["c", "c"]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn direct_product_splits() {
        let p = GroupDescriptor::direct_product(vec![
            GroupDescriptor::free_abelian(1),
            GroupDescriptor::baumslag_solitar(2).unwrap(),
        ])
        .unwrap();
        assert_eq!(
            nf_str(&p, &["p2_t", "p1_a", "p2_a", "p2_t^-1", "p1_a"]),
            "p1_a^2 p2_a^2"
        );
    }

    #[test]
    fn depth_cap_reported() {
        let bs2 = GroupDescriptor::baumslag_solitar(2).unwrap();
        let names = bs2.generator_names();
        let toks: Vec<String> = vec!["t^-5000".into(), "a".into(), "t^5000".into()];
        let w = parse_word(&toks, &names).unwrap();
        assert!(matches!(
            normal_form(&bs2, &w),
            Err(GroupError::PowerTooLarge(_))
        ));
    }

    #[test]
    fn unsupported_families_say_so() {
        let f = GroupDescriptor::thompson_f();
        assert!(matches!(
            normal_form(&f, &Word::generator(0)),
            Err(GroupError::UnsupportedFamily(_))
        ));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_word(ngens: usize) -> impl Strategy<Value = Word> {
            prop::collection::vec((0..ngens, -3i64..=3), 0..8).prop_map(|pairs| {
                Word::from_pairs(
                    pairs
                        .into_iter()
                        .map(|(g, e)| (g, BigInt::from(e)))
                        .collect::<Vec<_>>(),
                )
            })
        }

        fn groups() -> Vec<GroupDescriptor> {
            vec![
                GroupDescriptor::free_group(2),
                GroupDescriptor::abelian(1, vec![BigInt::from(4)]).unwrap(),
                GroupDescriptor::baumslag_solitar(2).unwrap(),
                GroupDescriptor::baumslag_solitar(3).unwrap(),
                GroupDescriptor::gamma(12).unwrap(),
                GroupDescriptor::gamma(30).unwrap(),
            ]
        }

        proptest! {
            #[test]
            fn idempotent(w in arb_word(2), pick in 0usize..6) {
                let gs = groups();
                let g = &gs[pick];
                let w = Word::from_pairs(
                    w.letters().iter().map(|l| (l.gen.min(g.ngens() - 1), l.exp.clone())).collect::<Vec<_>>(),
                );
                let n1 = normal_form(g, &w).unwrap();
                let n2 = normal_form(g, &n1).unwrap();
                prop_assert_eq!(n1, n2);
            }

            #[test]
            fn compatible_with_multiplication(u in arb_word(2), v in arb_word(2), pick in 0usize..6) {
                let gs = groups();
                let g = &gs[pick];
                let clamp = |w: &Word| Word::from_pairs(
                    w.letters().iter().map(|l| (l.gen.min(g.ngens() - 1), l.exp.clone())).collect::<Vec<_>>(),
                );
                let u = clamp(&u);
                let v = clamp(&v);
                let lhs = normal_form(g, &u.mul(&v)).unwrap();
                let nu = normal_form(g, &u).unwrap();
                let nv = normal_form(g, &v).unwrap();
                let rhs = normal_form(g, &nu.mul(&nv)).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn inverse_elements_cancel(u in arb_word(3), pick in 0usize..6) {
                let gs = groups();
                let g = &gs[pick];
                let u = Word::from_pairs(
                    u.letters().iter().map(|l| (l.gen.min(g.ngens() - 1), l.exp.clone())).collect::<Vec<_>>(),
                );
                let prod = u.mul(&u.inverse());
                prop_assert!(normal_form(g, &prod).unwrap().is_identity());
            }
        }
    }
}
