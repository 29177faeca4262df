//! Random automorphism sampling, for property tests and exercising
//! equivariance arguments. Each family composes a few validated basic
//! moves with tracked inverses, so every sample comes back as a fully
//! verified automorphism.

use num_bigint::BigInt;
use rand::Rng;

use super::descriptor::{factor_offsets, GroupDescriptor, GroupKind};
use super::hom::Automorphism;
use super::word::Word;
use super::GroupError;

/// Draw a random automorphism by composing `steps` basic moves.
pub fn random_automorphism(
    g: &GroupDescriptor,
    rng: &mut impl Rng,
    steps: usize,
) -> Result<Automorphism, GroupError> {
    let mut acc = Automorphism::identity(g)?;
    for _ in 0..steps {
        let basic = basic_move(g, rng)?;
        acc = acc.compose(&basic)?;
    }
    Ok(acc)
}

fn basic_move(g: &GroupDescriptor, rng: &mut impl Rng) -> Result<Automorphism, GroupError> {
    match g.kind() {
        GroupKind::FreeGroup { rank } => free_move(g, *rank, rng),
        GroupKind::FinitelyGeneratedAbelian { rank, torsion } => {
            abelian_move(g, *rank, torsion.len(), rng)
        }
        GroupKind::BaumslagSolitar1n { .. } => bs_move(g, rng),
        GroupKind::GammaN { .. } => gamma_move(g, rng),
        GroupKind::FiniteGroup(data) => {
            let h = rng.gen_range(0..data.order());
            let fwd: Vec<Word> = (0..data.order())
                .map(|x| element_word(data.conj(h, x), data.identity()))
                .collect();
            let hinv = data.inv(h);
            let inv: Vec<Word> = (0..data.order())
                .map(|x| element_word(data.conj(hinv, x), data.identity()))
                .collect();
            Automorphism::from_images(g, fwd, inv)
        }
        GroupKind::DirectProduct(factors) => product_move(g, factors, rng),
        _ => Err(GroupError::UnsupportedFamily(format!(
            "no automorphism sampler for: {}",
            g.describe()
        ))),
    }
}

fn element_word(e: usize, identity: usize) -> Word {
    if e == identity {
        Word::identity()
    } else {
        Word::generator(e)
    }
}

fn identity_images(n: usize) -> Vec<Word> {
    (0..n).map(Word::generator).collect()
}

fn free_move(
    g: &GroupDescriptor,
    rank: usize,
    rng: &mut impl Rng,
) -> Result<Automorphism, GroupError> {
    if rank == 0 {
        return Automorphism::identity(g);
    }
    let mut fwd = identity_images(rank);
    let mut inv = identity_images(rank);
    let i = rng.gen_range(0..rank);
    match rng.gen_range(0..3) {
        0 => {
            // Invert one generator.
            fwd[i] = Word::letter(i, -1);
            inv[i] = Word::letter(i, -1);
        }
        1 if rank >= 2 => {
            // Swap two generators.
            let mut j = rng.gen_range(0..rank - 1);
            if j >= i {
                j += 1;
            }
            fwd.swap(i, j);
            inv.swap(i, j);
        }
        _ if rank >= 2 => {
            // Right-multiply one generator by another.
            let mut j = rng.gen_range(0..rank - 1);
            if j >= i {
                j += 1;
            }
            fwd[i] = Word::generator(i).mul(&Word::generator(j));
            inv[i] = Word::generator(i).mul(&Word::letter(j, -1));
        }
        _ => {
            fwd[i] = Word::letter(i, -1);
            inv[i] = Word::letter(i, -1);
        }
    }
    Automorphism::from_images(g, fwd, inv)
}

fn abelian_move(
    g: &GroupDescriptor,
    rank: usize,
    torsion_count: usize,
    rng: &mut impl Rng,
) -> Result<Automorphism, GroupError> {
    let n = rank + torsion_count;
    if n == 0 {
        return Automorphism::identity(g);
    }
    let mut fwd = identity_images(n);
    let mut inv = identity_images(n);
    match rng.gen_range(0..4) {
        0 => {
            // Negate one generator (a unit in every cyclic factor).
            let i = rng.gen_range(0..n);
            fwd[i] = Word::letter(i, -1);
            inv[i] = Word::letter(i, -1);
        }
        1 if rank >= 2 => {
            // Shear inside the free part.
            let i = rng.gen_range(0..rank);
            let mut j = rng.gen_range(0..rank - 1);
            if j >= i {
                j += 1;
            }
            let k = BigInt::from(rng.gen_range(-2i64..=2));
            fwd[i] = Word::from_pairs(vec![(i, BigInt::from(1)), (j, k.clone())]);
            inv[i] = Word::from_pairs(vec![(i, BigInt::from(1)), (j, -k)]);
        }
        2 if rank >= 1 && torsion_count >= 1 => {
            // Shear a free generator into the torsion part.
            let i = rng.gen_range(0..rank);
            let j = rank + rng.gen_range(0..torsion_count);
            fwd[i] = Word::generator(i).mul(&Word::generator(j));
            inv[i] = Word::generator(i).mul(&Word::letter(j, -1));
        }
        _ if rank >= 2 => {
            // Swap two free generators.
            let i = rng.gen_range(0..rank);
            let mut j = rng.gen_range(0..rank - 1);
            if j >= i {
                j += 1;
            }
            fwd.swap(i, j);
            inv.swap(i, j);
        }
        _ => {
            let i = rng.gen_range(0..n);
            fwd[i] = Word::letter(i, -1);
            inv[i] = Word::letter(i, -1);
        }
    }
    Automorphism::from_images(g, fwd, inv)
}

fn bs_move(g: &GroupDescriptor, rng: &mut impl Rng) -> Result<Automorphism, GroupError> {
    if rng.gen_bool(0.5) {
        // Mirror: a -> a^-1.
        let fwd = vec![Word::letter(0, -1), Word::generator(1)];
        Automorphism::from_images(g, fwd.clone(), fwd)
    } else {
        // Shift the stable letter: t -> t a^k.
        let k = BigInt::from(rng.gen_range(-2i64..=2));
        let fwd = vec![
            Word::generator(0),
            Word::from_pairs(vec![(1, BigInt::from(1)), (0, k.clone())]),
        ];
        let inv = vec![
            Word::generator(0),
            Word::from_pairs(vec![(1, BigInt::from(1)), (0, -k)]),
        ];
        Automorphism::from_images(g, fwd, inv)
    }
}

fn gamma_move(g: &GroupDescriptor, rng: &mut impl Rng) -> Result<Automorphism, GroupError> {
    let n = g.ngens();
    if rng.gen_bool(0.5) {
        // Mirror: a -> a^-1, commuting part fixed.
        let mut fwd = identity_images(n);
        fwd[0] = Word::letter(0, -1);
        Automorphism::from_images(g, fwd.clone(), fwd)
    } else {
        // Inner twist: conjugate everything by a short word.
        let len = rng.gen_range(1..=2);
        let mut w = Word::identity();
        for _ in 0..len {
            let gen = rng.gen_range(0..n);
            let e = if rng.gen_bool(0.5) { 1 } else { -1 };
            w = w.mul(&Word::letter(gen, e));
        }
        let fwd: Vec<Word> = (0..n)
            .map(|i| w.mul(&Word::generator(i)).mul(&w.inverse()))
            .collect();
        let inv: Vec<Word> = (0..n)
            .map(|i| w.inverse().mul(&Word::generator(i)).mul(&w))
            .collect();
        Automorphism::from_images(g, fwd, inv)
    }
}

fn product_move(
    g: &GroupDescriptor,
    factors: &[GroupDescriptor],
    rng: &mut impl Rng,
) -> Result<Automorphism, GroupError> {
    let offsets = factor_offsets(factors);
    // Occasionally swap two identical adjacent factors.
    if factors.len() >= 2 && rng.gen_bool(0.25) {
        let i = rng.gen_range(0..factors.len() - 1);
        if factors[i] == factors[i + 1] {
            let n = g.ngens();
            let ni = factors[i].ngens();
            let mut images = identity_images(n);
            for k in 0..ni {
                images.swap(offsets[i] + k, offsets[i + 1] + k);
            }
            return Automorphism::from_images(g, images.clone(), images);
        }
    }
    // Componentwise move in one random factor.
    let which = rng.gen_range(0..factors.len());
    let inner = basic_move(&factors[which], rng)?;
    let off = offsets[which];
    let mut fwd = identity_images(g.ngens());
    let mut inv = identity_images(g.ngens());
    for (k, w) in inner.forward().images().iter().enumerate() {
        fwd[off + k] = w.map_gens(|x| x + off);
    }
    for (k, w) in inner.inverse().images().iter().enumerate() {
        inv[off + k] = w.map_gens(|x| x + off);
    }
    Automorphism::from_images(g, fwd, inv)
}
