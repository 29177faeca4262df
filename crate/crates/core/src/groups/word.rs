//! Freely reduced words in run-length form.
//!
//! A word is a sequence of syllables `(generator, exponent)` with nonzero
//! exponents and no two adjacent syllables on the same generator. Every
//! constructor reduces, so two `Word` values are structurally equal iff they
//! are equal as elements of the free group on the ambient generators. The
//! run-length form is essential for the HNN-style families, where canonical
//! representatives carry exponents that grow geometrically with word length.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::GroupError;

/// Expanding a syllable `g^e` into unit letters is refused beyond this bound.
const EXPAND_CAP: usize = 4096;

/// One syllable of a word: `gen` raised to a nonzero `exp`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: usize,
    pub exp: BigInt,
}

/// A freely reduced word. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    /// The empty word.
    pub fn identity() -> Self {
        Word { letters: Vec::new() }
    }

    /// The single generator `gen`.
    pub fn generator(gen: usize) -> Self {
        Word::letter(gen, BigInt::from(1))
    }

    /// The syllable `gen^exp` (identity when `exp = 0`).
    pub fn letter(gen: usize, exp: impl Into<BigInt>) -> Self {
        let exp = exp.into();
        if exp.is_zero() {
            Word::identity()
        } else {
            Word {
                letters: vec![Letter { gen, exp }],
            }
        }
    }

    /// Build from syllables, merging adjacent same-generator syllables and
    /// dropping the ones that cancel to exponent zero (free reduction).
    pub fn from_pairs<I>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (usize, BigInt)>,
    {
        let mut letters: Vec<Letter> = Vec::new();
        for (gen, exp) in pairs {
            if exp.is_zero() {
                continue;
            }
            match letters.last_mut() {
                Some(last) if last.gen == gen => {
                    last.exp += exp;
                    if last.exp.is_zero() {
                        letters.pop();
                    }
                }
                _ => letters.push(Letter { gen, exp }),
            }
        }
        Word { letters }
    }

    /// Convenience constructor from small literals: `[(0, 1), (1, -2)]`.
    pub fn from_i64_pairs(pairs: &[(usize, i64)]) -> Self {
        Word::from_pairs(pairs.iter().map(|(g, e)| (*g, BigInt::from(*e))))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of syllables.
    pub fn syllable_count(&self) -> usize {
        self.letters.len()
    }

    /// Total letter length: the sum of the absolute exponents.
    pub fn length(&self) -> BigInt {
        self.letters.iter().map(|l| l.exp.abs()).sum()
    }

    /// Largest generator index used, if any.
    pub fn max_gen(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.gen).max()
    }

    /// Concatenation followed by free reduction at the seam.
    pub fn mul(&self, other: &Word) -> Word {
        Word::from_pairs(
            self.letters
                .iter()
                .chain(other.letters.iter())
                .map(|l| (l.gen, l.exp.clone())),
        )
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| Letter {
                    gen: l.gen,
                    exp: -l.exp.clone(),
                })
                .collect(),
        }
    }

    /// `k`-th power. Cheap for the identity, single syllables and small `|k|`;
    /// multi-syllable bases with `|k|` beyond the expansion cap are refused.
    pub fn pow(&self, k: &BigInt) -> Result<Word, GroupError> {
        if k.is_zero() || self.is_identity() {
            return Ok(Word::identity());
        }
        if self.letters.len() == 1 {
            let l = &self.letters[0];
            return Ok(Word::letter(l.gen, &l.exp * k));
        }
        let negative = k.is_negative();
        let reps = usize::try_from(k.abs()).map_err(|_| {
            GroupError::PowerTooLarge(format!("{}-syllable word to the power {k}", self.letters.len()))
        })?;
        if reps > EXPAND_CAP {
            return Err(GroupError::PowerTooLarge(format!(
                "{}-syllable word to the power {k}",
                self.letters.len()
            )));
        }
        let base = if negative { self.inverse() } else { self.clone() };
        let mut acc = Word::identity();
        for _ in 0..reps {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// The commutator `a b a^-1 b^-1`.
    pub fn commutator(a: &Word, b: &Word) -> Word {
        a.mul(b).mul(&a.inverse()).mul(&b.inverse())
    }

    /// Exponent sum per generator over `ngens` generators (the image in the
    /// free abelianization). Errors if a generator index is out of range.
    pub fn exponent_sums(&self, ngens: usize) -> Result<Vec<BigInt>, GroupError> {
        let mut sums = vec![BigInt::zero(); ngens];
        for l in &self.letters {
            if l.gen >= ngens {
                return Err(GroupError::GeneratorIndex {
                    index: l.gen,
                    count: ngens,
                });
            }
            sums[l.gen] += &l.exp;
        }
        Ok(sums)
    }

    /// Expand into unit letters `(gen, ±1)`, refusing beyond the cap.
    pub fn expand_units(&self) -> Result<Vec<(usize, i8)>, GroupError> {
        let mut out = Vec::new();
        for l in &self.letters {
            let reps = usize::try_from(l.exp.abs())
                .map_err(|_| GroupError::PowerTooLarge(format!("syllable exponent {}", l.exp)))?;
            if out.len() + reps > EXPAND_CAP {
                return Err(GroupError::PowerTooLarge(format!(
                    "word of letter length beyond {EXPAND_CAP}"
                )));
            }
            let sign = if l.exp.is_negative() { -1 } else { 1 };
            out.extend(std::iter::repeat_n((l.gen, sign), reps));
        }
        Ok(out)
    }

    /// Map generator indices, preserving order and exponents.
    pub fn map_gens(&self, f: impl Fn(usize) -> usize) -> Word {
        Word::from_pairs(self.letters.iter().map(|l| (f(l.gen), l.exp.clone())))
    }
}

/// Parse a word from signed generator tokens such as `["t", "a^-1", "t^3"]`.
pub fn parse_word(tokens: &[String], names: &[String]) -> Result<Word, GroupError> {
    let mut pairs = Vec::with_capacity(tokens.len());
    for tok in tokens {
        let tok = tok.trim();
        let (name, exp) = match tok.split_once('^') {
            None => (tok, BigInt::from(1)),
            Some((name, e)) => {
                let exp = e.parse::<BigInt>().map_err(|_| {
                    GroupError::Syntax(format!("bad exponent `{e}` in token `{tok}`"))
                })?;
                (name.trim(), exp)
            }
        };
        if name.is_empty() {
            return Err(GroupError::Syntax(format!("empty generator in token `{tok}`")));
        }
        let gen = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| GroupError::UnknownGenerator(name.to_string()))?;
        pairs.push((gen, exp));
    }
    Ok(Word::from_pairs(pairs))
}

/// Render a word as signed generator tokens (inverse of `parse_word` on
/// freely reduced input).
pub fn render_word(word: &Word, names: &[String]) -> Result<Vec<String>, GroupError> {
    let mut out = Vec::with_capacity(word.syllable_count());
    for l in word.letters() {
        let name = names.get(l.gen).ok_or(GroupError::GeneratorIndex {
            index: l.gen,
            count: names.len(),
        })?;
        if l.exp == BigInt::from(1) {
            out.push(name.clone());
        } else {
            out.push(format!("{name}^{}", l.exp));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["a".into(), "b".into()]
    }

    #[test]
    fn free_reduction_merges_and_cancels() {
        // a b a^-1 a b  ->  a b^2  after the inner cancellation
        let w = Word::from_i64_pairs(&[(0, 1), (1, 1), (0, -1), (0, 1), (1, 1)]);
        assert_eq!(w, Word::from_i64_pairs(&[(0, 1), (1, 2)]));
        // full cancellation
        let v = Word::from_i64_pairs(&[(0, 1), (1, 1), (1, -1), (0, -1)]);
        assert!(v.is_identity());
    }

    #[test]
    fn mul_and_inverse() {
        let w = Word::from_i64_pairs(&[(0, 1), (1, 2)]);
        assert!(w.mul(&w.inverse()).is_identity());
        assert!(w.inverse().mul(&w).is_identity());
        let v = Word::from_i64_pairs(&[(1, -2), (0, 3)]);
        // (a b^2)(b^-2 a^3) = a^4
        assert_eq!(w.mul(&v), Word::letter(0, 4));
    }

    #[test]
    fn powers() {
        let a = Word::letter(0, 3);
        assert_eq!(a.pow(&BigInt::from(-2)).unwrap(), Word::letter(0, -6));
        let w = Word::from_i64_pairs(&[(0, 1), (1, 1)]);
        let w3 = w.pow(&BigInt::from(3)).unwrap();
        assert_eq!(
            w3,
            Word::from_i64_pairs(&[(0, 1), (1, 1), (0, 1), (1, 1), (0, 1), (1, 1)])
        );
        assert!(w.pow(&BigInt::from(100000)).is_err());
        // commutator of commuting syllables on the same generator collapses
        assert!(Word::commutator(&Word::letter(0, 2), &Word::letter(0, 5)).is_identity());
    }

    #[test]
    fn exponent_sums_and_length() {
        let w = Word::from_i64_pairs(&[(0, 2), (1, -1), (0, 1)]);
        assert_eq!(
            w.exponent_sums(2).unwrap(),
            vec![BigInt::from(3), BigInt::from(-1)]
        );
        assert_eq!(w.length(), BigInt::from(4));
        assert_eq!(w.syllable_count(), 3);
        assert!(w.exponent_sums(1).is_err());
    }

    #[test]
    fn parse_and_render_round_trip() {
        let toks: Vec<String> = vec!["b".into(), "a^-2".into(), "b^3".into()];
        let w = parse_word(&toks, &names()).unwrap();
        assert_eq!(w, Word::from_i64_pairs(&[(1, 1), (0, -2), (1, 3)]));
        assert_eq!(render_word(&w, &names()).unwrap(), toks);
        // reduction during parse
        let toks2: Vec<String> = vec!["a".into(), "a^-1".into()];
        assert!(parse_word(&toks2, &names()).unwrap().is_identity());
        assert!(parse_word(&["c".to_string()], &names()).is_err());
        assert!(parse_word(&["a^x".to_string()], &names()).is_err());
    }

    #[test]
    fn unit_expansion() {
        let w = Word::from_i64_pairs(&[(0, 2), (1, -1)]);
        assert_eq!(w.expand_units().unwrap(), vec![(0, 1), (0, 1), (1, -1)]);
        assert!(Word::letter(0, 100000).expand_units().is_err());
    }
}
