//! Serde helpers that render big integers and rationals as decimal strings.
//!
//! JSON produced by this crate is meant to be read and edited by people
//! (group descriptors, character files, certificates), so `BigInt` fields
//! serialize as `"-12"` and `BigRational` fields as `"5/2"` rather than as
//! the digit-limb encoding the num crates use by default. Parsing is strict:
//! a zero denominator or trailing garbage is an error, never a panic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serializer};

/// Parse a decimal integer string into a [`BigInt`].
pub fn parse_int(s: &str) -> Result<BigInt, String> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|e| format!("invalid integer {s:?}: {e}"))
}

/// Parse `"p"` or `"p/q"` into a reduced [`BigRational`], rejecting `q = 0`.
pub fn parse_rat(s: &str) -> Result<BigRational, String> {
    let t = s.trim();
    let (num_str, den_str) = match t.split_once('/') {
        Some((n, d)) => (n, d),
        None => (t, "1"),
    };
    let numer = parse_int(num_str).map_err(|e| format!("invalid rational {s:?}: {e}"))?;
    let denom = parse_int(den_str).map_err(|e| format!("invalid rational {s:?}: {e}"))?;
    if denom.is_zero() {
        return Err(format!("invalid rational {s:?}: zero denominator"));
    }
    Ok(BigRational::new(numer, denom))
}

/// `#[serde(with = "jsonnum::int")]` for a [`BigInt`] field.
pub mod int {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let raw = String::deserialize(d)?;
        parse_int(&raw).map_err(DeError::custom)
    }
}

/// `#[serde(with = "jsonnum::rat")]` for a [`BigRational`] field.
pub mod rat {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rat(&raw).map_err(DeError::custom)
    }
}

/// `#[serde(with = "jsonnum::intvec")]` for a `Vec<BigInt>` field.
pub mod intvec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(BigInt::to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_int(s).map_err(DeError::custom))
            .collect()
    }
}

/// `#[serde(with = "jsonnum::ratvec")]` for a `Vec<BigRational>` field.
pub mod ratvec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(BigRational::to_string))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rat(s).map_err(DeError::custom))
            .collect()
    }
}

/// `#[serde(with = "jsonnum::intmatrix")]` for an [`crate::IntMatrix`] field,
/// rendered as nested arrays of decimal strings.
pub mod intmatrix {
    use super::*;
    use crate::zlinalg::IntMatrix;

    pub fn serialize<S: Serializer>(m: &IntMatrix, s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..m.rows())
            .map(|i| m.row(i).iter().map(BigInt::to_string).collect())
            .collect();
        serde::Serialize::serialize(&rows, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<IntMatrix, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        if raw.is_empty() {
            return Ok(IntMatrix::zero(0, 0));
        }
        let rows: Vec<Vec<BigInt>> = raw
            .iter()
            .map(|r| r.iter().map(|s| parse_int(s).map_err(DeError::custom)).collect())
            .collect::<Result<_, _>>()?;
        IntMatrix::from_rows(rows).map_err(DeError::custom)
    }
}

/// `#[serde(with = "jsonnum::introws")]` for a `Vec<Vec<BigInt>>` field,
/// rendered as nested arrays of decimal strings.
pub mod introws {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = v
            .iter()
            .map(|r| r.iter().map(BigInt::to_string).collect())
            .collect();
        serde::Serialize::serialize(&rows, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        raw.iter()
            .map(|r| r.iter().map(|s| parse_int(s).map_err(DeError::custom)).collect())
            .collect()
    }
}

/// `#[serde(with = "jsonnum::ratrows")]` for a `Vec<Vec<BigRational>>` field,
/// rendered as nested arrays of `"p/q"` strings.
pub mod ratrows {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Vec<BigRational>], s: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = v
            .iter()
            .map(|r| r.iter().map(BigRational::to_string).collect())
            .collect();
        serde::Serialize::serialize(&rows, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigRational>>, D::Error> {
        let raw = Vec::<Vec<String>>::deserialize(d)?;
        raw.iter()
            .map(|r| r.iter().map(|s| parse_rat(s).map_err(DeError::custom)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn rational_string_forms() {
        assert_eq!(parse_rat("5/2").unwrap().to_string(), "5/2");
        assert_eq!(parse_rat("-5/2").unwrap().to_string(), "-5/2");
        assert_eq!(parse_rat("7").unwrap().to_string(), "7");
        assert_eq!(parse_rat("4/2").unwrap().to_string(), "2");
        assert_eq!(parse_rat(" 3 ").unwrap(), BigRational::from_integer(3.into()));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("a/b").is_err());
        assert!(parse_rat("").is_err());
    }

    #[test]
    fn integer_string_forms() {
        assert_eq!(parse_int("-12").unwrap().to_string(), "-12");
        assert!(parse_int("1.5").is_err());
        let one: BigInt = One::one();
        assert_eq!(parse_int("1").unwrap(), one);
    }

    #[test]
    fn negative_reduction_is_canonical() {
        // Ratio normalizes the sign into the numerator.
        assert_eq!(parse_rat("3/-6").unwrap().to_string(), "-1/2");
    }
}
