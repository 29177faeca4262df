//! Exact scalars: polynomials in the transcendental symbols with `ℚ(θ)`
//! coefficients.
//!
//! A [`Scalar`] models one real number built from the coefficient field's
//! ingredients, stored as a map from exponent vectors (one entry per declared
//! symbol) to nonzero `ℚ(θ)` coefficients. Because the symbols are
//! algebraically independent over the algebraic closure of ℚ, two scalars are
//! equal as real numbers exactly when their term maps are equal, so equality,
//! hashing and ordering are structural. The symbols are assumed positive, so
//! a term's sign is the sign of its coefficient.

use crate::characters::field::{CoefficientField, FieldElem, Sign};
use crate::characters::CharacterError;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A polynomial in the positive transcendental symbols with `ℚ(θ)`
/// coefficients; the exact model of one character value.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawScalar", into = "RawScalar")]
pub struct Scalar {
    /// Exponent vector over the symbols → nonzero coefficient in `ℚ(θ)`.
    terms: BTreeMap<Vec<u32>, FieldElem>,
}

#[derive(Clone, Serialize, Deserialize)]
struct RawTerm {
    powers: Vec<u32>,
    #[serde(with = "crate::jsonnum::ratvec")]
    coeff: Vec<BigRational>,
}

#[derive(Clone, Serialize, Deserialize)]
struct RawScalar {
    terms: Vec<RawTerm>,
}

impl TryFrom<RawScalar> for Scalar {
    type Error = CharacterError;

    fn try_from(raw: RawScalar) -> Result<Self, CharacterError> {
        let mut terms = BTreeMap::new();
        for t in raw.terms {
            if t.coeff.is_empty() {
                return Err(CharacterError::Unsupported(
                    "scalar term has an empty coefficient vector".to_string(),
                ));
            }
            if t.coeff.iter().all(BigRational::is_zero) {
                continue;
            }
            if terms.insert(t.powers.clone(), t.coeff).is_some() {
                return Err(CharacterError::Unsupported(format!(
                    "duplicate monomial {:?} in scalar",
                    t.powers
                )));
            }
        }
        let s = Scalar { terms };
        s.check_internal_consistency()?;
        Ok(s)
    }
}

impl From<Scalar> for RawScalar {
    fn from(s: Scalar) -> Self {
        RawScalar {
            terms: s
                .terms
                .into_iter()
                .map(|(powers, coeff)| RawTerm { powers, coeff })
                .collect(),
        }
    }
}

impl Scalar {
    /// The zero scalar (valid in every coefficient field).
    pub fn zero() -> Self {
        Scalar::default()
    }

    /// Constant scalar from a `ℚ(θ)` element.
    pub fn from_field_elem(field: &CoefficientField, value: FieldElem) -> Self {
        let mut s = Scalar::zero();
        if !CoefficientField::elem_is_zero(&value) {
            s.terms.insert(vec![0; field.num_symbols()], value);
        }
        s
    }

    pub fn from_rational(field: &CoefficientField, q: BigRational) -> Self {
        Self::from_field_elem(field, field.elem_from_rational(q))
    }

    pub fn from_int(field: &CoefficientField, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(n.into()))
    }

    pub fn one(field: &CoefficientField) -> Self {
        Self::from_int(field, 1)
    }

    /// The algebraic generator θ as a scalar.
    pub fn theta(field: &CoefficientField) -> Result<Self, CharacterError> {
        Ok(Self::from_field_elem(field, field.elem_theta()?))
    }

    /// The transcendental symbol with the given index as a scalar.
    pub fn symbol(field: &CoefficientField, index: usize) -> Result<Self, CharacterError> {
        if index >= field.num_symbols() {
            return Err(CharacterError::Unsupported(format!(
                "symbol index {index} out of range ({} symbols)",
                field.num_symbols()
            )));
        }
        let mut powers = vec![0u32; field.num_symbols()];
        powers[index] = 1;
        let mut s = Scalar::zero();
        s.terms.insert(powers, field.elem_one());
        Ok(s)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterate `(exponent vector, coefficient)` pairs in ascending
    /// lexicographic order of the exponent vectors.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &FieldElem)> {
        self.terms.iter()
    }

    /// True when the scalar is a plain rational number (including zero).
    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.terms.len() > 1 {
            return None;
        }
        let (powers, coeff) = self.terms.iter().next().expect("one term");
        if powers.iter().any(|&e| e != 0) {
            return None;
        }
        CoefficientField::elem_as_rational(coeff)
    }

    /// True when no coefficient involves θ (the scalar lies in `ℚ[τ₁,…,τ_k]`).
    pub fn is_theta_free(&self) -> bool {
        self.terms.values().all(CoefficientField::elem_is_rational)
    }

    /// True when no transcendental symbol occurs (the scalar lies in `ℚ(θ)`).
    pub fn is_symbol_free(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&p| p == 0))
    }

    /// Coefficient of the constant monomial (all exponents zero).
    pub fn constant_elem(&self, field: &CoefficientField) -> FieldElem {
        self.terms
            .get(&vec![0u32; field.num_symbols()])
            .cloned()
            .unwrap_or_else(|| field.elem_zero())
    }

    /// Validate this scalar against a field: exponent vectors must have one
    /// entry per symbol, coefficients must have the power-basis length, and
    /// stored coefficients must be nonzero.
    pub fn check_in(&self, field: &CoefficientField) -> Result<(), CharacterError> {
        for (e, c) in &self.terms {
            if e.len() != field.num_symbols() || c.len() != field.theta_degree() {
                return Err(CharacterError::FieldMismatch);
            }
            if CoefficientField::elem_is_zero(c) {
                return Err(CharacterError::FieldMismatch);
            }
        }
        Ok(())
    }

    fn check_internal_consistency(&self) -> Result<(), CharacterError> {
        let mut shape: Option<(usize, usize)> = None;
        for (e, c) in &self.terms {
            let this = (e.len(), c.len());
            match shape {
                None => shape = Some(this),
                Some(s) if s != this => {
                    return Err(CharacterError::Unsupported(
                        "inconsistent term shapes in scalar".to_string(),
                    ))
                }
                _ => {}
            }
        }
        Ok(())
    }

    fn insert_accumulate(&mut self, field: &CoefficientField, powers: Vec<u32>, delta: FieldElem) {
        if CoefficientField::elem_is_zero(&delta) {
            return;
        }
        match self.terms.remove(&powers) {
            None => {
                self.terms.insert(powers, delta);
            }
            Some(existing) => {
                let sum = field.elem_add(&existing, &delta);
                if !CoefficientField::elem_is_zero(&sum) {
                    self.terms.insert(powers, sum);
                }
            }
        }
    }

    pub fn add(&self, other: &Scalar, field: &CoefficientField) -> Scalar {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_accumulate(field, e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self, field: &CoefficientField) -> Scalar {
        let mut out = Scalar::zero();
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), field.elem_neg(c));
        }
        out
    }

    pub fn sub(&self, other: &Scalar, field: &CoefficientField) -> Scalar {
        self.add(&other.neg(field), field)
    }

    pub fn scale_rational(&self, s: &BigRational, field: &CoefficientField) -> Scalar {
        if s.is_zero() {
            return Scalar::zero();
        }
        let mut out = Scalar::zero();
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), field.elem_scale(c, s));
        }
        out
    }

    pub fn scale_int(&self, n: &BigInt, field: &CoefficientField) -> Scalar {
        self.scale_rational(&BigRational::from_integer(n.clone()), field)
    }

    /// Multiply by a `ℚ(θ)` element.
    pub fn mul_field_elem(&self, x: &FieldElem, field: &CoefficientField) -> Scalar {
        let mut out = Scalar::zero();
        for (e, c) in &self.terms {
            out.insert_accumulate(field, e.clone(), field.elem_mul(c, x));
        }
        out
    }

    pub fn mul(&self, other: &Scalar, field: &CoefficientField) -> Scalar {
        let mut out = Scalar::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let powers: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.insert_accumulate(field, powers, field.elem_mul(ca, cb));
            }
        }
        out
    }

    /// Exact polynomial division. Returns `Ok(Some(q))` with `self = q·den`
    /// when the quotient exists in the polynomial ring, `Ok(None)` when it
    /// does not, and an error only for a zero divisor.
    ///
    /// Works by peeling lexicographic leading terms: the leading monomial of
    /// a product is the product of leading monomials (the coefficients live
    /// in a field, so there are no zero divisors), hence a true quotient is
    /// found and anything else aborts.
    pub fn div_exact(
        &self,
        den: &Scalar,
        field: &CoefficientField,
    ) -> Result<Option<Scalar>, CharacterError> {
        if den.is_zero() {
            return Err(CharacterError::DivisionByZero);
        }
        let (den_lead_e, den_lead_c) = den.terms.iter().next_back().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quot = Scalar::zero();
        while !rem.is_zero() {
            let (rem_lead_e, rem_lead_c) = {
                let (e, c) = rem.terms.iter().next_back().expect("nonzero remainder");
                (e.clone(), c.clone())
            };
            if rem_lead_e.len() != den_lead_e.len()
                || rem_lead_e.iter().zip(den_lead_e).any(|(a, b)| a < b)
            {
                return Ok(None);
            }
            let q_powers: Vec<u32> = rem_lead_e.iter().zip(den_lead_e).map(|(a, b)| a - b).collect();
            let q_coeff = field.elem_div(&rem_lead_c, den_lead_c)?;
            let mut q_term = Scalar::zero();
            q_term.terms.insert(q_powers, q_coeff);
            rem = rem.sub(&q_term.mul(den, field), field);
            quot = quot.add(&q_term, field);
        }
        Ok(Some(quot))
    }

    /// Exact sign as a real number, when determinable by the positive-symbol
    /// rule: the symbols are positive, so each term carries the sign of its
    /// coefficient; if every term agrees the sum does too. Mixed signs
    /// return `None` (undetermined) rather than guessing.
    pub fn sign(&self, field: &CoefficientField) -> Option<Sign> {
        if self.terms.is_empty() {
            return Some(Sign::Zero);
        }
        let mut overall: Option<Sign> = None;
        for c in self.terms.values() {
            let s = field.elem_sign(c);
            debug_assert!(!s.is_zero(), "stored coefficients are nonzero");
            match overall {
                None => overall = Some(s),
                Some(prev) if prev != s => return None,
                _ => {}
            }
        }
        overall
    }

    /// Render as text using the field's symbol names, e.g. `"2·pi + θ"`.
    pub fn render(&self, field: &CoefficientField) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (e, c) in self.terms.iter().rev() {
            let mono = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p != 0)
                .map(|(i, &p)| {
                    let name = &field.symbols()[i];
                    if p == 1 {
                        name.clone()
                    } else {
                        format!("{name}^{p}")
                    }
                })
                .collect::<Vec<_>>()
                .join("·");
            let coeff_str = field.format_elem(c);
            let part = if mono.is_empty() {
                coeff_str
            } else if coeff_str == "1" {
                mono
            } else if coeff_str == "-1" {
                format!("-{mono}")
            } else if coeff_str.contains(' ') {
                format!("({coeff_str})·{mono}")
            } else {
                format!("{coeff_str}·{mono}")
            };
            parts.push(part);
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::characters::field::AlgebraicGenerator;

    fn pi_field() -> CoefficientField {
        CoefficientField::new(None, vec!["pi".into()]).unwrap()
    }

    fn sqrt2_pi_field() -> CoefficientField {
        CoefficientField::new(
            Some(AlgebraicGenerator::square_root_of(2).unwrap()),
            vec!["pi".into()],
        )
        .unwrap()
    }

    #[test]
    fn addition_cancels_to_zero() {
        let f = pi_field();
        let pi = Scalar::symbol(&f, 0).unwrap();
        let x = Scalar::from_int(&f, 3).add(&pi, &f);
        let y = x.sub(&x, &f);
        assert!(y.is_zero());
        assert_eq!(y, Scalar::zero());
    }

    #[test]
    fn product_difference_of_squares() {
        let f = pi_field();
        let one = Scalar::one(&f);
        let pi = Scalar::symbol(&f, 0).unwrap();
        // (1 + π)(1 − π) = 1 − π².
        let lhs = one.add(&pi, &f).mul(&one.sub(&pi, &f), &f);
        let pi_sq = pi.mul(&pi, &f);
        assert_eq!(lhs, one.sub(&pi_sq, &f));
    }

    #[test]
    fn exact_division() {
        let f = CoefficientField::new(None, vec!["x".into(), "y".into()]).unwrap();
        let x = Scalar::symbol(&f, 0).unwrap();
        let y = Scalar::symbol(&f, 1).unwrap();
        // (x² − y²)/(x − y) = x + y.
        let num = x.mul(&x, &f).sub(&y.mul(&y, &f), &f);
        let den = x.sub(&y, &f);
        let quot = num.div_exact(&den, &f).unwrap().unwrap();
        assert_eq!(quot, x.add(&y, &f));
        // x is not divisible by y.
        assert!(x.div_exact(&y, &f).unwrap().is_none());
        // x² + 1 is not divisible by x.
        let num2 = x.mul(&x, &f).add(&Scalar::one(&f), &f);
        assert!(num2.div_exact(&x, &f).unwrap().is_none());
        // Division by zero is an error.
        assert!(matches!(
            x.div_exact(&Scalar::zero(), &f),
            Err(CharacterError::DivisionByZero)
        ));
    }

    #[test]
    fn division_with_algebraic_coefficients() {
        let f = sqrt2_pi_field();
        let pi = Scalar::symbol(&f, 0).unwrap();
        let theta = Scalar::theta(&f).unwrap();
        // ((1+√2)·π) / π = 1+√2 and /(1+√2) = π.
        let c = Scalar::one(&f).add(&theta, &f);
        let prod = c.mul(&pi, &f);
        assert_eq!(prod.div_exact(&pi, &f).unwrap().unwrap(), c);
        assert_eq!(prod.div_exact(&c, &f).unwrap().unwrap(), pi);
    }

    #[test]
    fn sign_rule() {
        let f = sqrt2_pi_field();
        let pi = Scalar::symbol(&f, 0).unwrap();
        let theta = Scalar::theta(&f).unwrap();
        let two = Scalar::from_int(&f, 2);
        // 2 + 3π > 0.
        let a = two.add(&pi.scale_int(&3.into(), &f), &f);
        assert_eq!(a.sign(&f), Some(Sign::Positive));
        // −2 − π < 0.
        assert_eq!(a.neg(&f).sign(&f), Some(Sign::Negative));
        // 1 − π has mixed term signs: undetermined under the term rule.
        assert_eq!(Scalar::one(&f).sub(&pi, &f).sign(&f), None);
        // (√2 − 1)·π + 1 > 0: the coefficient sign needs bisection.
        let c = theta.sub(&Scalar::one(&f), &f).mul(&pi, &f).add(&Scalar::one(&f), &f);
        assert_eq!(c.sign(&f), Some(Sign::Positive));
        // Zero.
        assert_eq!(Scalar::zero().sign(&f), Some(Sign::Zero));
    }

    #[test]
    fn rationality_predicates() {
        let f = sqrt2_pi_field();
        let half = Scalar::from_rational(&f, BigRational::new(1.into(), 2.into()));
        assert!(half.is_rational());
        assert_eq!(half.as_rational().unwrap(), BigRational::new(1.into(), 2.into()));
        assert!(Scalar::zero().is_rational());

        let pi = Scalar::symbol(&f, 0).unwrap();
        assert!(!pi.is_rational());
        assert!(pi.is_theta_free());
        assert!(!pi.is_symbol_free());

        let theta = Scalar::theta(&f).unwrap();
        assert!(!theta.is_rational());
        assert!(!theta.is_theta_free());
        assert!(theta.is_symbol_free());
    }

    #[test]
    fn serde_roundtrip_and_duplicate_rejection() {
        let f = sqrt2_pi_field();
        let pi = Scalar::symbol(&f, 0).unwrap();
        let s = Scalar::theta(&f).unwrap().add(&pi.scale_int(&2.into(), &f), &f);
        let json = serde_json::to_string(&s).unwrap();
        let back: Scalar = serde_json::from_str(&json).unwrap();
        assert_eq!(s, back);
        back.check_in(&f).unwrap();

        let dup = r#"{"terms":[{"powers":[1],"coeff":["1"]},{"powers":[1],"coeff":["2"]}]}"#;
        assert!(serde_json::from_str::<Scalar>(dup).is_err());

        // Zero coefficients are normalized away at parse time.
        let zero = r#"{"terms":[{"powers":[1],"coeff":["0"]}]}"#;
        let parsed: Scalar = serde_json::from_str(zero).unwrap();
        assert!(parsed.is_zero());
    }

    #[test]
    fn rendering() {
        let f = sqrt2_pi_field();
        let pi = Scalar::symbol(&f, 0).unwrap();
        let theta = Scalar::theta(&f).unwrap();
        let s = pi.scale_int(&2.into(), &f).add(&theta, &f);
        assert_eq!(s.render(&f), "2·pi + θ");
        let t = Scalar::one(&f).add(&theta, &f).mul(&pi, &f);
        assert_eq!(t.render(&f), "(1 + θ)·pi");
        assert_eq!(Scalar::zero().render(&f), "0");
        let neg = pi.neg(&f).sub(&Scalar::from_int(&f, 3), &f);
        assert_eq!(neg.render(&f), "-pi - 3");
    }
}
