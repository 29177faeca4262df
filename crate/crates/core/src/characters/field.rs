//! Coefficient fields `ℚ(θ)(τ₁,…,τ_k)` for exact character arithmetic.
//!
//! A [`CoefficientField`] has two independent parts:
//!
//! * an optional real algebraic generator θ, given by a monic irreducible
//!   minimal polynomial of degree 2 or 3 over ℚ together with a rational
//!   isolating interval that pins down exactly one real root;
//! * a list of named symbols τ₁,…,τ_k that are treated as algebraically
//!   independent transcendentals over the algebraic closure of ℚ, and are
//!   assumed positive for sign purposes.
//!
//! Elements of `ℚ(θ)` ([`FieldElem`]) are rational coordinate vectors in the
//! power basis `1, θ, …, θ^{d−1}`. Because the minimal polynomial is
//! irreducible, an element is zero exactly when its coordinate vector is
//! zero, and a nonzero element's sign is decided by bisecting the isolating
//! interval with exact interval arithmetic — no floating point anywhere.

use crate::characters::CharacterError;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;

/// An element of `ℚ(θ)`: rational coordinates in the power basis of θ.
///
/// The vector length always equals [`CoefficientField::theta_degree`]
/// (length 1 when the field has no algebraic part, i.e. the element is a
/// plain rational).
pub type FieldElem = Vec<BigRational>;

/// Exact sign of a real quantity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_rational(r: &BigRational) -> Sign {
        if r.is_zero() {
            Sign::Zero
        } else if r.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Negative
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }
}

/// Hard cap on bisection steps when deciding the sign of a nonzero element.
/// Termination is guaranteed mathematically (the interval shrinks to the
/// root and the element is continuous and nonzero there); the cap only
/// guards against corrupted state.
const MAX_BISECT: usize = 512;

/// Cap on the integer-root search used to certify irreducibility. If the
/// root bound exceeds this, field construction fails rather than guessing.
const ROOT_SEARCH_CAP: u64 = 1_000_000;

/// A real algebraic number θ: monic irreducible minimal polynomial of
/// degree 2 or 3 plus an isolating interval containing exactly one real root.
///
/// Construction validates everything: the degree window, irreducibility over
/// ℚ (for degrees ≤ 3 this is exactly the absence of rational roots), and —
/// via a Sturm sequence — that the open interval `(lo, hi)` isolates a
/// single root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawAlgebraicGenerator", into = "RawAlgebraicGenerator")]
pub struct AlgebraicGenerator {
    /// Ascending coefficients `c₀ … c_{d−1}` of `x^d + c_{d−1}x^{d−1} + … + c₀`.
    lower: Vec<BigRational>,
    lo: BigRational,
    hi: BigRational,
}

#[derive(Clone, Serialize, Deserialize)]
struct RawAlgebraicGenerator {
    /// Ascending coefficients below the monic leading term.
    #[serde(with = "crate::jsonnum::ratvec")]
    min_poly_lower: Vec<BigRational>,
    #[serde(with = "crate::jsonnum::rat")]
    isolating_lo: BigRational,
    #[serde(with = "crate::jsonnum::rat")]
    isolating_hi: BigRational,
}

impl TryFrom<RawAlgebraicGenerator> for AlgebraicGenerator {
    type Error = CharacterError;

    fn try_from(raw: RawAlgebraicGenerator) -> Result<Self, CharacterError> {
        AlgebraicGenerator::new(raw.min_poly_lower, raw.isolating_lo, raw.isolating_hi)
    }
}

impl From<AlgebraicGenerator> for RawAlgebraicGenerator {
    fn from(g: AlgebraicGenerator) -> Self {
        RawAlgebraicGenerator {
            min_poly_lower: g.lower,
            isolating_lo: g.lo,
            isolating_hi: g.hi,
        }
    }
}

impl AlgebraicGenerator {
    /// Validate and build a generator from the lower coefficients of its
    /// monic minimal polynomial and an isolating interval.
    pub fn new(
        lower: Vec<BigRational>,
        lo: BigRational,
        hi: BigRational,
    ) -> Result<Self, CharacterError> {
        let d = lower.len();
        if !(2..=3).contains(&d) {
            return Err(CharacterError::MinPolyDegree(d));
        }
        if let Some(root) = rational_root(&lower)? {
            return Err(CharacterError::MinPolyReducible(root));
        }
        if lo >= hi {
            return Err(CharacterError::IsolatingInterval(format!(
                "lower endpoint {lo} is not below upper endpoint {hi}"
            )));
        }
        let full = full_poly(&lower);
        if poly_eval(&full, &lo).is_zero() || poly_eval(&full, &hi).is_zero() {
            return Err(CharacterError::IsolatingInterval(
                "an endpoint is a root of the minimal polynomial".to_string(),
            ));
        }
        let roots = count_real_roots_between(&full, &lo, &hi);
        if roots != 1 {
            return Err(CharacterError::IsolatingInterval(format!(
                "interval ({lo}, {hi}) contains {roots} real roots, need exactly 1"
            )));
        }
        Ok(AlgebraicGenerator { lower, lo, hi })
    }

    /// `θ = √n` for an integer `n ≥ 2` that is not a perfect square.
    pub fn square_root_of(n: i64) -> Result<Self, CharacterError> {
        let nq = BigRational::from_integer(n.into());
        Self::new(
            vec![-nq.clone(), BigRational::zero()],
            BigRational::zero(),
            nq.max(BigRational::from_integer(2.into())),
        )
    }

    /// `θ = n^{1/3}` for an integer `n ≥ 2` that is not a perfect cube.
    pub fn cube_root_of(n: i64) -> Result<Self, CharacterError> {
        let nq = BigRational::from_integer(n.into());
        Self::new(
            vec![-nq.clone(), BigRational::zero(), BigRational::zero()],
            BigRational::zero(),
            nq.max(BigRational::from_integer(2.into())),
        )
    }

    /// Degree of the minimal polynomial (2 or 3).
    pub fn degree(&self) -> usize {
        self.lower.len()
    }

    /// Ascending coefficients below the monic leading term.
    pub fn min_poly_lower(&self) -> &[BigRational] {
        &self.lower
    }

    /// The validated isolating interval `(lo, hi)`.
    pub fn isolating_interval(&self) -> (&BigRational, &BigRational) {
        (&self.lo, &self.hi)
    }

    /// Exact sign of `c(θ)` for a polynomial `c` of degree `< d`, given by
    /// ascending coefficients. Decided by interval arithmetic over the
    /// isolating interval, bisecting until the enclosure excludes zero.
    pub(crate) fn sign_of(&self, coeffs: &[BigRational]) -> Sign {
        let c = poly_trim(coeffs.to_vec());
        if c.is_empty() {
            return Sign::Zero;
        }
        if c.len() == 1 {
            return Sign::of_rational(&c[0]);
        }
        let p = full_poly(&self.lower);
        let mut lo = self.lo.clone();
        let mut hi = self.hi.clone();
        let sign_lo = Sign::of_rational(&poly_eval(&p, &lo));
        let two = BigRational::from_integer(2.into());
        for _ in 0..MAX_BISECT {
            let (enc_lo, enc_hi) = interval_eval(&c, &lo, &hi);
            if enc_lo.is_positive() {
                return Sign::Positive;
            }
            if enc_hi.is_negative() {
                return Sign::Negative;
            }
            let mid = (&lo + &hi) / &two;
            let pm = poly_eval(&p, &mid);
            // The minimal polynomial is irreducible of degree ≥ 2, so it has
            // no rational roots and the midpoint can never be one.
            assert!(!pm.is_zero(), "rational root of an irreducible polynomial");
            if Sign::of_rational(&pm) == sign_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        panic!("sign determination did not converge within {MAX_BISECT} bisections");
    }
}

/// The coefficient field `ℚ(θ)(τ₁,…,τ_k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCoefficientField", into = "RawCoefficientField")]
pub struct CoefficientField {
    algebraic: Option<AlgebraicGenerator>,
    symbols: Vec<String>,
}

#[derive(Clone, Serialize, Deserialize)]
struct RawCoefficientField {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    algebraic: Option<AlgebraicGenerator>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    symbols: Vec<String>,
}

impl TryFrom<RawCoefficientField> for CoefficientField {
    type Error = CharacterError;

    fn try_from(raw: RawCoefficientField) -> Result<Self, CharacterError> {
        CoefficientField::new(raw.algebraic, raw.symbols)
    }
}

impl From<CoefficientField> for RawCoefficientField {
    fn from(f: CoefficientField) -> Self {
        RawCoefficientField {
            algebraic: f.algebraic,
            symbols: f.symbols,
        }
    }
}

impl Default for CoefficientField {
    fn default() -> Self {
        Self::rational()
    }
}

impl CoefficientField {
    /// The plain rational field ℚ: no algebraic part, no symbols.
    pub fn rational() -> Self {
        CoefficientField {
            algebraic: None,
            symbols: Vec::new(),
        }
    }

    /// Build a field from an optional algebraic generator and a list of
    /// transcendental symbol names (which must be nonempty and distinct).
    pub fn new(
        algebraic: Option<AlgebraicGenerator>,
        symbols: Vec<String>,
    ) -> Result<Self, CharacterError> {
        let mut seen = BTreeSet::new();
        for s in &symbols {
            if s.is_empty() || !seen.insert(s.clone()) {
                return Err(CharacterError::BadSymbol(s.clone()));
            }
        }
        Ok(CoefficientField { algebraic, symbols })
    }

    pub fn algebraic(&self) -> Option<&AlgebraicGenerator> {
        self.algebraic.as_ref()
    }

    /// Dimension of `ℚ(θ)` over ℚ: 1 without an algebraic part, else the
    /// minimal polynomial degree. Every [`FieldElem`] has this length.
    pub fn theta_degree(&self) -> usize {
        self.algebraic.as_ref().map_or(1, AlgebraicGenerator::degree)
    }

    pub fn num_symbols(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    // ---- element constructors ----

    pub fn elem_zero(&self) -> FieldElem {
        vec![BigRational::zero(); self.theta_degree()]
    }

    pub fn elem_one(&self) -> FieldElem {
        self.elem_from_rational(BigRational::one())
    }

    pub fn elem_from_rational(&self, q: BigRational) -> FieldElem {
        let mut v = self.elem_zero();
        v[0] = q;
        v
    }

    pub fn elem_from_int(&self, n: i64) -> FieldElem {
        self.elem_from_rational(BigRational::from_integer(n.into()))
    }

    /// The generator θ itself, if the field has one.
    pub fn elem_theta(&self) -> Result<FieldElem, CharacterError> {
        if self.theta_degree() < 2 {
            return Err(CharacterError::NoAlgebraicPart);
        }
        let mut v = self.elem_zero();
        v[1] = BigRational::one();
        Ok(v)
    }

    // ---- element predicates ----

    pub fn elem_is_zero(a: &FieldElem) -> bool {
        a.iter().all(BigRational::is_zero)
    }

    /// True when the element lies in ℚ (all θ-coordinates above 1 vanish).
    pub fn elem_is_rational(a: &FieldElem) -> bool {
        a.iter().skip(1).all(BigRational::is_zero)
    }

    pub fn elem_as_rational(a: &FieldElem) -> Option<BigRational> {
        if Self::elem_is_rational(a) {
            Some(a[0].clone())
        } else {
            None
        }
    }

    // ---- element arithmetic ----

    pub fn elem_add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.check_len(a);
        self.check_len(b);
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn elem_sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.check_len(a);
        self.check_len(b);
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn elem_neg(&self, a: &FieldElem) -> FieldElem {
        self.check_len(a);
        a.iter().map(|x| -x).collect()
    }

    pub fn elem_scale(&self, a: &FieldElem, s: &BigRational) -> FieldElem {
        self.check_len(a);
        a.iter().map(|x| x * s).collect()
    }

    /// Product in `ℚ(θ)`: convolution followed by reduction modulo the
    /// minimal polynomial (`θ^d ↦ −(c_{d−1}θ^{d−1} + … + c₀)`).
    pub fn elem_mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        self.check_len(a);
        self.check_len(b);
        let d = self.theta_degree();
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        if let Some(generator) = &self.algebraic {
            for i in (d..prod.len()).rev() {
                if prod[i].is_zero() {
                    continue;
                }
                let c = std::mem::replace(&mut prod[i], BigRational::zero());
                for (j, low) in generator.lower.iter().enumerate() {
                    let delta = &c * low;
                    prod[i - d + j] -= delta;
                }
            }
        }
        prod.truncate(d);
        prod
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in
    /// `ℚ[x]` against the (irreducible) minimal polynomial.
    pub fn elem_inv(&self, a: &FieldElem) -> Result<FieldElem, CharacterError> {
        self.check_len(a);
        if Self::elem_is_zero(a) {
            return Err(CharacterError::DivisionByZero);
        }
        let d = self.theta_degree();
        if d == 1 {
            return Ok(vec![a[0].recip()]);
        }
        let generator = self.algebraic.as_ref().expect("degree > 1 has a generator");
        let p = full_poly(&generator.lower);
        let (g, u, _) = poly_ext_gcd(&poly_trim(a.clone()), &p);
        // p is irreducible and deg a < deg p, so the gcd is a nonzero constant.
        assert!(g.len() == 1 && !g[0].is_zero(), "gcd with an irreducible modulus");
        let scale = g[0].recip();
        let (_, mut inv) = poly_divmod(&poly_scale(&u, &scale), &p);
        inv.resize(d, BigRational::zero());
        Ok(inv)
    }

    pub fn elem_div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem, CharacterError> {
        let binv = self.elem_inv(b)?;
        Ok(self.elem_mul(a, &binv))
    }

    /// Exact sign of the element as a real number.
    pub fn elem_sign(&self, a: &FieldElem) -> Sign {
        self.check_len(a);
        if Self::elem_is_zero(a) {
            return Sign::Zero;
        }
        if Self::elem_is_rational(a) {
            return Sign::of_rational(&a[0]);
        }
        self.algebraic
            .as_ref()
            .expect("irrational coordinates require an algebraic part")
            .sign_of(a)
    }

    /// Render an element as text, e.g. `"1/2 + 3·θ - θ^2"`.
    pub fn format_elem(&self, a: &FieldElem) -> String {
        self.check_len(a);
        let mut out = String::new();
        for (i, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            let power = match i {
                0 => String::new(),
                1 => "θ".to_string(),
                _ => format!("θ^{i}"),
            };
            if power.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&power);
            } else {
                out.push_str(&format!("{mag}·{power}"));
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }

    fn check_len(&self, a: &FieldElem) {
        assert_eq!(
            a.len(),
            self.theta_degree(),
            "field element has the wrong coordinate length"
        );
    }
}

// ---- rational polynomial helpers (ascending coefficient vectors) ----

fn poly_trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(BigRational::is_zero) {
        v.pop();
    }
    v
}

/// Full ascending coefficient vector of the monic polynomial with the given
/// lower coefficients.
fn full_poly(lower: &[BigRational]) -> Vec<BigRational> {
    let mut p = lower.to_vec();
    p.push(BigRational::one());
    p
}

fn poly_eval(p: &[BigRational], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in p.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

fn poly_scale(p: &[BigRational], s: &BigRational) -> Vec<BigRational> {
    p.iter().map(|c| c * s).collect()
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).unwrap_or(&zero);
        let y = b.get(i).unwrap_or(&zero);
        out.push(x - y);
    }
    poly_trim(out)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    poly_trim(out)
}

/// Quotient and remainder in `ℚ[x]`; the divisor must be nonzero.
fn poly_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let den = poly_trim(den.to_vec());
    assert!(!den.is_empty(), "polynomial division by zero");
    let mut rem = poly_trim(num.to_vec());
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - den.len() + 1];
    let lead = den.last().expect("nonzero divisor").clone();
    while rem.len() >= den.len() && !rem.is_empty() {
        let shift = rem.len() - den.len();
        let factor = rem.last().expect("nonempty remainder") / &lead;
        quot[shift] = factor.clone();
        let mut scaled = vec![BigRational::zero(); shift];
        scaled.extend(poly_scale(&den, &factor));
        rem = poly_sub(&rem, &scaled);
    }
    (poly_trim(quot), rem)
}

fn poly_derivative(p: &[BigRational]) -> Vec<BigRational> {
    poly_trim(
        p.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(i.into()))
            .collect(),
    )
}

/// Extended Euclid in `ℚ[x]`: returns `(g, u, v)` with `u·a + v·b = g`.
fn poly_ext_gcd(
    a: &[BigRational],
    b: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>, Vec<BigRational>) {
    let one = vec![BigRational::one()];
    let (mut r0, mut r1) = (poly_trim(a.to_vec()), poly_trim(b.to_vec()));
    let (mut u0, mut u1) = (one.clone(), Vec::new());
    let (mut v0, mut v1) = (Vec::new(), one);
    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1);
        let new_u = poly_sub(&u0, &poly_mul(&q, &u1));
        let new_v = poly_sub(&v0, &poly_mul(&q, &v1));
        r0 = std::mem::replace(&mut r1, r);
        u0 = std::mem::replace(&mut u1, new_u);
        v0 = std::mem::replace(&mut v1, new_v);
    }
    (r0, u0, v0)
}

/// Interval product `[a] × [b]` with exact rational endpoints.
fn interval_mul(
    a: (&BigRational, &BigRational),
    b: (&BigRational, &BigRational),
) -> (BigRational, BigRational) {
    let products = [a.0 * b.0, a.0 * b.1, a.1 * b.0, a.1 * b.1];
    let lo = products.iter().min().expect("nonempty").clone();
    let hi = products.iter().max().expect("nonempty").clone();
    (lo, hi)
}

/// Interval Horner evaluation: an enclosure of `{p(x) : x ∈ [lo, hi]}`.
fn interval_eval(p: &[BigRational], lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
    let mut acc = (BigRational::zero(), BigRational::zero());
    for c in p.iter().rev() {
        let prod = interval_mul((&acc.0, &acc.1), (lo, hi));
        acc = (prod.0 + c, prod.1 + c);
    }
    acc
}

/// Number of distinct real roots of `p` in the open interval `(lo, hi)`,
/// both endpoints assumed to be non-roots. Sturm's theorem with exact
/// rational arithmetic.
fn count_real_roots_between(p: &[BigRational], lo: &BigRational, hi: &BigRational) -> usize {
    let mut chain = vec![poly_trim(p.to_vec()), poly_derivative(p)];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            break;
        }
        let (_, r) = poly_divmod(&chain[n - 2], &chain[n - 1]);
        chain.push(poly_scale(&r, &-BigRational::one()));
    }
    let variations = |x: &BigRational| {
        let signs: Vec<Sign> = chain
            .iter()
            .map(|q| Sign::of_rational(&poly_eval(q, x)))
            .filter(|s| !s.is_zero())
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    variations(lo).saturating_sub(variations(hi))
}

/// If the monic polynomial with the given lower coefficients has a rational
/// root, return one; `Ok(None)` certifies there is none. For degrees 2 and 3
/// the absence of rational roots is exactly irreducibility over ℚ.
fn rational_root(lower: &[BigRational]) -> Result<Option<BigRational>, CharacterError> {
    let d = lower.len();
    if lower[0].is_zero() {
        return Ok(Some(BigRational::zero()));
    }
    // Substitute x = y/M with M the lcm of the coefficient denominators:
    // the transformed polynomial y^d + Σ cᵢ·M^{d−i}·yⁱ is monic with integer
    // coefficients, so its rational roots are integers dividing the constant
    // term, and the Cauchy bound 1 + max|bᵢ| caps their absolute value.
    let mut m = BigInt::one();
    for c in lower {
        m = m.lcm(c.denom());
    }
    let mut b = Vec::with_capacity(d);
    for (i, c) in lower.iter().enumerate() {
        let mut mpow = BigInt::one();
        for _ in 0..(d - i) {
            mpow *= &m;
        }
        let scaled = c * BigRational::from_integer(mpow);
        assert!(scaled.is_integer(), "denominator cleared by the lcm");
        b.push(scaled.to_integer());
    }
    let cauchy = BigInt::one() + b.iter().map(BigInt::abs).max().expect("d >= 2");
    if cauchy > BigInt::from(ROOT_SEARCH_CAP) {
        return Err(CharacterError::IrreducibilityBound(cauchy));
    }
    let eval = |y: &BigInt| -> BigInt {
        let mut acc = BigInt::one();
        for c in b.iter().rev() {
            acc = acc * y + c;
        }
        acc
    };
    let b0 = b[0].clone();
    let mut y = BigInt::one();
    while y <= cauchy {
        if (&b0 % &y).is_zero() {
            for candidate in [y.clone(), -y.clone()] {
                if eval(&candidate).is_zero() {
                    return Ok(Some(BigRational::new(candidate, m)));
                }
            }
        }
        y += 1u32;
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn qr(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn sqrt2_field() -> CoefficientField {
        CoefficientField::new(Some(AlgebraicGenerator::square_root_of(2).unwrap()), vec![])
            .unwrap()
    }

    #[test]
    fn rejects_wrong_degrees() {
        assert!(matches!(
            AlgebraicGenerator::new(vec![q(-2)], q(0), q(2)),
            Err(CharacterError::MinPolyDegree(1))
        ));
        assert!(matches!(
            AlgebraicGenerator::new(vec![q(-2), q(0), q(0), q(0)], q(0), q(2)),
            Err(CharacterError::MinPolyDegree(4))
        ));
    }

    #[test]
    fn rejects_reducible_polynomials() {
        // x² − 4 has the rational root 2.
        match AlgebraicGenerator::new(vec![q(-4), q(0)], q(0), q(3)) {
            Err(CharacterError::MinPolyReducible(r)) => assert_eq!(r.abs(), q(2)),
            other => panic!("expected reducibility error, got {other:?}"),
        }
        // x² − x has the root 0.
        assert!(matches!(
            AlgebraicGenerator::new(vec![q(0), q(-1)], q(0), q(2)),
            Err(CharacterError::MinPolyReducible(_))
        ));
        // x² − x/4 − 1/8 = (x − 1/2)(x + 1/4): a non-integer rational root.
        assert!(matches!(
            AlgebraicGenerator::new(vec![qr(-1, 8), qr(-1, 4)], q(0), q(1)),
            Err(CharacterError::MinPolyReducible(_))
        ));
    }

    #[test]
    fn rejects_bad_isolating_intervals() {
        // (−2, 2) contains both roots of x² − 2.
        assert!(matches!(
            AlgebraicGenerator::new(vec![q(-2), q(0)], q(-2), q(2)),
            Err(CharacterError::IsolatingInterval(_))
        ));
        // (2, 3) contains no root of x² − 2.
        assert!(matches!(
            AlgebraicGenerator::new(vec![q(-2), q(0)], q(2), q(3)),
            Err(CharacterError::IsolatingInterval(_))
        ));
        // x² + 1 has no real roots at all.
        assert!(matches!(
            AlgebraicGenerator::new(vec![q(1), q(0)], q(-2), q(2)),
            Err(CharacterError::IsolatingInterval(_))
        ));
        // Degenerate interval.
        assert!(matches!(
            AlgebraicGenerator::new(vec![q(-2), q(0)], q(2), q(1)),
            Err(CharacterError::IsolatingInterval(_))
        ));
    }

    #[test]
    fn sqrt2_arithmetic() {
        let f = sqrt2_field();
        let theta = f.elem_theta().unwrap();
        let one = f.elem_one();
        // (1 + √2)² = 3 + 2√2
        let s = f.elem_add(&one, &theta);
        let sq = f.elem_mul(&s, &s);
        assert_eq!(sq, vec![q(3), q(2)]);
        // (1 + √2)(−1 + √2) = 1
        let t = f.elem_sub(&theta, &one);
        assert_eq!(f.elem_mul(&s, &t), one);
        // 1/(1 + √2) = −1 + √2
        assert_eq!(f.elem_inv(&s).unwrap(), t);
        // 1/√2 = √2/2
        assert_eq!(f.elem_inv(&theta).unwrap(), vec![q(0), qr(1, 2)]);
        // θ² − 2 = 0 exactly.
        let theta_sq = f.elem_mul(&theta, &theta);
        assert!(CoefficientField::elem_is_zero(&f.elem_sub(&theta_sq, &f.elem_from_int(2))));
    }

    #[test]
    fn cube_root_arithmetic() {
        let f = CoefficientField::new(Some(AlgebraicGenerator::cube_root_of(2).unwrap()), vec![])
            .unwrap();
        let theta = f.elem_theta().unwrap();
        let theta2 = f.elem_mul(&theta, &theta);
        // θ·θ² = 2.
        assert_eq!(f.elem_mul(&theta, &theta2), f.elem_from_int(2));
        // 1/θ = θ²/2.
        let inv = f.elem_inv(&theta).unwrap();
        assert_eq!(inv, vec![q(0), q(0), qr(1, 2)]);
        // Inverse really inverts.
        assert_eq!(f.elem_mul(&theta, &inv), f.elem_one());
    }

    #[test]
    fn signs_via_bisection() {
        let f = sqrt2_field();
        let theta = f.elem_theta().unwrap();
        // √2 − 3/2 < 0 and √2 − 7/5 > 0 (1.4 < √2 ≈ 1.4142 < 1.5).
        let a = f.elem_sub(&theta, &f.elem_from_rational(qr(3, 2)));
        assert_eq!(f.elem_sign(&a), Sign::Negative);
        let b = f.elem_sub(&theta, &f.elem_from_rational(qr(7, 5)));
        assert_eq!(f.elem_sign(&b), Sign::Positive);
        assert_eq!(f.elem_sign(&f.elem_zero()), Sign::Zero);
        // A rational element takes the rational shortcut.
        assert_eq!(f.elem_sign(&f.elem_from_int(-5)), Sign::Negative);

        // Golden ratio φ = (1+√5)/2 ≈ 1.618: x² − x − 1 on (1, 2).
        let phi_gen = AlgebraicGenerator::new(vec![q(-1), q(-1)], q(1), q(2)).unwrap();
        let g = CoefficientField::new(Some(phi_gen), vec![]).unwrap();
        let phi = g.elem_theta().unwrap();
        let c = g.elem_sub(&phi, &g.elem_from_rational(qr(8, 5)));
        assert_eq!(g.elem_sign(&c), Sign::Positive);
        let d = g.elem_sub(&phi, &g.elem_from_rational(qr(13, 8)));
        assert_eq!(g.elem_sign(&d), Sign::Negative);
    }

    #[test]
    fn rational_field_division() {
        let f = CoefficientField::rational();
        assert_eq!(f.theta_degree(), 1);
        let a = f.elem_from_rational(qr(3, 4));
        let b = f.elem_from_int(6);
        assert_eq!(f.elem_div(&a, &b).unwrap(), vec![qr(1, 8)]);
        assert!(matches!(
            f.elem_inv(&f.elem_zero()),
            Err(CharacterError::DivisionByZero)
        ));
        assert!(f.elem_theta().is_err());
    }

    #[test]
    fn symbol_validation() {
        assert!(CoefficientField::new(None, vec!["pi".into(), "e".into()]).is_ok());
        assert!(matches!(
            CoefficientField::new(None, vec!["pi".into(), "pi".into()]),
            Err(CharacterError::BadSymbol(_))
        ));
        assert!(matches!(
            CoefficientField::new(None, vec!["".into()]),
            Err(CharacterError::BadSymbol(_))
        ));
    }

    #[test]
    fn serde_roundtrip_and_validation() {
        let f = CoefficientField::new(
            Some(AlgebraicGenerator::square_root_of(2).unwrap()),
            vec!["pi".into()],
        )
        .unwrap();
        let json = serde_json::to_string(&f).unwrap();
        let back: CoefficientField = serde_json::from_str(&json).unwrap();
        assert_eq!(f, back);

        // A reducible minimal polynomial is rejected at parse time.
        let bad = r#"{"algebraic":{"min_poly_lower":["-4","0"],"isolating_lo":"0","isolating_hi":"3"}}"#;
        assert!(serde_json::from_str::<CoefficientField>(bad).is_err());

        // Plain ℚ serializes compactly.
        let q_json = serde_json::to_string(&CoefficientField::rational()).unwrap();
        assert_eq!(q_json, "{}");
    }

    #[test]
    fn element_formatting() {
        let f = sqrt2_field();
        let e = vec![qr(1, 2), q(-3)];
        assert_eq!(f.format_elem(&e), "1/2 - 3·θ");
        assert_eq!(f.format_elem(&f.elem_zero()), "0");
        assert_eq!(f.format_elem(&f.elem_theta().unwrap()), "θ");
    }

    #[test]
    fn extended_gcd_identity() {
        // u·a + v·b = g for a = x² + 1, b = x³ − 2.
        let a = vec![q(1), q(0), q(1)];
        let b = vec![q(-2), q(0), q(0), q(1)];
        let (g, u, v) = poly_ext_gcd(&a, &b);
        let lhs = poly_sub(&poly_mul(&u, &a), &poly_scale(&poly_mul(&v, &b), &q(-1)));
        assert_eq!(poly_trim(lhs), poly_trim(g.clone()));
        assert_eq!(g.len(), 1, "coprime polynomials have a constant gcd");
    }

    #[test]
    fn sturm_counts_roots() {
        // x² − 2 has one root in (0, 2), two in (−2, 2), none in (2, 3).
        let p = vec![q(-2), q(0), q(1)];
        assert_eq!(count_real_roots_between(&p, &q(0), &q(2)), 1);
        assert_eq!(count_real_roots_between(&p, &q(-2), &q(2)), 2);
        assert_eq!(count_real_roots_between(&p, &q(2), &q(3)), 0);
        // x³ − x = x(x−1)(x+1) on (−2, 2) has three roots.
        let c = vec![q(0), q(-1), q(0), q(1)];
        assert_eq!(count_real_roots_between(&c, &q(-2), &q(2)), 3);
    }
}
