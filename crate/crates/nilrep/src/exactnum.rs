//! Exact scalars: rationals and simple algebraic extensions of them.
//!
//! A [`FieldSpec`] is either the rational field or a quotient
//! `Q[x]/(m(x))` with `m` monic of degree at least two and without
//! rational roots. Irreducibility beyond the rational-root test is the
//! caller's assertion; an inversion that stumbles on a nontrivial
//! factor reports [`Error::ReducibleModulus`] instead of returning a
//! wrong answer.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// The coefficient field: Q itself or a simple extension Q(a).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    /// Monic minimal polynomial, coefficients low to high including the
    /// leading 1. `None` means the base rationals.
    min_poly: Option<Vec<Rat>>,
}

impl FieldSpec {
    pub fn rationals() -> Arc<Self> {
        Arc::new(FieldSpec { min_poly: None })
    }

    /// Builds Q[x]/(m(x)). `min_poly` lists coefficients low to high,
    /// leading coefficient included.
    pub fn extension(min_poly: Vec<Rat>) -> Result<Arc<Self>> {
        if min_poly.len() < 3 {
            return Err(Error::InvalidField(
                "minimal polynomial must have degree at least 2".into(),
            ));
        }
        let lead = min_poly.last().unwrap();
        if !lead.is_one() {
            return Err(Error::InvalidField("minimal polynomial must be monic".into()));
        }
        if has_rational_root(&min_poly) {
            return Err(Error::InvalidField(
                "minimal polynomial has a rational root".into(),
            ));
        }
        Ok(Arc::new(FieldSpec { min_poly: Some(min_poly) }))
    }

    /// Q(i) = Q[x]/(x^2+1), the extension used throughout the fixtures.
    pub fn gaussian() -> Arc<Self> {
        FieldSpec::extension(vec![rat(1, 1), rat(0, 1), rat(1, 1)]).unwrap()
    }

    pub fn degree(&self) -> usize {
        match &self.min_poly {
            None => 1,
            Some(p) => p.len() - 1,
        }
    }

    pub fn is_rationals(&self) -> bool {
        self.min_poly.is_none()
    }

    pub fn min_poly(&self) -> Option<&[Rat]> {
        self.min_poly.as_deref()
    }
}

/// Tests for a rational root of a rational-coefficient polynomial by
/// clearing denominators and enumerating divisor candidates. Returns
/// `false` (no root found) when the integer coefficients are too large
/// to enumerate; irreducibility is the caller's assertion anyway.
fn has_rational_root(poly: &[Rat]) -> bool {
    let mut lcm = BigInt::one();
    for c in poly {
        lcm = num_integer::lcm(lcm, c.denom().clone());
    }
    let ints: Vec<BigInt> = poly.iter().map(|c| (c * Rat::from(lcm.clone())).to_integer()).collect();
    let eval = |x: &Rat| -> Rat {
        let mut acc = Rat::zero();
        for c in ints.iter().rev() {
            acc = acc * x + Rat::from(c.clone());
        }
        acc
    };
    if ints.first().map(|c| c.is_zero()).unwrap_or(false) {
        return true; // root at 0
    }
    let (Some(a0), Some(an)) = (
        ints.first().and_then(|c| i128::try_from(c).ok()),
        ints.last().and_then(|c| i128::try_from(c).ok()),
    ) else {
        return false;
    };
    let divisors = |n: i128| -> Vec<i128> {
        let n = n.abs();
        let mut out = Vec::new();
        let mut d = 1;
        while d * d <= n && d < 1_000_000 {
            if n % d == 0 {
                out.push(d);
                out.push(n / d);
            }
            d += 1;
        }
        out
    };
    for p in divisors(a0) {
        for &q in &divisors(an) {
            for sign in [1i128, -1] {
                let cand = Rat::new(BigInt::from(sign * p), BigInt::from(q));
                if eval(&cand).is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

/// An exact element of the coefficient field, stored as a polynomial in
/// the generator of degree below the extension degree.
#[derive(Debug, Clone)]
pub struct Scalar {
    field: Arc<FieldSpec>,
    coeffs: Vec<Rat>,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}
impl Eq for Scalar {}

impl Scalar {
    pub fn zero(field: &Arc<FieldSpec>) -> Self {
        Scalar { field: field.clone(), coeffs: vec![Rat::zero(); field.degree()] }
    }

    pub fn one(field: &Arc<FieldSpec>) -> Self {
        Scalar::from_rational(field, Rat::one())
    }

    pub fn from_rational(field: &Arc<FieldSpec>, r: Rat) -> Self {
        let mut coeffs = vec![Rat::zero(); field.degree()];
        coeffs[0] = r;
        Scalar { field: field.clone(), coeffs }
    }

    pub fn from_i64(field: &Arc<FieldSpec>, n: i64) -> Self {
        Scalar::from_rational(field, Rat::from(BigInt::from(n)))
    }

    pub fn from_frac(field: &Arc<FieldSpec>, n: i64, d: i64) -> Self {
        Scalar::from_rational(field, rat(n, d))
    }

    /// The generator `a` of the extension. Errors over the base field.
    pub fn generator(field: &Arc<FieldSpec>) -> Result<Self> {
        if field.degree() < 2 {
            return Err(Error::InvalidField("base field has no generator".into()));
        }
        let mut coeffs = vec![Rat::zero(); field.degree()];
        coeffs[1] = Rat::one();
        Ok(Scalar { field: field.clone(), coeffs })
    }

    pub fn from_coeffs(field: &Arc<FieldSpec>, mut coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.len() > field.degree() {
            return Err(Error::InvalidField("too many coefficients for the field".into()));
        }
        coeffs.resize(field.degree(), Rat::zero());
        Ok(Scalar { field: field.clone(), coeffs })
    }

    pub fn field(&self) -> &Arc<FieldSpec> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Rational part, provided the element lies in the prime field.
    pub fn as_rational(&self) -> Option<&Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_field(&self, other: &Scalar) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Scalar { field: self.field.clone(), coeffs })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Scalar { field: self.field.clone(), coeffs })
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_field(other)?;
        match self.field.min_poly() {
            None => Ok(Scalar {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &other.coeffs[0]],
            }),
            Some(m) => {
                let prod = poly_mul(&self.coeffs, &other.coeffs);
                let red = poly_rem(&prod, m);
                Scalar::from_coeffs(&self.field, red)
            }
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm
    /// against the minimal polynomial.
    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self.field.min_poly() {
            None => Ok(Scalar {
                field: self.field.clone(),
                coeffs: vec![self.coeffs[0].recip()],
            }),
            Some(m) => {
                let (g, _, t) = poly_ext_gcd(m, &self.coeffs);
                if poly_degree(&g) != Some(0) {
                    return Err(Error::ReducibleModulus(format!(
                        "gcd with the modulus has degree {:?}",
                        poly_degree(&g)
                    )));
                }
                let scale = g[0].recip();
                let inv: Vec<Rat> = t.iter().map(|c| c * &scale).collect();
                Scalar::from_coeffs(&self.field, poly_rem(&inv, m))
            }
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_mul(&other.inverse()?)
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.checked_add(rhs).expect("field mismatch")
    }
}
impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.checked_sub(rhs).expect("field mismatch")
    }
}
impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.checked_mul(rhs).expect("field mismatch")
    }
}
impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

// -- dense polynomial helpers over Q, coefficients low to high --

fn poly_degree(p: &[Rat]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

fn poly_trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Remainder of `a` modulo `m` (leading coefficient of `m` nonzero).
fn poly_rem(a: &[Rat], m: &[Rat]) -> Vec<Rat> {
    let (_, r) = poly_divmod(a, m);
    r
}

fn poly_divmod(a: &[Rat], m: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let dm = poly_degree(m).expect("division by zero polynomial");
    let mut r = a.to_vec();
    let mut q = vec![Rat::zero(); a.len().max(1)];
    let lead = m[dm].recip();
    loop {
        match poly_degree(&r) {
            Some(dr) if dr >= dm => {
                let c = &r[dr] * &lead;
                q[dr - dm] = c.clone();
                for k in 0..=dm {
                    let sub = &m[k] * &c;
                    r[dr - dm + k] -= sub;
                }
            }
            _ => break,
        }
    }
    (poly_trim(q), poly_trim(r))
}

/// Extended gcd: returns (g, s, t) with s*a + t*b = g.
fn poly_ext_gcd(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>, Vec<Rat>) {
    let zero = || vec![Rat::zero()];
    let one = || vec![Rat::one()];
    let mut r0 = poly_trim(a.to_vec());
    let mut r1 = poly_trim(b.to_vec());
    let (mut s0, mut s1) = (one(), zero());
    let (mut t0, mut t1) = (zero(), one());
    while poly_degree(&r1).is_some() {
        let (q, r) = poly_divmod(&r0, &r1);
        let next_s = poly_sub(&s0, &poly_mul(&q, &s1));
        let next_t = poly_sub(&t0, &poly_mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, next_s);
        t0 = std::mem::replace(&mut t1, next_t);
    }
    (r0, s0, t0)
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    poly_trim(out)
}

// -- string form --

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let a = c.abs();
            match k {
                0 => write!(f, "{}", a)?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{}*", a)?;
                    }
                    if k == 1 {
                        write!(f, "a")?;
                    } else {
                        write!(f, "a^{}", k)?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl Scalar {
    /// Parses "p/q", "c0 + c1*a + c2*a^2" and the like.
    pub fn parse(field: &Arc<FieldSpec>, s: &str) -> Result<Scalar> {
        let mut coeffs = vec![Rat::zero(); field.degree()];
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        // split into signed terms
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut cur = String::new();
        let mut neg = s.starts_with('-');
        let body = s.strip_prefix('-').or_else(|| s.strip_prefix('+')).unwrap_or(s);
        let mut prev_char = ' ';
        for ch in body.chars() {
            if (ch == '+' || ch == '-') && prev_char == ' ' {
                terms.push((neg, cur.trim().to_string()));
                cur = String::new();
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
            prev_char = ch;
        }
        terms.push((neg, cur.trim().to_string()));
        for (is_neg, term) in terms {
            if term.is_empty() {
                return Err(Error::Parse(format!("bad scalar: {s}")));
            }
            let (coeff_str, power) = if let Some(idx) = term.find('a') {
                let coeff = term[..idx].trim().trim_end_matches('*').trim();
                let rest = term[idx + 1..].trim();
                let pow = if rest.is_empty() {
                    1
                } else {
                    rest.strip_prefix('^')
                        .and_then(|p| p.trim().parse::<usize>().ok())
                        .ok_or_else(|| Error::Parse(format!("bad power in {term}")))?
                };
                (if coeff.is_empty() { "1" } else { coeff }, pow)
            } else {
                (term.as_str(), 0)
            };
            let mut c = Rat::from_str(coeff_str)
                .map_err(|_| Error::Parse(format!("bad rational: {coeff_str}")))?;
            if is_neg {
                c = -c;
            }
            if power >= field.degree() {
                return Err(Error::Parse(format!(
                    "power {power} too large for field of degree {}",
                    field.degree()
                )));
            }
            coeffs[power] += c;
        }
        Scalar::from_coeffs(field, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Arc<FieldSpec> {
        FieldSpec::rationals()
    }

    #[test]
    fn rational_arithmetic() {
        let f = q();
        let a = Scalar::from_frac(&f, 1, 2);
        let b = Scalar::from_frac(&f, 1, 3);
        assert_eq!(&a + &b, Scalar::from_frac(&f, 5, 6));
        assert_eq!(Scalar::from_frac(&f, 2, 3).inverse().unwrap(), Scalar::from_frac(&f, 3, 2));
    }

    #[test]
    fn gaussian_arithmetic() {
        let f = FieldSpec::gaussian();
        let i = Scalar::generator(&f).unwrap();
        assert_eq!(&i * &i, Scalar::from_i64(&f, -1));
        // (1+2i)(1-2i) = 5
        let a = &Scalar::one(&f) + &(&Scalar::from_i64(&f, 2) * &i);
        let b = &Scalar::one(&f) - &(&Scalar::from_i64(&f, 2) * &i);
        assert_eq!(&a * &b, Scalar::from_i64(&f, 5));
        assert_eq!(i.inverse().unwrap(), i.neg());
    }

    #[test]
    fn reducible_modulus_detected() {
        // x^2 - 1 has rational roots, so construction refuses it
        let err = FieldSpec::extension(vec![rat(-1, 1), rat(0, 1), rat(1, 1)]);
        assert!(err.is_err());
        // x^4 + 4 = (x^2-2x+2)(x^2+2x+2) has no rational root but is
        // reducible; inverting x^2 - 2x + 2 must report the modulus
        let f = FieldSpec::extension(vec![rat(4, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(1, 1)])
            .unwrap();
        let a = Scalar::from_coeffs(&f, vec![rat(2, 1), rat(-2, 1), rat(1, 1)]).unwrap();
        match a.inverse() {
            Err(Error::ReducibleModulus(_)) => {}
            other => panic!("expected reducible modulus error, got {other:?}"),
        }
    }

    #[test]
    fn double_inverse_is_identity() {
        let f = FieldSpec::gaussian();
        let i = Scalar::generator(&f).unwrap();
        let a = &Scalar::from_frac(&f, 3, 7) + &(&Scalar::from_frac(&f, -2, 5) * &i);
        assert_eq!(a.inverse().unwrap().inverse().unwrap(), a);
    }

    #[test]
    fn parse_roundtrip() {
        let f = FieldSpec::gaussian();
        let i = Scalar::generator(&f).unwrap();
        let a = &Scalar::from_frac(&f, -3, 2) + &(&Scalar::from_frac(&f, 5, 4) * &i);
        let s = a.to_string();
        assert_eq!(Scalar::parse(&f, &s).unwrap(), a);
        let q = FieldSpec::rationals();
        assert_eq!(Scalar::parse(&q, "-7/3").unwrap(), Scalar::from_frac(&q, -7, 3));
    }

    #[test]
    fn field_mismatch_is_an_error() {
        let a = Scalar::one(&q());
        let b = Scalar::one(&FieldSpec::gaussian());
        assert!(matches!(a.checked_add(&b), Err(Error::FieldMismatch)));
    }
}
