//! Exact arithmetic in real quadratic fields `ℚ(√d)`.
//!
//! A [`QuadNumber`] is `a + b·√d` with rational `a`, `b` and a square-free
//! radicand `d`. Numbers with `b = 0` are plain rationals and combine with
//! any field; two irrational numbers only combine when their radicands agree.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Rational coefficients. 128-bit numerators keep every catalog computation
/// far from overflow.
pub type Rational = Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuadError {
    #[error("radicands {0} and {1} cannot be mixed in one number")]
    FieldMismatch(u32, u32),
    #[error("radicand {0} is not a square-free positive integer")]
    BadRadicand(u32),
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

/// `a + b·√d` in canonical form: `b = 0` iff `d = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadNumber {
    a: Rational,
    b: Rational,
    d: u32,
}

/// Smallest field containing both `ℚ(√d)` and `ℚ(√e)`, if it is quadratic.
pub fn join_radicands(d: u32, e: u32) -> Result<u32, QuadError> {
    match (d, e) {
        (1, x) | (x, 1) => Ok(x),
        (x, y) if x == y => Ok(x),
        (x, y) => Err(QuadError::FieldMismatch(x, y)),
    }
}

pub fn is_square_free(d: u32) -> bool {
    if d == 0 {
        return false;
    }
    let mut p = 2u32;
    while p * p <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

impl QuadNumber {
    pub fn new(a: Rational, b: Rational, d: u32) -> Result<Self, QuadError> {
        if !is_square_free(d) {
            return Err(QuadError::BadRadicand(d));
        }
        Ok(Self::canonical(a, b, d))
    }

    fn canonical(a: Rational, b: Rational, d: u32) -> Self {
        if d == 1 {
            Self { a: a + b, b: Rational::zero(), d: 1 }
        } else if b.is_zero() {
            Self { a, b, d: 1 }
        } else {
            Self { a, b, d }
        }
    }

    pub fn rational(a: Rational) -> Self {
        Self { a, b: Rational::zero(), d: 1 }
    }

    pub fn int(n: i128) -> Self {
        Self::rational(Rational::from_integer(n))
    }

    /// `p/q` as an exact rational.
    pub fn frac(p: i128, q: i128) -> Self {
        Self::rational(Rational::new(p, q))
    }

    /// `(p + s·√d) / q`.
    pub fn surd(p: i128, s: i128, d: u32, q: i128) -> Self {
        Self::new(Rational::new(p, q), Rational::new(s, q), d).expect("square-free radicand")
    }

    /// `√d`.
    pub fn sqrt(d: u32) -> Self {
        Self::surd(0, 1, d, 1)
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn rational_part(&self) -> Rational {
        self.a
    }

    pub fn surd_part(&self) -> Rational {
        self.b
    }

    /// Radicand; `1` for rationals.
    pub fn radicand(&self) -> u32 {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.a.is_integer()
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(self.a) + ratio_to_f64(self.b) * f64::from(self.d).sqrt()
    }

    /// Common field of two numbers, if any.
    pub fn join_field(&self, other: &Self) -> Result<u32, QuadError> {
        join_radicands(self.d, other.d)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, QuadError> {
        let d = self.join_field(other)?;
        Ok(Self::canonical(self.a + other.a, self.b + other.b, d))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, QuadError> {
        let d = self.join_field(other)?;
        let dd = Rational::from_integer(i128::from(d));
        Ok(Self::canonical(self.a * other.a + self.b * other.b * dd, self.a * other.b + self.b * other.a, d))
    }

    /// Galois conjugate `a − b√d`.
    pub fn conj(&self) -> Self {
        Self { a: self.a, b: -self.b, d: self.d }
    }

    /// Field norm `a² − d·b²`.
    pub fn norm(&self) -> Rational {
        self.a * self.a - self.b * self.b * Rational::from_integer(i128::from(self.d))
    }

    pub fn inv(&self) -> Option<Self> {
        // d square-free and > 1 means the norm vanishes only at zero.
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conj();
        Some(Self::canonical(c.a / n, c.b / n, self.d))
    }

    /// Subtracts the integer part of the rational coefficient, leaving it in `[0, 1)`.
    pub fn reduce_rational_mod1(&self) -> Self {
        Self { a: self.a - self.a.floor(), b: self.b, d: self.d }
    }

    pub fn sign(&self) -> i32 {
        // Compare a against -b√d without floating point.
        let sa = signum(self.a);
        let sb = signum(self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        // Opposite signs: compare a² with d·b².
        let lhs = self.a * self.a;
        let rhs = self.b * self.b * Rational::from_integer(i128::from(self.d));
        if lhs > rhs {
            sa
        } else if lhs < rhs {
            sb
        } else {
            0
        }
    }
}

fn signum(r: Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

pub fn ratio_to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"-1.25"`.
pub fn parse_rational(s: &str) -> Result<Rational, QuadError> {
    let s = s.trim();
    let err = || QuadError::Parse(s.to_string());
    if let Some((p, q)) = s.split_once('/') {
        let p: i128 = p.trim().parse().map_err(|_| err())?;
        let q: i128 = q.trim().parse().map_err(|_| err())?;
        if q == 0 {
            return Err(err());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) || frac.len() > 30 {
            return Err(err());
        }
        let neg = int.starts_with('-');
        let int_val: i128 =
            if int.is_empty() || int == "-" || int == "+" { 0 } else { int.parse().map_err(|_| err())? };
        let scale = 10i128.pow(frac.len() as u32);
        let frac_val: i128 = frac.parse().map_err(|_| err())?;
        let mag = int_val.abs() * scale + frac_val;
        return Ok(Rational::new(if neg { -mag } else { mag }, scale));
    }
    s.parse::<i128>().map(Rational::from_integer).map_err(|_| err())
}

impl FromStr for QuadNumber {
    type Err = QuadError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_rational(s).map(Self::rational)
    }
}

fn fmt_ratio(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for QuadNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_ratio(&self.a));
        }
        let surd = if self.b.is_one() {
            format!("√{}", self.d)
        } else if (-self.b).is_one() {
            format!("-√{}", self.d)
        } else {
            format!("{}·√{}", fmt_ratio(&self.b), self.d)
        };
        if self.a.is_zero() {
            write!(f, "{surd}")
        } else if let Some(abs) = surd.strip_prefix('-') {
            write!(f, "{} - {}", fmt_ratio(&self.a), abs)
        } else {
            write!(f, "{} + {}", fmt_ratio(&self.a), surd)
        }
    }
}

impl fmt::Debug for QuadNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Quad({self})")
    }
}

// Operator impls panic on mixed radicals; use the checked_* forms where the
// inputs are not known to share a field.
impl Add for QuadNumber {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(&rhs).expect("quadratic field mismatch")
    }
}

impl Sub for QuadNumber {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for QuadNumber {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(&rhs).expect("quadratic field mismatch")
    }
}

impl Div for QuadNumber {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero")
    }
}

impl Neg for QuadNumber {
    type Output = Self;
    fn neg(self) -> Self {
        Self { a: -self.a, b: -self.b, d: self.d }
    }
}

impl From<i64> for QuadNumber {
    fn from(n: i64) -> Self {
        Self::int(i128::from(n))
    }
}

/// Serialized as `{"a": "p/q", "b": "p/q"}`; the radicand lives with the owner.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadRepr {
    pub a: String,
    #[serde(default = "zero_string")]
    pub b: String,
}

fn zero_string() -> String {
    "0".to_string()
}

impl QuadRepr {
    pub fn from_quad(q: &QuadNumber) -> Self {
        Self { a: fmt_ratio(&q.a), b: fmt_ratio(&q.b) }
    }

    pub fn to_quad(&self, d: u32) -> Result<QuadNumber, QuadError> {
        QuadNumber::new(parse_rational(&self.a)?, parse_rational(&self.b)?, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(p: i128, s: i128, d: u32, den: i128) -> QuadNumber {
        QuadNumber::surd(p, s, d, den)
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(q(1, 1, 1, 1), QuadNumber::int(2));
        assert_eq!(q(3, 0, 3, 2).radicand(), 1);
        assert!(QuadNumber::new(Rational::one(), Rational::one(), 4).is_err());
    }

    #[test]
    fn inverse_of_golden_like() {
        let x = q(-1, 1, 3, 2); // (-1 + √3)/2
        let y = x.inv().unwrap();
        assert_eq!(x * y, QuadNumber::one());
        // 2/(−1+√3) = 1+√3
        assert_eq!(y, q(1, 1, 3, 1));
    }

    #[test]
    fn mixed_radicals_rejected() {
        assert_eq!(QuadNumber::sqrt(2).checked_add(&QuadNumber::sqrt(3)), Err(QuadError::FieldMismatch(2, 3)));
        // rationals join any field
        assert!(QuadNumber::frac(1, 2).checked_mul(&QuadNumber::sqrt(3)).is_ok());
    }

    #[test]
    fn sqrt_squared_is_rational() {
        assert_eq!(QuadNumber::sqrt(3) * QuadNumber::sqrt(3), QuadNumber::int(3));
        assert!(QuadNumber::zero().inv().is_none());
    }

    #[test]
    fn sign_is_exact() {
        assert_eq!(q(-1, 1, 3, 2).sign(), 1);
        assert_eq!(q(4, -2, 3, 1).sign(), 1); // 4 − 2√3 > 0
        assert_eq!(q(-2, 1, 3, 1).sign(), -1);
        assert_eq!(QuadNumber::zero().sign(), 0);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), Rational::new(1, 2));
        assert_eq!(parse_rational("-1.25").unwrap(), Rational::new(-5, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), Rational::new(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), Rational::from_integer(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn display() {
        assert_eq!(q(-1, 1, 3, 2).to_string(), "-1/2 + 1/2·√3");
        assert_eq!(q(2, -2, 3, 1).to_string(), "2 - 2·√3");
        assert_eq!(QuadNumber::sqrt(2).to_string(), "√2");
    }

    fn arb_quad() -> impl Strategy<Value = QuadNumber> {
        (-50i128..50, -50i128..50, 1i128..12, prop::sample::select(vec![1u32, 2, 3]))
            .prop_map(|(p, s, den, d)| QuadNumber::surd(p, s, d, den))
    }

    proptest! {
        #[test]
        fn field_axioms_hold(x in arb_quad(), y in arb_quad()) {
            prop_assume!(x.join_field(&y).is_ok());
            prop_assert_eq!(x + y - y, x);
            prop_assert_eq!(x * y, y * x);
            if !y.is_zero() {
                prop_assert_eq!(x * y / y, x);
            }
            let approx = (x * y).to_f64() - x.to_f64() * y.to_f64();
            prop_assert!(approx.abs() < 1e-9 * (1.0 + (x.to_f64() * y.to_f64()).abs()));
        }

        #[test]
        fn sign_matches_float(x in arb_quad()) {
            let f = x.to_f64();
            if f.abs() > 1e-9 {
                prop_assert_eq!(x.sign(), if f > 0.0 { 1 } else { -1 });
            }
        }
    }
}
