//! Exact-or-floating scalar values and the `Weight` abstraction used by the
//! enumeration engines.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Threshold below which a floating value counts as zero when reading signs.
pub const FLOAT_ZERO: f64 = 1e-12;

/// A model entry or a computed value: either an exact rational or an `f64`.
///
/// Arithmetic between two values of the same kind stays in that kind. Mixing
/// kinds panics; call [`Scalar::to_float`] first when promotion is intended.
#[derive(Clone, Debug)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn int(v: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Exact(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn float(v: f64) -> Self {
        Scalar::Float(v)
    }

    pub fn zero_like(&self) -> Self {
        match self {
            Scalar::Exact(_) => Scalar::Exact(<BigRational as num_traits::Zero>::zero()),
            Scalar::Float(_) => Scalar::Float(0.0),
        }
    }

    pub fn one_like(&self) -> Self {
        match self {
            Scalar::Exact(_) => Scalar::Exact(<BigRational as num_traits::One>::one()),
            Scalar::Float(_) => Scalar::Float(1.0),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(r) => ratio_to_f64(r),
            Scalar::Float(f) => *f,
        }
    }

    /// Explicit promotion to floating point.
    pub fn to_float(&self) -> Scalar {
        Scalar::Float(self.to_f64())
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(r) => Some(r),
            Scalar::Float(_) => None,
        }
    }

    /// Sign with the floating zero threshold applied to `Float` values.
    pub fn signum(&self) -> i8 {
        match self {
            Scalar::Exact(r) => {
                if num_traits::Zero::is_zero(r) {
                    0
                } else if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Scalar::Float(f) => {
                if f.abs() <= FLOAT_ZERO {
                    0
                } else if *f > 0.0 {
                    1
                } else {
                    -1
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => num_traits::Zero::is_zero(r),
            Scalar::Float(f) => *f == 0.0,
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_integer(),
            Scalar::Float(f) => f.fract() == 0.0,
        }
    }

    pub fn pow(&self, k: u32) -> Scalar {
        match self {
            Scalar::Exact(r) => Scalar::Exact(num_traits::pow(r.clone(), k as usize)),
            Scalar::Float(f) => Scalar::Float(f.powi(k as i32)),
        }
    }

    pub fn ln(&self) -> f64 {
        self.to_f64().ln()
    }

    /// Parses an exact value from `"3"`, `"-2/7"`, `"0.125"` or `"1.5e-3"`.
    pub fn parse_exact(text: &str) -> Option<Scalar> {
        parse_rational(text.trim()).map(Scalar::Exact)
    }

    fn kinds<'a>(&'a self, other: &'a Scalar, op: &str) -> (&'a Scalar, &'a Scalar) {
        if self.is_exact() != other.is_exact() {
            panic!("mixed exact/float {op}; promote with to_float() first");
        }
        (self, other)
    }
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    // huge numerators or denominators: shift both down to keep precision
    let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
    let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

fn parse_rational(text: &str) -> Option<BigRational> {
    if text.is_empty() {
        return None;
    }
    if let Some((n, d)) = text.split_once('/') {
        let n = BigInt::from_str(n.trim()).ok()?;
        let d = BigInt::from_str(d.trim()).ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(p) => (&text[..p], text[p + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).ok()?;
    if neg {
        num = -num;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        BigRational::from_integer(num * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(num, num_traits::pow(ten, (-scale) as usize))
    };
    Some(value)
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            (Scalar::Float(a), Scalar::Float(b)) => a == b,
            _ => false,
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Some(a.cmp(b)),
            (Scalar::Float(a), Scalar::Float(b)) => a.partial_cmp(b),
            _ => None,
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match self.kinds(rhs, stringify!($method)) {
                    (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a $op b),
                    (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a $op b),
                    _ => unreachable!(),
                }
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        match self.kinds(rhs, "div") {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a / b),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a / b),
            _ => unreachable!(),
        }
    }
}

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        (&self).div(&rhs)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Float(x) => f.write_str(&format_float(*x)),
        }
    }
}

/// Formats a float with 17 significant digits (round-trip safe).
pub fn format_float(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "NaN".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    format!("{x:.16e}")
}

impl FromStr for Scalar {
    type Err = Error;

    /// Exact when the text is a rational literal, otherwise a float.
    fn from_str(s: &str) -> Result<Self> {
        if let Some(v) = Scalar::parse_exact(s) {
            return Ok(v);
        }
        s.trim()
            .parse::<f64>()
            .map(Scalar::Float)
            .map_err(|_| Error::InvalidArgument(format!("not a number: {s:?}")))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        scalar_from_json(&v).map_err(serde::de::Error::custom)
    }
}

/// Reads a JSON number or string as a scalar. Numbers are read exactly from
/// their decimal text.
pub fn scalar_from_json(v: &serde_json::Value) -> Result<Scalar> {
    match v {
        serde_json::Value::Number(n) => n.to_string().parse(),
        serde_json::Value::String(s) => s.parse(),
        other => Err(Error::Json(format!("expected a number, got {other}"))),
    }
}

/// Semiring operations needed by the enumeration engines. Addition and
/// multiplication may fail on overflow for fixed-width types.
pub trait Weight: Clone + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn checked_add(&self, rhs: &Self) -> Option<Self>;
    fn checked_mul(&self, rhs: &Self) -> Option<Self>;

    fn checked_pow(&self, k: u32) -> Option<Self> {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.checked_mul(self)?;
        }
        Some(acc)
    }
}

impl Weight for u128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn checked_add(&self, rhs: &Self) -> Option<Self> {
        u128::checked_add(*self, *rhs)
    }
    fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        u128::checked_mul(*self, *rhs)
    }
}

impl Weight for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn checked_add(&self, rhs: &Self) -> Option<Self> {
        Some(self + rhs)
    }
    fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        Some(self * rhs)
    }
}

impl Weight for BigUint {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn checked_add(&self, rhs: &Self) -> Option<Self> {
        Some(self + rhs)
    }
    fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        Some(self * rhs)
    }
}

impl Weight for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn checked_add(&self, rhs: &Self) -> Option<Self> {
        Some(self + rhs)
    }
    fn checked_mul(&self, rhs: &Self) -> Option<Self> {
        Some(self * rhs)
    }
}

/// Least common multiple of the denominators of `values`.
pub(crate) fn common_denominator<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Compares `lhs >= rhs` with an exact test for exact values and a relative
/// slack for floats. Returns `(holds, marginal)` where `marginal` marks a pass
/// that only succeeded thanks to the slack.
pub fn ge_with_slack(lhs: &Scalar, rhs: &Scalar, rel_slack: f64) -> (bool, bool) {
    match (lhs, rhs) {
        (Scalar::Exact(a), Scalar::Exact(b)) => (a >= b, false),
        _ => {
            let (a, b) = (lhs.to_f64(), rhs.to_f64());
            if a >= b {
                (true, false)
            } else {
                let scale = a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
                let ok = (b - a) <= rel_slack * scale;
                (ok, ok)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimal_forms_exactly() {
        assert_eq!(Scalar::parse_exact("0.125").unwrap(), Scalar::ratio(1, 8));
        assert_eq!(Scalar::parse_exact("-2/6").unwrap(), Scalar::ratio(-1, 3));
        assert_eq!(Scalar::parse_exact("1.5e-3").unwrap(), Scalar::ratio(3, 2000));
        assert_eq!(Scalar::parse_exact("25E2").unwrap(), Scalar::int(2500));
        assert_eq!(Scalar::parse_exact(".5").unwrap(), Scalar::ratio(1, 2));
        assert!(Scalar::parse_exact("1/0").is_none());
        assert!(Scalar::parse_exact("abc").is_none());
        assert!(Scalar::parse_exact("").is_none());
    }

    #[test]
    fn non_rational_text_falls_back_to_float() {
        let v: Scalar = "inf".parse().unwrap();
        assert!(!v.is_exact());
        assert!("x1".parse::<Scalar>().is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::int(6).to_string(), "6");
        assert_eq!(Scalar::ratio(2, 6).to_string(), "1/3");
        assert_eq!(Scalar::float(0.5).to_string(), "5.0000000000000000e-1");
    }

    #[test]
    #[should_panic(expected = "mixed")]
    fn mixed_arithmetic_panics() {
        let _ = &Scalar::int(1) + &Scalar::float(1.0);
    }

    #[test]
    fn huge_rationals_convert_to_f64() {
        let big = Scalar::Exact(BigRational::new(
            num_traits::pow(BigInt::from(10), 400) * 3,
            num_traits::pow(BigInt::from(10), 400),
        ));
        assert!((big.to_f64() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn slack_comparison() {
        assert_eq!(ge_with_slack(&Scalar::int(2), &Scalar::int(3), 1e-9), (false, false));
        assert_eq!(
            ge_with_slack(&Scalar::float(1.0), &Scalar::float(1.0 + 1e-12), 1e-9),
            (true, true)
        );
        assert_eq!(ge_with_slack(&Scalar::float(2.0), &Scalar::float(1.0), 1e-9), (true, false));
    }

    #[test]
    fn u128_overflow_is_reported() {
        assert!(Weight::checked_mul(&u128::MAX, &2u128).is_none());
        assert_eq!(Weight::checked_pow(&3u128, 4), Some(81));
    }
}
