use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Coefficient field for [`super::Polynomial`]: exact rationals or doubles.
pub trait Coeff: Clone + Debug + PartialEq + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn div(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(q: &Rational) -> Self;
    fn to_f64(&self) -> f64;
    fn is_exact() -> bool;
    /// Parse an unsigned literal such as `12`, `0.25` or `1.5e-3`.
    fn parse_literal(text: &str) -> Option<Self>;
    fn is_negative(&self) -> bool;
    /// Absolute value formatted so that `parse_literal` reads it back unchanged.
    fn format_abs(&self) -> String;
    fn is_unit_magnitude(&self) -> bool;
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
    fn is_exact() -> bool {
        true
    }
    fn parse_literal(text: &str) -> Option<Self> {
        parse_decimal(text)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn format_abs(&self) -> String {
        let a = Signed::abs(self);
        if a.is_integer() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn is_unit_magnitude(&self) -> bool {
        Signed::abs(self).is_one()
    }
}

impl Coeff for f64 {
    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(q: &Rational) -> Self {
        rational_to_f64(q)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_exact() -> bool {
        false
    }
    fn parse_literal(text: &str) -> Option<Self> {
        text.parse().ok()
    }
    fn is_negative(&self) -> bool {
        *self < 0.0
    }
    fn format_abs(&self) -> String {
        let a = self.abs();
        if a.fract() == 0.0 && a < 1e15 {
            format!("{}", a as u64)
        } else {
            format!("{a:?}")
        }
    }
    fn is_unit_magnitude(&self) -> bool {
        self.abs() == 1.0
    }
}

/// Exact value of a decimal literal `digits[.digits][e[+-]digits]`.
fn parse_decimal(text: &str) -> Option<Rational> {
    let (mantissa, exp) = match text.find(['e', 'E']) {
        Some(k) => (&text[..k], text[k + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Some(if scale >= 0 {
        Rational::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(digits, num_traits::pow(ten, (-scale) as usize))
    })
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() {
            return n / d;
        }
    }
    // huge numerator or denominator: shift both down to keep the ratio
    let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
    let n: BigInt = q.numer() >> shift;
    let d: BigInt = q.denom() >> shift;
    let v = n.to_f64().unwrap_or(0.0) / d.to_f64().unwrap_or(1.0);
    if Signed::is_negative(q) && v > 0.0 {
        -v
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversions() {
        let q = Rational::new(BigInt::from(1), BigInt::from(3));
        assert!((rational_to_f64(&q) - 1.0 / 3.0).abs() < 1e-16);
        assert_eq!(<f64 as Coeff>::from_rational(&Rational::from_integer(BigInt::from(-2))), -2.0);
    }

    #[test]
    fn decimal_literals() {
        let r = |a: i64, b: i64| Rational::new(BigInt::from(a), BigInt::from(b));
        assert_eq!(Rational::parse_literal("12"), Some(r(12, 1)));
        assert_eq!(Rational::parse_literal("0.25"), Some(r(1, 4)));
        assert_eq!(Rational::parse_literal("1.5e-3"), Some(r(3, 2000)));
        assert_eq!(Rational::parse_literal("2E2"), Some(r(200, 1)));
        assert_eq!(Rational::parse_literal("."), None);
        assert_eq!(r(-3, 2).format_abs(), "3/2");
    }

    #[test]
    fn float_format_round_trips() {
        for v in [1.0, 0.1, 1e-7, 123456.75, 2.0f64.sqrt()] {
            assert_eq!(f64::parse_literal(&v.format_abs()), Some(v));
        }
    }
}
