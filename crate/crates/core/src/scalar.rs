//! Scalar abstractions: coefficient rings for the exact layer and the real
//! floating point type for the numerical layer.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, One, Signed, ToPrimitive, Zero};

use crate::{Integer, Rational};

/// Commutative ring with unit, used as coefficient type of [`MPoly`](crate::kernel::mpoly::MPoly)
/// and entries of [`Matrix`](crate::kernel::matrix::Matrix).
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// Sign and magnitude text for printing a coefficient inside a sum.
    /// Returns `(negative, text_of_absolute_value)`.
    fn split_sign(&self) -> (bool, String);

    /// Whether the printed magnitude needs parentheses when followed by `*var`.
    fn needs_parens(&self) -> bool {
        false
    }
}

/// Ring where every nonzero element is invertible.
pub trait Field: Ring + Div<Output = Self> {}

impl Ring for Rational {
    fn split_sign(&self) -> (bool, String) {
        (self.is_negative(), self.abs().to_string())
    }
}
impl Field for Rational {}

impl Ring for Integer {
    fn split_sign(&self) -> (bool, String) {
        (self.is_negative(), self.abs().to_string())
    }
}

macro_rules! float_ring {
    ($t:ty) => {
        impl Ring for $t {
            fn split_sign(&self) -> (bool, String) {
                (self.is_sign_negative() && *self != 0.0, self.abs().to_string())
            }
        }
        impl Field for $t {}
    };
}
float_ring!(f32);
float_ring!(f64);

impl<T> Ring for Complex<T>
where
    T: Clone + num_traits::Num + Neg<Output = T> + Debug + std::fmt::Display + Send + Sync,
{
    fn split_sign(&self) -> (bool, String) {
        (false, format!("({} + {}i)", self.re, self.im))
    }
}
impl<T> Field for Complex<T> where
    T: Clone + num_traits::Num + Neg<Output = T> + Debug + std::fmt::Display + Send + Sync
{
}

/// Real scalar used by root isolation, continuation and the strand sweep.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + std::fmt::Display + Default + Send + Sync + 'static
{
    /// Lossy conversion from an exact rational.
    fn from_rational(q: &Rational) -> Self {
        Self::lit(q.to_f64().unwrap_or(f64::NAN))
    }

    fn lit(x: f64) -> Self {
        Self::from_f64(x).unwrap_or_else(Self::nan)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Exact rational value of a finite float.
pub fn rational_from_float<F: Real>(x: F) -> Option<Rational> {
    Rational::from_float(x.to_f64()?)
}

/// Parse `"p/q"`, `"p"` or a decimal such as `"-0.25"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: Integer = p.trim().parse().ok()?;
        let q: Integer = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let num: Integer = digits.parse().ok()?;
        let den = num_traits::pow(Integer::from(10), frac.len());
        let q = Rational::new(num, den);
        return Some(if neg { -q } else { q });
    }
    let p: Integer = s.parse().ok()?;
    Some(Rational::from_integer(p))
}

/// Shorthand for the rational `p/q`.
pub fn q(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

/// Shorthand for an integer-valued rational.
pub fn qi(p: i64) -> Rational {
    Rational::from_integer(p.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("1/100"), Some(q(1, 100)));
        assert_eq!(parse_rational("-0.25"), Some(q(-1, 4)));
        assert_eq!(parse_rational(" 7 "), Some(qi(7)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    #[test]
    fn float_roundtrip_is_exact() {
        let r = rational_from_float(0.1f64).unwrap();
        assert_eq!(r.to_f64().unwrap(), 0.1);
        assert!(rational_from_float(f64::NAN).is_none());
    }
}
