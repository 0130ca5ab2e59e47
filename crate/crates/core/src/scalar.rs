//! Field abstraction used by every algebraic construction in the crate.
//!
//! All structure constants, maps and solvers are written against [`Scalar`],
//! which is a thin bundle of `num-traits` bounds. The exact instance
//! ([`BigRational`]) is what the verification suites use; `Rational64` and the
//! IEEE floats are supported for experimentation, but only the exact types give
//! meaningful answers to "is this zero" questions.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{FromPrimitive, NumAssignRef, NumRef, Signed, ToPrimitive, Zero};

/// A field element usable as a Lie algebra coefficient.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + PartialOrd + NumRef + NumAssignRef + Signed + FromPrimitive + Send + Sync + 'static
{
    /// Exact rational value, when the type can express one.
    fn to_rational(&self) -> Option<BigRational>;

    /// Best representation of a rational number in this type.
    fn from_rational(q: &BigRational) -> Self;

    /// Embeds an integer.
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("every scalar type embeds i64")
    }

    /// The element `1/2`.
    fn half() -> Self {
        Self::one() / Self::from_int(2)
    }

    /// True when the value is an integer.
    fn is_integral(&self) -> bool {
        self.to_rational().map(|q| q.is_integer()).unwrap_or(false)
    }
}

impl Scalar for BigRational {
    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
}

impl Scalar for Rational64 {
    fn to_rational(&self) -> Option<BigRational> {
        Some(BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom())))
    }

    fn from_rational(q: &BigRational) -> Self {
        let n = q.numer().to_i64().expect("numerator fits in i64");
        let d = q.denom().to_i64().expect("denominator fits in i64");
        Rational64::new(n, d)
    }
}

impl Scalar for f64 {
    fn to_rational(&self) -> Option<BigRational> {
        BigRational::from_float(*self)
    }

    fn from_rational(q: &BigRational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {
    fn to_rational(&self) -> Option<BigRational> {
        BigRational::from_float(*self)
    }

    fn from_rational(q: &BigRational) -> Self {
        q.to_f32().unwrap_or(f32::NAN)
    }
}

/// Parses `"p/q"`, `"p"` or `"-p/q"` into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let q = BigRational::from_str(s).ok()?;
    if q.denom().is_zero() {
        return None;
    }
    Some(q)
}

/// Serializes a rational as `"p/q"`, always with an explicit denominator.
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Shorthand for building exact rationals in code and tests.
pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn pow<T: Scalar>(base: &T, exp: i64) -> T {
    let mut acc = T::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= base;
    }
    if exp < 0 {
        T::one() / acc
    } else {
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_reduced() {
        let a = q(6, -4);
        assert_eq!(*a.numer(), BigInt::from(-3));
        assert_eq!(*a.denom(), BigInt::from(2));
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("1/2"), Some(q(1, 2)));
        assert_eq!(parse_rational("-2"), Some(q(-2, 1)));
        assert_eq!(parse_rational("3/5"), Some(q(3, 5)));
        assert_eq!(parse_rational(""), None);
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(format_rational(&q(-2, 1)), "-2/1");
        assert_eq!(format_rational(&q(4, 6)), "2/3");
    }

    #[test]
    fn conversions() {
        assert_eq!(<f64 as Scalar>::half(), 0.5);
        assert_eq!(BigRational::half(), q(1, 2));
        assert_eq!(Rational64::from_rational(&q(3, 7)), Rational64::new(3, 7));
        assert!(q(4, 2).is_integral());
        assert!(!q(1, 2).is_integral());
        assert_eq!(pow(&q(2, 3), -2), q(9, 4));
        assert_eq!(pow(&q(2, 3), 0), q(1, 1));
    }
}
