//! Coefficient fields.
//!
//! The symbolic engine is generic over [`Scalar`]; exact work uses
//! [`Rational`], floats are only used for numeric evaluation.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_traits::{Num, Signed, ToPrimitive};

/// Arbitrary precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// A coefficient field usable by polynomials and multivectors.
pub trait Scalar:
    Clone + PartialEq + Debug + Display + Num + Neg<Output = Self> + Send + Sync + 'static
{
    fn from_rational(r: &Rational) -> Self;

    fn is_negative(&self) -> bool;

    /// Magnitude as a float, used for tolerances and reports.
    fn to_f64(&self) -> f64;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }

    fn half() -> Self {
        Self::one() / (Self::one() + Self::one())
    }
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn is_negative(&self) -> bool {
        *self < 0.0
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f32(r).unwrap_or(f32::NAN)
    }

    fn is_negative(&self) -> bool {
        *self < 0.0
    }

    fn to_f64(&self) -> f64 {
        *self as f64
    }
}

/// Shorthand for small integer rationals.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_are_normalized() {
        let r = rat(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(r.to_string(), "-3/2");
    }

    #[test]
    fn float_conversion() {
        assert_eq!(<f64 as Scalar>::from_rational(&rat(3, 4)), 0.75);
        assert_eq!(<f32 as Scalar>::half(), 0.5);
        assert_eq!(Rational::half(), rat(1, 2));
    }
}
