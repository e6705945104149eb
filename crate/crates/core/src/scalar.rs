use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};

/// Coefficient field of the polynomial algebras.
///
/// Everything in this crate is written against this trait; exactness of the
/// checks is only guaranteed for the rational implementations.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_i64(n: i64) -> Self;

    fn ratio(n: i64, d: i64) -> Self {
        Self::from_i64(n) / Self::from_i64(d)
    }

    fn is_negative(&self) -> bool;

    /// Parses an unsigned literal `p` or `p/q`.
    fn parse_literal(s: &str) -> Option<Self>;
}

fn split_ratio(s: &str) -> Option<(&str, Option<&str>)> {
    let mut it = s.splitn(2, '/');
    let n = it.next()?;
    Some((n, it.next()))
}

impl Scalar for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn parse_literal(s: &str) -> Option<Self> {
        let (n, d) = split_ratio(s)?;
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = match d {
            Some(d) => d.parse().ok()?,
            None => BigInt::one(),
        };
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    }
}

impl Scalar for Rational64 {
    fn from_i64(n: i64) -> Self {
        Rational64::from_integer(n)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn parse_literal(s: &str) -> Option<Self> {
        let (n, d) = split_ratio(s)?;
        let n: i64 = n.parse().ok()?;
        let d: i64 = match d {
            Some(d) => d.parse().ok()?,
            None => 1,
        };
        if d == 0 {
            return None;
        }
        Some(Rational64::new(n, d))
    }
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn from_i64(n: i64) -> Self {
                n as $t
            }

            fn is_negative(&self) -> bool {
                *self < 0.0
            }

            fn parse_literal(s: &str) -> Option<Self> {
                let (n, d) = split_ratio(s)?;
                let n: $t = n.parse().ok()?;
                match d {
                    Some(d) => {
                        let d: $t = d.parse().ok()?;
                        (d != 0.0).then(|| n / d)
                    }
                    None => Some(n),
                }
            }
        }
    };
}

float_scalar!(f64);
float_scalar!(f32);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        assert_eq!(BigRational::parse_literal("6/4"), Some(BigRational::ratio(3, 2)));
        assert_eq!(Rational64::parse_literal("7"), Some(Rational64::from_integer(7)));
        assert_eq!(f64::parse_literal("1/4"), Some(0.25));
        assert_eq!(BigRational::parse_literal("1/0"), None);
        assert_eq!(BigRational::parse_literal("x"), None);
    }
}
