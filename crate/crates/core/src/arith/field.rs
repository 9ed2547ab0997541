//! Scalar trait shared by every algebraic routine in the crate.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exact field of characteristic zero.
///
/// Polynomials, curves and links are generic over this trait. Only exact
/// fields implement it: every algorithm relies on deciding `x == 0`.
pub trait Field:
    Clone
    + Debug
    + Display
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// A square root inside the field, if one exists.
    fn sqrt(&self) -> Option<Self>;

    /// Square root in the field that `hint` belongs to. Only differs from
    /// [`sqrt`](Field::sqrt) for scalar types that carry a field tag.
    fn sqrt_hint(&self, hint: &Self) -> Option<Self> {
        let _ = hint;
        self.sqrt()
    }

    /// Embeds a rational number.
    fn from_rational(q: BigRational) -> Self;

    /// The rational value of `self`, if it lies in Q.
    fn to_rational(&self) -> Option<BigRational>;

    fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    /// Whether the printed form needs parentheses when used as a factor.
    fn is_compound(&self) -> bool {
        false
    }

    /// Whether the printed form starts with a minus sign.
    fn is_negative_display(&self) -> bool {
        false
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * &base;
            }
            base = base.clone() * &base;
            e >>= 1;
        }
        acc
    }
}

/// Exact square root of a nonnegative integer.
pub fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.sign() == Sign::Minus {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact square root of a rational number.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = int_sqrt(q.numer())?;
    let d = int_sqrt(q.denom())?;
    Some(BigRational::new(n, d))
}

impl Field for BigRational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn sqrt(&self) -> Option<Self> {
        rational_sqrt(self)
    }

    fn from_rational(q: BigRational) -> Self {
        q
    }

    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }

    fn is_negative_display(&self) -> bool {
        self.is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(Field::sqrt(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(Field::sqrt(&q(2, 1)), None);
        assert_eq!(Field::sqrt(&q(-1, 1)), None);
        assert_eq!(Field::sqrt(&q(0, 1)), Some(q(0, 1)));
    }

    #[test]
    fn power_by_squaring() {
        assert_eq!(Field::pow(&q(2, 3), 5), q(32, 243));
        assert_eq!(Field::pow(&q(7, 1), 0), q(1, 1));
    }
}
