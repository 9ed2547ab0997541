//! Elements of Q(√d) for squarefree d, written `re + im·√d`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::field::{rational_sqrt, Field};
use crate::error::{Error, Result};

/// Which quadratic field an element lives in. `d == 0` means Q itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub d: i64,
}

impl FieldDescriptor {
    pub const RATIONAL: FieldDescriptor = FieldDescriptor { d: 0 };
    pub const GAUSSIAN: FieldDescriptor = FieldDescriptor { d: -1 };
    pub const EISENSTEIN: FieldDescriptor = FieldDescriptor { d: -3 };

    pub fn new(d: i64) -> Result<Self> {
        if d == 1 || (d != 0 && !is_squarefree(d)) {
            return Err(Error::InvalidField(d));
        }
        Ok(FieldDescriptor { d })
    }

    /// Printed name of √d, as accepted by the polynomial parser.
    pub fn generator_symbol(&self) -> String {
        match self.d {
            -1 => "i".to_string(),
            -3 => "w".to_string(),
            d => format!("sqrt({})", d),
        }
    }

    /// √d as an element.
    pub fn generator(&self) -> QuadFieldElement {
        QuadFieldElement {
            re: BigRational::zero(),
            im: BigRational::one(),
            d: self.d,
        }
    }
}

fn is_squarefree(d: i64) -> bool {
    let n = d.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// An element `re + im·√d`. Rational elements (`im == 0`) combine with any
/// field; two irrational elements must share `d`.
#[derive(Clone, Debug)]
pub struct QuadFieldElement {
    pub re: BigRational,
    pub im: BigRational,
    pub d: i64,
}

impl QuadFieldElement {
    pub fn new(re: BigRational, im: BigRational, field: FieldDescriptor) -> Result<Self> {
        if field.d == 0 && !im.is_zero() {
            return Err(Error::FieldMismatch { left: 0, right: 0 });
        }
        Ok(QuadFieldElement { re, im, d: field.d })
    }

    pub fn rational(re: BigRational) -> Self {
        QuadFieldElement {
            re,
            im: BigRational::zero(),
            d: 0,
        }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `(re_n/re_d) + (im_n/im_d)·√d`, a convenience for literals.
    pub fn from_parts(re: (i64, i64), im: (i64, i64), d: i64) -> Self {
        QuadFieldElement {
            re: BigRational::new(re.0.into(), re.1.into()),
            im: BigRational::new(im.0.into(), im.1.into()),
            d,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.im.is_zero()
    }

    pub fn field(&self) -> FieldDescriptor {
        FieldDescriptor { d: self.d }
    }

    // The descriptor sticks: a rational element tagged with a field keeps
    // that tag through arithmetic with untagged rationals.
    fn common_d(&self, other: &Self) -> Result<i64> {
        if self.d == other.d {
            return Ok(self.d);
        }
        match (self.im.is_zero(), other.im.is_zero()) {
            (false, false) => Err(Error::FieldMismatch {
                left: self.d,
                right: other.d,
            }),
            (false, true) => Ok(self.d),
            (true, false) => Ok(other.d),
            (true, true) => Ok(if self.d != 0 { self.d } else { other.d }),
        }
    }

    /// The same value tagged with `field`.
    pub fn in_field(&self, field: FieldDescriptor) -> Result<Self> {
        if !self.im.is_zero() && self.d != field.d {
            return Err(Error::FieldMismatch {
                left: self.d,
                right: field.d,
            });
        }
        Ok(QuadFieldElement {
            re: self.re.clone(),
            im: self.im.clone(),
            d: field.d,
        })
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_d(other)?;
        Ok(QuadFieldElement {
            re: &self.re + &other.re,
            im: &self.im + &other.im,
            d,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let d = self.common_d(other)?;
        Ok(QuadFieldElement {
            re: &self.re - &other.re,
            im: &self.im - &other.im,
            d,
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_d(other)?;
        let dd = BigRational::from_integer(BigInt::from(d));
        Ok(QuadFieldElement {
            re: &self.re * &other.re + dd * &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
            d,
        })
    }

    /// `re² − d·im²`.
    pub fn norm(&self) -> BigRational {
        let dd = BigRational::from_integer(BigInt::from(self.d));
        &self.re * &self.re - dd * &self.im * &self.im
    }

    pub fn conj(&self) -> Self {
        QuadFieldElement {
            re: self.re.clone(),
            im: -self.im.clone(),
            d: self.d,
        }
    }

    pub fn try_inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(QuadFieldElement {
            re: &self.re / &n,
            im: -(&self.im / &n),
            d: self.d,
        })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.try_inv()?)
    }
}

impl PartialEq for QuadFieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.re == other.re && self.im == other.im && (self.im.is_zero() || self.d == other.d)
    }
}

impl Eq for QuadFieldElement {}

impl Hash for QuadFieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.re.hash(state);
        self.im.hash(state);
        if !self.im.is_zero() {
            self.d.hash(state);
        }
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr for QuadFieldElement {
            type Output = QuadFieldElement;
            fn $m(self, rhs: QuadFieldElement) -> QuadFieldElement {
                self.$f(&rhs).expect("quadratic field operation")
            }
        }
        impl<'a> $tr<&'a QuadFieldElement> for QuadFieldElement {
            type Output = QuadFieldElement;
            fn $m(self, rhs: &'a QuadFieldElement) -> QuadFieldElement {
                self.$f(rhs).expect("quadratic field operation")
            }
        }
        impl<'a, 'b> $tr<&'b QuadFieldElement> for &'a QuadFieldElement {
            type Output = QuadFieldElement;
            fn $m(self, rhs: &'b QuadFieldElement) -> QuadFieldElement {
                self.$f(rhs).expect("quadratic field operation")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl Neg for QuadFieldElement {
    type Output = QuadFieldElement;
    fn neg(self) -> QuadFieldElement {
        QuadFieldElement {
            re: -self.re,
            im: -self.im,
            d: self.d,
        }
    }
}

impl Neg for &QuadFieldElement {
    type Output = QuadFieldElement;
    fn neg(self) -> QuadFieldElement {
        -(self.clone())
    }
}

impl Zero for QuadFieldElement {
    fn zero() -> Self {
        Self::int(0)
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for QuadFieldElement {
    fn one() -> Self {
        Self::int(1)
    }
}

impl Field for QuadFieldElement {
    fn inv(&self) -> Option<Self> {
        self.try_inv().ok()
    }

    fn sqrt(&self) -> Option<Self> {
        let d = BigRational::from_integer(BigInt::from(self.d));
        if self.im.is_zero() {
            if let Some(r) = rational_sqrt(&self.re) {
                return Some(QuadFieldElement::rational(r));
            }
            if self.d == 0 {
                return None;
            }
            // (t·√d)² = t²·d
            let t = rational_sqrt(&(&self.re / &d))?;
            return Some(QuadFieldElement {
                re: BigRational::zero(),
                im: t,
                d: self.d,
            });
        }
        // (x + y√d)² = re + im√d  ⇔  x² + d·y² = re, 2xy = im.
        let n = rational_sqrt(&self.norm())?;
        let two = BigRational::from_integer(BigInt::from(2));
        for cand in [(&self.re + &n) / &two, (&self.re - &n) / &two] {
            if let Some(x) = rational_sqrt(&cand) {
                if x.is_zero() {
                    continue;
                }
                let y = &self.im / (&two * &x);
                let r = QuadFieldElement {
                    re: x,
                    im: y,
                    d: self.d,
                };
                if &r * &r == *self {
                    return Some(r);
                }
            }
        }
        None
    }

    fn sqrt_hint(&self, hint: &Self) -> Option<Self> {
        if self.d == 0 && hint.d != 0 {
            let tagged = QuadFieldElement {
                d: hint.d,
                ..self.clone()
            };
            return tagged.sqrt();
        }
        self.sqrt()
    }

    fn from_rational(q: BigRational) -> Self {
        QuadFieldElement::rational(q)
    }

    fn to_rational(&self) -> Option<BigRational> {
        if self.im.is_zero() {
            Some(self.re.clone())
        } else {
            None
        }
    }

    fn is_compound(&self) -> bool {
        !self.re.is_zero() && !self.im.is_zero()
    }

    fn is_negative_display(&self) -> bool {
        if self.re.is_zero() {
            self.im.is_negative()
        } else {
            !self.is_compound() && self.re.is_negative()
        }
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, q: &BigRational) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "{}/{}", q.numer(), q.denom())
    }
}

fn write_imag(f: &mut fmt::Formatter<'_>, im: &BigRational, sym: &str) -> fmt::Result {
    if im.is_one() {
        write!(f, "{}", sym)
    } else if (-im).is_one() {
        write!(f, "-{}", sym)
    } else {
        write_rational(f, im)?;
        write!(f, "*{}", sym)
    }
}

impl Serialize for QuadFieldElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl fmt::Display for QuadFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = self.field().generator_symbol();
        if self.im.is_zero() {
            write_rational(f, &self.re)
        } else if self.re.is_zero() {
            write_imag(f, &self.im, &sym)
        } else {
            write_rational(f, &self.re)?;
            if self.im.is_negative() {
                write!(f, " - ")?;
                write_imag(f, &-self.im.clone(), &sym)
            } else {
                write!(f, " + ")?;
                write_imag(f, &self.im, &sym)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(re: i64, im: i64, d: i64) -> QuadFieldElement {
        QuadFieldElement::from_parts((re, 1), (im, 1), d)
    }

    #[test]
    fn gaussian_inverse() {
        let z = e(1, 1, -1);
        let inv = z.try_inv().unwrap();
        assert_eq!(inv, QuadFieldElement::from_parts((1, 2), (-1, 2), -1));
        assert_eq!(&z * &inv, QuadFieldElement::one());
    }

    #[test]
    fn omega_squared_is_minus_three() {
        let w = FieldDescriptor::EISENSTEIN.generator();
        assert_eq!(&w * &w, QuadFieldElement::int(-3));
    }

    #[test]
    fn mismatched_fields_are_rejected() {
        let a = e(0, 1, -1);
        let b = e(0, 1, -3);
        assert!(matches!(a.try_add(&b), Err(Error::FieldMismatch { .. })));
        // rationals embed anywhere
        assert!(a.try_add(&QuadFieldElement::int(3)).is_ok());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(matches!(
            QuadFieldElement::int(0).try_inv(),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn square_roots_in_quadratic_fields() {
        // -3 = w², and 2i = (1 + i)²
        assert_eq!(Field::sqrt(&e(-3, 0, -3)), Some(e(0, 1, -3)));
        let r = Field::sqrt(&e(0, 2, -1)).unwrap();
        assert_eq!(&r * &r, e(0, 2, -1));
        assert_eq!(Field::sqrt(&e(2, 0, -1)), None);
        // discriminant -2 + i/2 from a tangent cone is not a square in Q(i)
        assert_eq!(
            Field::sqrt(&QuadFieldElement::from_parts((-2, 1), (1, 2), -1)),
            None
        );
    }

    #[test]
    fn display_forms() {
        assert_eq!(e(3, 0, 0).to_string(), "3");
        assert_eq!(e(0, -1, -3).to_string(), "-w");
        assert_eq!(
            QuadFieldElement::from_parts((1, 2), (-3, 2), -1).to_string(),
            "1/2 - 3/2*i"
        );
    }

    #[test]
    fn invalid_descriptors() {
        assert!(FieldDescriptor::new(4).is_err());
        assert!(FieldDescriptor::new(1).is_err());
        assert!(FieldDescriptor::new(-3).is_ok());
    }
}
