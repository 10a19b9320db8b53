//! Exact rational coefficients for the module hot paths: `Ratio<i64>` inline,
//! promoted to `BigRational` when a checked operation overflows. Values that
//! fit in `i64/i64` are always stored small, so derived equality is exact.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, ToPrimitive, Zero};

use super::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Small(Ratio<i64>),
    Big(Box<BigRational>),
}

impl Coeff {
    pub fn from_scalar(x: &Scalar) -> Coeff {
        match (x.numer().to_i64(), x.denom().to_i64()) {
            (Some(p), Some(q)) => Coeff::Small(Ratio::new_raw(p, q)),
            _ => Coeff::Big(Box::new(x.clone())),
        }
    }

    pub fn to_scalar(&self) -> Scalar {
        match self {
            Coeff::Small(r) => Scalar::new_raw(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            Coeff::Big(b) => (**b).clone(),
        }
    }

    fn demote(b: BigRational) -> Coeff {
        Coeff::from_scalar(&b)
    }

    fn via_big(&self, other: &Coeff, f: impl Fn(BigRational, BigRational) -> BigRational) -> Coeff {
        Coeff::demote(f(self.to_scalar(), other.to_scalar()))
    }
}

impl From<i64> for Coeff {
    fn from(n: i64) -> Self {
        Coeff::Small(Ratio::from_integer(n))
    }
}

impl From<&Scalar> for Coeff {
    fn from(x: &Scalar) -> Self {
        Coeff::from_scalar(x)
    }
}

impl Zero for Coeff {
    fn zero() -> Self {
        Coeff::Small(Ratio::zero())
    }

    fn is_zero(&self) -> bool {
        matches!(self, Coeff::Small(r) if r.is_zero())
    }
}

impl One for Coeff {
    fn one() -> Self {
        Coeff::Small(Ratio::one())
    }
}

impl Add<&Coeff> for &Coeff {
    type Output = Coeff;
    fn add(self, other: &Coeff) -> Coeff {
        if let (Coeff::Small(a), Coeff::Small(b)) = (self, other) {
            if a.is_integer() && b.is_integer() {
                if let Some(c) = a.numer().checked_add(b.numer()) {
                    return Coeff::Small(Ratio::from_integer(c));
                }
            } else if let Some(c) = a.checked_add(b) {
                return Coeff::Small(c);
            }
        }
        self.via_big(other, |a, b| a + b)
    }
}

impl Add for Coeff {
    type Output = Coeff;
    fn add(self, other: Coeff) -> Coeff {
        &self + &other
    }
}

impl Sub<&Coeff> for &Coeff {
    type Output = Coeff;
    fn sub(self, other: &Coeff) -> Coeff {
        if let (Coeff::Small(a), Coeff::Small(b)) = (self, other) {
            if let Some(c) = a.checked_sub(b) {
                return Coeff::Small(c);
            }
        }
        self.via_big(other, |a, b| a - b)
    }
}

impl Mul<&Coeff> for &Coeff {
    type Output = Coeff;
    fn mul(self, other: &Coeff) -> Coeff {
        if let (Coeff::Small(a), Coeff::Small(b)) = (self, other) {
            if a.is_integer() && b.is_integer() {
                if let Some(c) = a.numer().checked_mul(b.numer()) {
                    return Coeff::Small(Ratio::from_integer(c));
                }
            } else if let Some(c) = a.checked_mul(b) {
                return Coeff::Small(c);
            }
        }
        self.via_big(other, |a, b| a * b)
    }
}

impl Mul for Coeff {
    type Output = Coeff;
    fn mul(self, other: Coeff) -> Coeff {
        &self * &other
    }
}

impl AddAssign<&Coeff> for Coeff {
    fn add_assign(&mut self, other: &Coeff) {
        *self = &*self + other;
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        match self {
            Coeff::Small(r) if *r.numer() != i64::MIN => Coeff::Small(-r),
            _ => Coeff::demote(-self.to_scalar()),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Small(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Coeff::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::{frac, int};

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Coeff::from(i64::MAX);
        let sum = &big + &Coeff::from(1);
        assert!(matches!(sum, Coeff::Big(_)));
        assert_eq!(sum.to_scalar(), int(i64::MAX) + int(1));
        let back = &sum - &Coeff::from(1);
        assert_eq!(back, big);
        assert_eq!((&Coeff::from_scalar(&frac(1, 2)) * &Coeff::from(4)).to_string(), "2/1");
        let min = Coeff::from(i64::MIN);
        assert_eq!((-&min).to_scalar(), -int(i64::MIN));
    }
}
