//! Exact rational scalars.
//!
//! `BigRational` already keeps itself reduced with a positive denominator, so
//! the scalar type is an alias plus a few constructors and the `p/q` text form
//! used by every file format in the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Scalar {
    assert!(q != 0, "zero denominator");
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Always `p/q`, including integers (`3/1`, `0/1`).
pub fn to_pq(x: &Scalar) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Accepts `p/q` or a bare integer `p`.
pub fn parse_scalar(s: &str) -> Result<Scalar, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| format!("bad numerator in `{s}`"))?;
    let d: BigInt = den.parse().map_err(|_| format!("bad denominator in `{s}`"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Scalar::new(n, d))
}

/// Integer value if the scalar is an integer that fits in `i64`.
pub fn as_i64(x: &Scalar) -> Option<i64> {
    use num_traits::ToPrimitive;
    if x.is_integer() {
        x.numer().to_i64()
    } else {
        None
    }
}

/// `x^e` for integer `e`; panics on `0^e` with `e < 0`.
pub fn powi(x: &Scalar, e: i64) -> Scalar {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        assert!(!x.is_zero(), "zero to a negative power");
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pq_round_trip() {
        for (p, q) in [(0, 1), (3, 1), (-1, 2), (6, -4), (7, 21)] {
            let x = frac(p, q);
            assert_eq!(parse_scalar(&to_pq(&x)).unwrap(), x);
        }
        assert_eq!(to_pq(&frac(6, -4)), "-3/2");
        assert_eq!(to_pq(&int(0)), "0/1");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
        assert_eq!(parse_scalar("-5").unwrap(), int(-5));
    }

    #[test]
    fn integer_powers() {
        assert_eq!(powi(&frac(2, 3), -2), frac(9, 4));
        assert_eq!(powi(&int(-1), 3), int(-1));
        assert_eq!(powi(&int(5), 0), int(1));
    }
}
