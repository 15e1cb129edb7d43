//! Arbitrary-precision rationals.
//!
//! `BigRational` already keeps its values in lowest terms with a positive
//! denominator, so it is used directly.

use alloc::string::String;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{domain, Result};

pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Renders as `p/q`, or `p` when the denominator is one.
pub fn to_string(r: &Rational) -> String {
    alloc::format!("{}", r)
}

pub fn parse(text: &str) -> Result<Rational> {
    let text = text.trim();
    let parsed = match text.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| domain!("bad numerator in {text:?}"))?;
            let q = BigInt::from_str(q.trim()).map_err(|_| domain!("bad denominator in {text:?}"))?;
            if q.is_zero() {
                return Err(domain!("zero denominator in {text:?}"));
            }
            Rational::new(p, q)
        }
        None => Rational::from_integer(
            BigInt::from_str(text).map_err(|_| domain!("not a rational: {text:?}"))?,
        ),
    };
    Ok(parsed)
}

pub fn floor(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

/// Fractional part in `[0, 1)`.
pub fn fract(r: &Rational) -> Rational {
    r - Rational::from_integer(floor(r))
}

pub fn to_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

pub fn is_nonnegative_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms() {
        let r = rat(6, -4);
        assert_eq!(to_string(&r), "-3/2");
        assert_eq!(*r.denom(), BigInt::from(2));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["0", "7", "-11/4", "1/12"] {
            assert_eq!(to_string(&parse(s).unwrap()), s);
        }
        assert_eq!(parse("4/6").unwrap(), rat(2, 3));
        assert!(parse("1/0").is_err());
        assert!(parse("x").is_err());
    }

    #[test]
    fn floor_and_fract() {
        assert_eq!(floor(&rat(11, 4)), BigInt::from(2));
        assert_eq!(fract(&rat(11, 4)), rat(3, 4));
        assert_eq!(fract(&rat(-1, 3)), rat(2, 3));
        assert_eq!(fract(&int(5)), int(0));
    }
}
