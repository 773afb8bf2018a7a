//! Thin helpers around [`num_rational::BigRational`].

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn from_big(value: BigInt) -> Rational {
    Rational::from_integer(value)
}

/// `2^e` for a possibly negative exponent.
pub fn pow2(e: i64) -> Rational {
    let magnitude = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        Rational::from_integer(magnitude)
    } else {
        Rational::new(BigInt::one(), magnitude)
    }
}

pub fn pow(base: &Rational, e: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= base;
    }
    acc
}

/// Canonical text form: `a/b` with `b > 0`, or `a` when `b = 1`.
pub fn render(value: &Rational) -> String {
    value.to_string()
}

pub fn parse(text: &str) -> Result<Rational> {
    let trimmed = text.trim();
    let parsed: std::result::Result<Rational, _> = trimmed.parse();
    match parsed {
        Ok(v) => Ok(v),
        Err(_) => Err(Error::InvalidRational(text.to_string())),
    }
}

pub fn is_integer(value: &Rational) -> bool {
    value.denom().is_one()
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}
