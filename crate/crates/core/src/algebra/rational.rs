//! Text encoding of exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result, ValidationError};

pub type Rational = BigRational;

/// Parses `"a"` or `"a/b"` into a rational in lowest terms.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational numerator in {text:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational denominator in {text:?}")))?;
    if den.is_zero() {
        return Err(ValidationError::ZeroDenominator.into());
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `"a"` for integers, `"a/b"` otherwise.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn bit_length(value: &BigInt) -> u64 {
    value.bits().max(1)
}

/// Smallest `n >= 0` with `2^n >= value` for a positive integer `value`.
pub fn ceil_log2(value: &BigInt) -> u64 {
    assert!(value > &BigInt::zero(), "ceil_log2 of a non-positive integer");
    if value.is_one() {
        0
    } else {
        (value - 1u32).bits()
    }
}
