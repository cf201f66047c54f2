//! Exact rational scalars.
//!
//! Every coefficient in the engine is a [`Rat`] (an arbitrary-precision
//! rational); floating point is never used. This module adds the small
//! amount of glue the rest of the crate needs: integer/pair constructors
//! and exact parsing of the textual forms accepted in descriptor files and
//! expressions (`"3"`, `"-3/4"`, `"0.25"`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number, always stored reduced with a
/// positive denominator.
pub type Rat = BigRational;

/// `n` as a rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as a reduced rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// `(-1)^k` as a rational.
pub fn sign_pow(k: u32) -> Rat {
    if k.is_multiple_of(2) {
        Rat::one()
    } else {
        -Rat::one()
    }
}

/// `1/(n!)` as a rational.
pub fn inv_factorial(n: u32) -> Rat {
    let mut f = BigInt::one();
    for i in 2..=n {
        f *= BigInt::from(i);
    }
    Rat::new(BigInt::one(), f)
}

/// Error produced when a string is not an exact rational literal.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal `{literal}`: {reason}")]
pub struct RationalParseError {
    pub literal: String,
    pub reason: String,
}

fn parse_error(s: &str, reason: &str) -> RationalParseError {
    RationalParseError {
        literal: s.to_string(),
        reason: reason.to_string(),
    }
}

/// Parses `"3"`, `"-3"`, `"3/4"`, `"-3/4"`, `"0.25"`, `"-1.5"` exactly.
///
/// Decimal literals are converted without rounding (`0.25` becomes `1/4`);
/// fraction literals must have a nonzero denominator.
pub fn parse_rational(s: &str) -> Result<Rat, RationalParseError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(parse_error(s, "empty string"));
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    if body.is_empty() {
        return Err(parse_error(s, "missing digits"));
    }
    // Components after the single leading sign must be bare digit runs;
    // inner signs, spaces, and exponents are all rejected here.
    let digits = |part: &str, what: &str| -> Result<BigInt, RationalParseError> {
        if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(parse_error(
                s,
                &format!("{what} is not an unsigned integer"),
            ));
        }
        part.parse()
            .map_err(|_| parse_error(s, &format!("{what} is not an unsigned integer")))
    };
    let value = if let Some((num, den)) = body.split_once('/') {
        let n = digits(num, "numerator")?;
        let d = digits(den, "denominator")?;
        if d.is_zero() {
            return Err(parse_error(s, "zero denominator"));
        }
        Rat::new(n, d)
    } else if let Some((whole, frac)) = body.split_once('.') {
        let w = digits(whole, "integer part")?;
        let f = digits(frac, "fractional part")?;
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        Rat::from_integer(w) + Rat::new(f, scale)
    } else {
        Rat::from_integer(digits(body, "literal")?)
    };
    Ok(if neg { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_integers_fractions_and_decimals() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-3").unwrap(), int(-3));
        assert_eq!(parse_rational("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("2/4").unwrap(), rat(1, 2));
    }

    #[test]
    fn rejects_malformed_literals() {
        for bad in ["", "x", "1/0", "1.", ".5", "1/-2", "--3", "1//2"] {
            assert!(parse_rational(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn reduced_with_positive_denominator() {
        let r = Rat::new(BigInt::from(-2), BigInt::from(-4));
        assert_eq!(r, rat(1, 2));
        let r = Rat::new(BigInt::from(2), BigInt::from(-4));
        assert_eq!(r, rat(-1, 2));
    }

    #[test]
    fn inv_factorial_values() {
        assert_eq!(inv_factorial(0), int(1));
        assert_eq!(inv_factorial(1), int(1));
        assert_eq!(inv_factorial(4), rat(1, 24));
    }
}
