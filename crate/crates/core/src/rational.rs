//! Exact rational scalars.
//!
//! All core arithmetic runs over arbitrary-precision rationals; values are
//! kept reduced with a positive denominator by the backing type.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type Integer = BigInt;

pub fn rat_i64(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses "p", "-p" or "p/q" with an arbitrary-precision result.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| Error::Syntax(format!("invalid integer `{num}`")))?;
    let d: BigInt = match den {
        None => BigInt::one(),
        Some(d) => d
            .parse()
            .map_err(|_| Error::Syntax(format!("invalid denominator `{d}`")))?,
    };
    if d.is_zero() {
        return Err(Error::Syntax("zero denominator".into()));
    }
    Ok(Rational::new(n, d))
}

/// Best-effort conversion to f64 (used only by the numeric oracle paths).
pub fn rat_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of leading digits for extreme values.
        let n = r.numer().to_f64().unwrap_or(if r.numer().is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        });
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// n! as a big integer.
pub fn factorial(n: u32) -> Integer {
    let mut acc = Integer::one();
    for k in 2..=n as u64 {
        acc *= k;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rationals() {
        assert_eq!(parse_rational("3").unwrap(), rat_i64(3));
        assert_eq!(parse_rational("-3/2").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("4/6").unwrap(), rat(2, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), Integer::one());
        assert_eq!(factorial(5), Integer::from(120));
    }
}
