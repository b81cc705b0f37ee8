//! Exact rationals and their `"num/den"` string form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Integer value of `r`, if it fits in an `i64`.
pub fn to_i64(r: &Rational) -> Option<i64> {
    if !is_integer(r) {
        return None;
    }
    i64::try_from(r.numer()).ok()
}

pub fn format(r: &Rational) -> String {
    r.to_string()
}

/// Parses `"p/q"` or `"p"`; the result is reduced.
pub fn parse(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidFraction(s.to_string());
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let digits = |t: &str, signed: bool| {
        let body = if signed { t.strip_prefix('-').unwrap_or(t) } else { t };
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits(n, true) || !digits(d, false) {
        return Err(bad());
    }
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

/// Fractional part in `[0, 1)`.
pub fn frac(r: &Rational) -> Rational {
    r - r.floor()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}

/// Serde adapter storing a rational as a `"num/den"` string.
pub mod as_str {
    use super::Rational;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("2/4").unwrap(), rat(1, 2));
        assert_eq!(parse("-3").unwrap(), int(-3));
        assert_eq!(format(&rat(-4, 12)), "-1/3");
        assert_eq!(format(&int(7)), "7");
        assert!(parse("1/0").is_err());
        assert!(parse("1/-2").is_err());
        assert!(parse("x").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn fractional_part() {
        assert_eq!(frac(&rat(4, 3)), rat(1, 3));
        assert_eq!(frac(&rat(-4, 3)), rat(2, 3));
        assert_eq!(frac(&int(-1)), int(0));
    }
}
