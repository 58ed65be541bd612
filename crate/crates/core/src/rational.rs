//! Exact rational helpers: text form, parsing and square testing.

use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// Renders a rational as `num/den` in lowest terms, integers included (`5/1`).
pub fn format_rational(v: &Rational) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

/// Parses `a/b`, a plain integer, or a decimal literal such as `-0.25` or
/// `1.5e-3`. Decimal literals are converted exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_int(num)?;
        let den = parse_int(den)?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(num, den));
    }
    parse_decimal(s)
}

fn parse_int(s: &str) -> Result<BigInt> {
    BigInt::from_str(s.trim()).map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

fn parse_decimal(s: &str) -> Result<Rational> {
    let bad = || Error::Parse(format!("not a rational literal: {s:?}"));
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i32 = s[i + 1..].parse().map_err(|_| bad())?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.as_bytes().first() {
        Some(b'-') => (true, &mantissa[1..]),
        Some(b'+') => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut numer = BigInt::from_str(&all_digits).map_err(|_| bad())?;
    if negative {
        numer = -numer;
    }
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let value = if scale >= 0 {
        Rational::from_integer(numer * num_traits::pow(ten, scale as usize))
    } else {
        Rational::new(numer, num_traits::pow(ten, (-scale) as usize))
    };
    Ok(value)
}

/// Exact square root of a non-negative integer, if it is a perfect square.
pub fn integer_square_root(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let root = n.sqrt();
    (&root * &root == *n).then_some(root)
}

/// The positive rational `s` with `s * s == v`, when `v > 0` is a rational
/// square. Works on the reduced numerator and denominator.
pub fn rational_square_root(v: &Rational) -> Option<Rational> {
    if v.numer().sign() != Sign::Plus {
        return None;
    }
    let num = integer_square_root(v.numer())?;
    let den = integer_square_root(v.denom())?;
    Some(Rational::new(num, den))
}

/// Serde adapter writing rationals as `num/den` strings.
pub mod serde_text {
    use serde::{Deserialize, Deserializer, Serializer};

    use super::{format_rational, parse_rational};
    use crate::Rational;

    pub fn serialize<S: Serializer>(v: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter writing big integers as bare JSON numbers.
pub mod serde_bigint {
    use std::str::FromStr;

    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        let number = serde_json::Number::from_str(&v.to_string()).map_err(serde::ser::Error::custom)?;
        number.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let number = serde_json::Number::deserialize(d)?;
        BigInt::from_str(&number.to_string()).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn square_roots() {
        assert_eq!(rational_square_root(&q(4, 1)), Some(q(2, 1)));
        assert_eq!(rational_square_root(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(rational_square_root(&q(2, 1)), None);
        assert_eq!(rational_square_root(&q(0, 1)), None);
        assert_eq!(rational_square_root(&q(-4, 1)), None);
        // 18/8 reduces to 9/4
        assert_eq!(rational_square_root(&q(18, 8)), Some(q(3, 2)));
    }

    #[test]
    fn text_form() {
        assert_eq!(format_rational(&q(-3, 5)), "-3/5");
        assert_eq!(format_rational(&q(5, 1)), "5/1");
        assert_eq!(format_rational(&q(0, 7)), "0/1");
        assert_eq!(format_rational(&q(6, -4)), "-3/2");
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("5/1").unwrap(), q(5, 1));
        assert_eq!(parse_rational("-6/4").unwrap(), q(-3, 2));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert_eq!(parse_rational("0.5").unwrap(), q(1, 2));
        assert_eq!(parse_rational("-1.25").unwrap(), q(-5, 4));
        assert_eq!(parse_rational("1.5e-3").unwrap(), q(3, 2000));
        assert_eq!(parse_rational("2e2").unwrap(), q(200, 1));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("-").is_err());
    }

    #[test]
    fn integer_roots() {
        assert_eq!(integer_square_root(&BigInt::from(0)), Some(BigInt::from(0)));
        assert_eq!(integer_square_root(&BigInt::from(1_000_000_000_000i64)), Some(BigInt::from(1_000_000)));
        assert_eq!(integer_square_root(&BigInt::from(999_999_999_999i64)), None);
        assert_eq!(integer_square_root(&BigInt::from(-1)), None);
    }
}
