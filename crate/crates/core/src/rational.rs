//! Exact rational scalars and small integer helpers.
//!
//! `Rational` is a reduced big-integer fraction; nothing in the crate uses
//! floating point.

use num_bigint::BigInt;
use num_integer::{Integer};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("invalid rational `{0}`")]
    Rational(String),
    #[error("empty list")]
    Empty,
}

/// Rational from a machine integer.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`, reduced. Panics if `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn ints(values: &[i64]) -> Vec<Rational> {
    values.iter().map(|&v| int(v)).collect()
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let t = text.trim();
    let bad = || ParseError::Rational(t.to_string());
    match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => BigInt::from_str(t)
            .map(Rational::from_integer)
            .map_err(|_| bad()),
    }
}

/// Parses a comma-separated list of rationals.
pub fn parse_list(text: &str) -> Result<Vec<Rational>, ParseError> {
    let items: Vec<&str> = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if items.is_empty() {
        return Err(ParseError::Empty);
    }
    items.into_iter().map(parse_rational).collect()
}

/// Formats values as `a, b, c` with `p/q` for non-integers.
pub fn format_list(values: &[Rational]) -> String {
    values
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// `base^exp` for any integer exponent. Panics on `0^negative`.
pub fn pow(base: &Rational, exp: i64) -> Rational {
    if exp == 0 {
        return Rational::one();
    }
    let mut acc = Rational::one();
    let mut b = if exp < 0 {
        assert!(!base.is_zero(), "zero to a negative power");
        base.recip()
    } else {
        base.clone()
    };
    let mut e = exp.unsigned_abs();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    acc
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Non-negative rational square root, if one exists.
pub fn sqrt(r: &Rational) -> Option<Rational> {
    let n = exact_isqrt(r.numer())?;
    let d = exact_isqrt(r.denom())?;
    Some(Rational::new(n, d))
}

/// Binomial coefficient; zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn binomial_q(n: i64, k: i64) -> Rational {
    Rational::from_integer(binomial(n, k))
}

/// Catalan number `C_n`.
pub fn catalan(n: usize) -> BigInt {
    let n = n as i64;
    binomial(2 * n, n) / BigInt::from(n + 1)
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Least common multiple of the denominators.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// `(-1)^k` as a rational.
pub fn sign_pow(k: i64) -> Rational {
    if k.rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_formats() {
        assert_eq!(parse_rational("-6/4").unwrap(), frac(-3, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        let l = parse_list("1, -1/2,3").unwrap();
        assert_eq!(format_list(&l), "1, -1/2, 3");
    }

    #[test]
    fn powers() {
        assert_eq!(pow(&int(3), 4), int(81));
        assert_eq!(pow(&int(3), -2), frac(1, 9));
        assert_eq!(pow(&int(0), 0), int(1));
        assert_eq!(pow(&frac(-2, 3), 3), frac(-8, 27));
    }

    #[test]
    fn square_roots() {
        assert_eq!(sqrt(&frac(9, 4)), Some(frac(3, 2)));
        assert_eq!(sqrt(&int(2)), None);
        assert_eq!(sqrt(&int(-1)), None);
        assert_eq!(sqrt(&int(0)), Some(int(0)));
    }

    #[test]
    fn binomials_and_catalan() {
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(3, -1), BigInt::zero());
        let c: Vec<BigInt> = (0..7).map(catalan).collect();
        assert_eq!(c, [1, 1, 2, 5, 14, 42, 132].map(BigInt::from));
    }
}
