//! Exact arithmetic helpers: comparisons between products of integer powers
//! and parsing of rational parameters.
//!
//! Products are evaluated in `u128` when they fit and fall back to
//! [`BigUint`] otherwise, so every comparison is exact.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::One;

use crate::error::{Error, Result};

/// A rational parameter such as `y`, `a` or `β`.
pub type Rational = Ratio<u64>;

fn product_u128(factors: &[(u64, u32)]) -> Option<u128> {
    factors.iter().try_fold(1u128, |acc, &(base, exp)| {
        acc.checked_mul((base as u128).checked_pow(exp)?)
    })
}

fn product_big(factors: &[(u64, u32)]) -> BigUint {
    factors.iter().fold(BigUint::one(), |acc, &(base, exp)| {
        acc * BigUint::from(base).pow(exp)
    })
}

/// Compares `∏ lhs.0^lhs.1` against `∏ rhs.0^rhs.1` exactly.
pub fn cmp_products(lhs: &[(u64, u32)], rhs: &[(u64, u32)]) -> Ordering {
    match (product_u128(lhs), product_u128(rhs)) {
        (Some(l), Some(r)) => l.cmp(&r),
        _ => product_big(lhs).cmp(&product_big(rhs)),
    }
}

/// `∏ lhs ≤ ∏ rhs`, exactly.
pub fn le_products(lhs: &[(u64, u32)], rhs: &[(u64, u32)]) -> bool {
    cmp_products(lhs, rhs) != Ordering::Greater
}

/// `u64` exponent from a `u64` numerator/denominator, rejecting absurd sizes.
pub(crate) fn small_exp(v: u64) -> u32 {
    u32::try_from(v).expect("rational parameter component exceeds u32")
}

/// Parses `"p/q"`, an integer, or a plain decimal such as `"2.5"` into an
/// exact positive-or-zero rational. Decimals are converted digit for digit.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let bad = || Error::Domain(format!("cannot parse rational `{text}`"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let q: u64 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(Error::Domain(format!("zero denominator in `{text}`")));
        }
        return Ok(Ratio::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() && int.is_empty() {
            return Err(bad());
        }
        if !int.chars().all(|c| c.is_ascii_digit()) || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        if frac.len() > 18 {
            return Err(Error::Domain(format!("too many decimal digits in `{text}`")));
        }
        let den = 10u64.pow(frac.len() as u32);
        let int_part: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let frac_part: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let num = int_part
            .checked_mul(den)
            .and_then(|v| v.checked_add(frac_part))
            .ok_or_else(bad)?;
        return Ok(Ratio::new(num, den));
    }
    let n: u64 = s.parse().map_err(|_| bad())?;
    Ok(Ratio::from_integer(n))
}

/// Converts a rational to `f64`.
pub fn to_f64(q: &Rational) -> f64 {
    *q.numer() as f64 / *q.denom() as f64
}

/// Converts a rational to an arbitrary-precision rational.
pub fn to_big(q: &Rational) -> num_rational::BigRational {
    num_rational::BigRational::new((*q.numer()).into(), (*q.denom()).into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("5/2").unwrap(), Ratio::new(5, 2));
        assert_eq!(parse_rational("2.5").unwrap(), Ratio::new(5, 2));
        assert_eq!(parse_rational("3").unwrap(), Ratio::from_integer(3));
        assert_eq!(parse_rational("0.125").unwrap(), Ratio::new(1, 8));
        assert_eq!(parse_rational(".5").unwrap(), Ratio::new(1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("-1").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn product_comparison_falls_back_to_big_integers() {
        // 3^90 > 2^140 although both overflow u128
        assert_eq!(cmp_products(&[(3, 90)], &[(2, 140)]), Ordering::Greater);
        assert_eq!(cmp_products(&[(2, 200)], &[(4, 100)]), Ordering::Equal);
        assert!(le_products(&[(2, 3), (3, 1)], &[(24, 1)]));
        assert!(!le_products(&[(25, 1)], &[(2, 3), (3, 1)]));
    }
}
