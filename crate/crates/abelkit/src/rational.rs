//! Exact rational scalars.
//!
//! All formal series coefficients are `Rational` (arbitrary-size numerator,
//! positive denominator, always in lowest terms). Arithmetic never rounds;
//! big-floats enter only at evaluation time.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Exact fraction with arbitrary-size integer parts, stored in lowest terms
/// with a positive denominator.
pub type Rational = num_rational::BigRational;

/// `n/d` as an exact rational. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer `n` as a rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Exact `n!` for coefficient formulas.
pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    acc
}

/// Parses "n", "n/d", or a plain decimal like "-0.125" into an exact rational.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let num: BigInt = n.trim().parse().ok()?;
        let den: BigInt = d.trim().parse().ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(Rational::new(num, den));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.contains(['e', 'E']) {
            return None;
        }
        let negative = int_part.trim_start().starts_with('-');
        let int_digits = if int_part.is_empty() || int_part == "-" || int_part == "+" {
            BigInt::zero()
        } else {
            int_part.parse().ok()?
        };
        if !frac_part.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let frac_digits: BigInt = if frac_part.is_empty() {
            BigInt::zero()
        } else {
            frac_part.parse().ok()?
        };
        let unsigned = int_digits.abs() * &scale + frac_digits;
        let signed = if negative { -unsigned } else { unsigned };
        return Some(Rational::new(signed, scale));
    }
    let num: BigInt = s.parse().ok()?;
    Some(Rational::from_integer(num))
}
