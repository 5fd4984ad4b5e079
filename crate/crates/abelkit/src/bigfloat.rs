//! Arbitrary-precision reals with explicitly supplied working precision.
//!
//! Thin helpers over `astro_float::BigFloat`. Every operation takes its
//! target precision in bits; there is no global precision state. Rounding is
//! ties-to-even throughout. The transcendental-constant cache is thread-local
//! so evaluations can run on parallel workers.

use std::cell::RefCell;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::{BigInt, Sign};

use crate::rational::Rational;

pub type Bf = BigFloat;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

/// Bits needed to carry `digits` decimal digits, with working headroom.
pub fn bits_for_digits(digits: u32) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 32
}

pub fn from_i64(v: i64, p: usize) -> Bf {
    if v < 0 {
        BigFloat::from_u64(v.unsigned_abs(), p).neg()
    } else {
        BigFloat::from_u64(v as u64, p)
    }
}

/// Exact conversion of a big integer (the result carries enough precision to
/// be exact regardless of `p`; later operations round to their own targets).
pub fn from_bigint(n: &BigInt, p: usize) -> Bf {
    let (sign, digits) = n.to_u64_digits();
    if digits.is_empty() {
        return BigFloat::from_u64(0, p);
    }
    let exact = p.max(64 * (digits.len() + 1));
    let mut acc = BigFloat::from_u64(0, exact);
    for (i, w) in digits.iter().enumerate() {
        if *w == 0 {
            continue;
        }
        let mut term = BigFloat::from_u64(*w, 64);
        let e = term.exponent().expect("finite word");
        term.set_exponent(e + 64 * i as i32);
        acc = acc.add(&term, exact, RM);
    }
    if sign == Sign::Minus {
        acc = acc.neg();
    }
    acc
}

pub fn from_rational(r: &Rational, p: usize) -> Bf {
    let n = from_bigint(r.numer(), p + 64);
    let d = from_bigint(r.denom(), p + 64);
    n.div(&d, p, RM)
}

pub fn add(a: &Bf, b: &Bf, p: usize) -> Bf {
    a.add(b, p, RM)
}

pub fn sub(a: &Bf, b: &Bf, p: usize) -> Bf {
    a.sub(b, p, RM)
}

pub fn mul(a: &Bf, b: &Bf, p: usize) -> Bf {
    a.mul(b, p, RM)
}

pub fn div(a: &Bf, b: &Bf, p: usize) -> Bf {
    a.div(b, p, RM)
}

pub fn recip(a: &Bf, p: usize) -> Bf {
    a.reciprocal(p, RM)
}

pub fn sqrt(a: &Bf, p: usize) -> Bf {
    a.sqrt(p, RM)
}

pub fn powi(a: &Bf, k: usize, p: usize) -> Bf {
    a.powi(k, p, RM)
}

/// Integer power with negative exponents allowed.
pub fn powi_signed(a: &Bf, k: i64, p: usize) -> Bf {
    if k >= 0 {
        powi(a, k as usize, p)
    } else {
        recip(&powi(a, (-k) as usize, p + 32), p)
    }
}

pub fn exp(a: &Bf, p: usize) -> Bf {
    with_consts(|cc| a.exp(p, RM, cc))
}

pub fn ln(a: &Bf, p: usize) -> Bf {
    with_consts(|cc| a.ln(p, RM, cc))
}

pub fn sin(a: &Bf, p: usize) -> Bf {
    with_consts(|cc| a.sin(p, RM, cc))
}

pub fn asin(a: &Bf, p: usize) -> Bf {
    with_consts(|cc| a.asin(p, RM, cc))
}

pub fn sinh(a: &Bf, p: usize) -> Bf {
    with_consts(|cc| a.sinh(p, RM, cc))
}

pub fn asinh(a: &Bf, p: usize) -> Bf {
    with_consts(|cc| a.asinh(p, RM, cc))
}

pub fn tan(a: &Bf, p: usize) -> Bf {
    with_consts(|cc| a.tan(p, RM, cc))
}

pub fn atan(a: &Bf, p: usize) -> Bf {
    with_consts(|cc| a.atan(p, RM, cc))
}

pub fn tanh(a: &Bf, p: usize) -> Bf {
    with_consts(|cc| a.tanh(p, RM, cc))
}

pub fn atanh(a: &Bf, p: usize) -> Bf {
    with_consts(|cc| a.atanh(p, RM, cc))
}

/// `a^q` for positive `a` via `exp(q·ln a)`.
pub fn pow_rational(a: &Bf, q: &Rational, p: usize) -> Bf {
    let pw = p + 64;
    let l = ln(a, pw);
    let qa = from_rational(q, pw);
    exp(&l.mul(&qa, pw, RM), p)
}

pub fn pi(p: usize) -> Bf {
    with_consts(|cc| cc.pi(p, RM))
}

pub fn parse_decimal(s: &str, p: usize) -> Bf {
    with_consts(|cc| BigFloat::parse(s, Radix::Dec, p, RM, cc))
}

/// `10^(-digits)` as a comparison threshold.
pub fn pow10_neg(digits: u32, p: usize) -> Bf {
    recip(&powi(&BigFloat::from_u64(10, p), digits as usize, p), p)
}

pub fn is_finite(a: &Bf) -> bool {
    !a.is_nan() && !a.is_inf()
}

/// Lossy conversion for step-count estimates and plotting ranges.
pub fn to_f64(a: &Bf) -> f64 {
    if a.is_zero() {
        return 0.0;
    }
    if a.is_nan() {
        return f64::NAN;
    }
    if a.is_inf() {
        return if a.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        };
    }
    let e = match a.exponent() {
        Some(e) => e,
        None => return f64::NAN,
    };
    let words = match a.mantissa_digits() {
        Some(w) => w,
        None => return f64::NAN,
    };
    let mut frac = 0.0f64;
    for (i, w) in words.iter().rev().take(2).enumerate() {
        frac += (*w as f64) / 2f64.powi(64 * (i as i32 + 1));
    }
    let v = frac * 2f64.powi(e);
    if a.is_negative() {
        -v
    } else {
        v
    }
}

/// Decimal string truncated (not rounded) at `digits` places after the point.
///
/// The value must carry enough precision that its correctly-rounded decimal
/// rendering is trustworthy past the truncation point.
pub fn decimal_truncated(a: &Bf, digits: usize) -> String {
    let neg = a.is_negative();
    if a.is_zero() {
        return format!("0.{}", "0".repeat(digits));
    }
    let rendered = format!("{}", a.abs());
    let (mant, exp10) = match rendered.split_once(['e', 'E']) {
        Some((m, e)) => (m.to_string(), e.parse::<i64>().unwrap_or(0)),
        None => (rendered.clone(), 0),
    };
    let mant = mant.trim_end_matches('.').to_string();
    let digits_str: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    // Position of the decimal point from the left of digits_str.
    let point = 1 + exp10;
    let mut int_part = String::new();
    let mut frac_part = String::new();
    if point <= 0 {
        int_part.push('0');
        frac_part.push_str(&"0".repeat((-point) as usize));
        frac_part.push_str(&digits_str);
    } else if (point as usize) >= digits_str.len() {
        int_part.push_str(&digits_str);
        int_part.push_str(&"0".repeat(point as usize - digits_str.len()));
    } else {
        int_part.push_str(&digits_str[..point as usize]);
        frac_part.push_str(&digits_str[point as usize..]);
    }
    while frac_part.len() < digits {
        frac_part.push('0');
    }
    frac_part.truncate(digits);
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{}{}", sign, int_part)
    } else {
        format!("{}{}.{}", sign, int_part, frac_part)
    }
}

/// Compact scientific rendering for error estimates and CSV output.
pub fn to_sci_string(a: &Bf, sig_digits: usize) -> String {
    if a.is_zero() {
        return "0".into();
    }
    let rendered = format!("{}", a);
    let (mant, exp10) = match rendered.split_once(['e', 'E']) {
        Some((m, e)) => (m.to_string(), e.parse::<i64>().unwrap_or(0)),
        None => (rendered.clone(), 0),
    };
    let neg = mant.starts_with('-');
    let ds: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let keep = ds
        .chars()
        .take(sig_digits.max(1))
        .collect::<String>();
    let (first, rest) = keep.split_at(1);
    let sign = if neg { "-" } else { "" };
    if rest.is_empty() {
        format!("{}{}e{}", sign, first, exp10)
    } else {
        format!("{}{}.{}e{}", sign, first, rest, exp10)
    }
}

/// Safeguarded Newton on a strictly monotone function over `[lo, hi]`.
///
/// `f` and `df` evaluate the function and its derivative at a supplied
/// working precision. Falls back to bisection whenever a Newton step leaves
/// the current bracket. Requires `f(lo)` and `f(hi)` to straddle `target`.
pub fn solve_monotone(
    f: &dyn Fn(&Bf, usize) -> Bf,
    df: &dyn Fn(&Bf, usize) -> Bf,
    target: &Bf,
    lo: &Bf,
    hi: &Bf,
    p: usize,
) -> Option<Bf> {
    let pw = p + 64;
    let two = BigFloat::from_u64(2, pw);
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    let f_lo = f(&lo, pw);
    let increasing = match f_lo.partial_cmp(target) {
        Some(ord) => ord != std::cmp::Ordering::Greater,
        None => return None,
    };
    let mut x = lo.add(&hi, pw, RM).div(&two, pw, RM);
    // Newton doubles correct digits; the cap covers a bisection-only worst case.
    let max_iter = pw + 16;
    let eps_exp = -(p as i64) - 2;
    for _ in 0..max_iter {
        let fx = f(&x, pw);
        let below = match fx.partial_cmp(target) {
            Some(std::cmp::Ordering::Less) => increasing,
            Some(std::cmp::Ordering::Greater) => !increasing,
            Some(std::cmp::Ordering::Equal) => return Some(x),
            None => return None,
        };
        if below {
            lo = x.clone();
        } else {
            hi = x.clone();
        }
        let d = df(&x, pw);
        let mut next = if d.is_zero() {
            lo.add(&hi, pw, RM).div(&two, pw, RM)
        } else {
            let step = target.sub(&fx, pw, RM).div(&d, pw, RM);
            x.add(&step, pw, RM)
        };
        if !is_finite(&next)
            || next.partial_cmp(&lo) != Some(std::cmp::Ordering::Greater)
            || next.partial_cmp(&hi) != Some(std::cmp::Ordering::Less)
        {
            next = lo.add(&hi, pw, RM).div(&two, pw, RM);
        }
        let delta = next.sub(&x, pw, RM).abs();
        x = next;
        if delta.is_zero() {
            return Some(x);
        }
        // Relative stop: |Δx| ≤ |x|·2^eps_exp.
        if let (Some(de), Some(xe)) = (delta.exponent(), x.exponent()) {
            if (de as i64) <= (xe as i64) + eps_exp {
                return Some(x);
            }
        }
        let width = hi.sub(&lo, pw, RM).abs();
        if let (Some(we), Some(xe)) = (width.exponent(), x.exponent()) {
            if (we as i64) <= (xe as i64) + eps_exp {
                return Some(x);
            }
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn bigint_conversion_round_trip() {
        let n: BigInt = "123456789012345678901234567890123456789".parse().unwrap();
        let v = from_bigint(&n, 256);
        let back = decimal_truncated(&v, 0);
        assert_eq!(back, "123456789012345678901234567890123456789");
    }

    #[test]
    fn rational_conversion() {
        let v = from_rational(&rat(1, 8), 128);
        assert_eq!(decimal_truncated(&v, 5), "0.12500");
        let v = from_rational(&rat(-2, 3), 192);
        assert!(decimal_truncated(&v, 10).starts_with("-0.6666666666"));
    }

    #[test]
    fn truncated_display() {
        let p = 256;
        let x = div(&from_i64(1, p), &from_i64(7, p), p);
        assert_eq!(decimal_truncated(&x, 12), "0.142857142857");
        let y = from_rational(&rat(12345, 10), p);
        assert_eq!(decimal_truncated(&y, 3), "1234.500");
        assert_eq!(decimal_truncated(&from_i64(0, p), 4), "0.0000");
        let z = from_rational(&rat(-1, 700), p);
        assert_eq!(decimal_truncated(&z, 8), "-0.00142857");
    }

    #[test]
    fn to_f64_sanity() {
        let p = 192;
        let x = from_rational(&rat(355, 113), p);
        assert!((to_f64(&x) - 355.0 / 113.0).abs() < 1e-12);
        assert!((to_f64(&from_i64(-42, p)) + 42.0).abs() < 1e-12);
    }

    #[test]
    fn solve_monotone_cube_root() {
        let p = 192;
        let f = |x: &Bf, pw: usize| powi(x, 3, pw);
        let df = |x: &Bf, pw: usize| mul(&powi(x, 2, pw), &from_i64(3, pw), pw);
        let target = from_i64(2, p);
        let root = solve_monotone(&f, &df, &target, &from_i64(0, p), &from_i64(2, p), p).unwrap();
        let check = powi(&root, 3, p);
        let err = sub(&check, &target, p).abs();
        assert!(err.partial_cmp(&pow10_neg(50, p)) == Some(std::cmp::Ordering::Less));
    }

    #[test]
    fn sci_string() {
        let p = 128;
        let x = from_rational(&rat(1, 300000), p);
        let s = to_sci_string(&x, 3);
        assert!(s.starts_with("3.33e-"), "{}", s);
    }
}
