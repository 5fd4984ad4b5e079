//! Registry of base functions θ: exact Taylor data, big-float evaluators,
//! basin bounds, sign convention, and conjectured normalization offsets.
//!
//! Every entry is analytic at 0 with θ(0) = 0, θ′(0) = 1, Taylor support on
//! exponents mτ+1, and leading correction coefficient γ < 0, so orbits from
//! the basin decrease monotonically to the fixed point. The internal Abel
//! convention is always `G(θ(x)) = G(x) + 1`; `presentation_sign` records
//! whether the published solution is `+G` or `−G`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bigfloat::{self, Bf};
use crate::eval::EvalError;
use crate::rational::{factorial, rat, Rational};
use crate::series::PowerSeries;

/// Upper end of the basin interval (0, top).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasinTop {
    Infinite,
    One,
    Pi,
}

impl fmt::Display for BasinTop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasinTop::Infinite => write!(f, "(0, inf)"),
            BasinTop::One => write!(f, "(0, 1)"),
            BasinTop::Pi => write!(f, "(0, pi)"),
        }
    }
}

/// Exact expression `coeff · ln(base)`, kept in a canonical form:
/// zero is `coeff = 0, base = 1`; otherwise `base > 1` and perfect powers
/// of the base are folded into the coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogExpression {
    coeff: Rational,
    base: Rational,
}

impl LogExpression {
    pub fn new(coeff: Rational, base: Rational) -> Self {
        assert!(base.is_positive(), "logarithm base must be positive");
        let mut coeff = coeff;
        let mut base = base;
        if base.is_one() || coeff.is_zero() {
            return LogExpression {
                coeff: Rational::zero(),
                base: Rational::one(),
            };
        }
        if base < Rational::one() {
            base = base.recip();
            coeff = -coeff;
        }
        // Fold perfect powers: c·ln(r^k) = (c·k)·ln(r).
        if let Some((root, k)) = perfect_power(&base) {
            base = root;
            coeff *= Rational::from_integer(k.into());
        }
        LogExpression { coeff, base }
    }

    pub fn zero() -> Self {
        LogExpression {
            coeff: Rational::zero(),
            base: Rational::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn base(&self) -> &Rational {
        &self.base
    }

    pub fn numeric(&self, p: usize) -> Bf {
        if self.is_zero() {
            return bigfloat::from_i64(0, p);
        }
        let b = bigfloat::from_rational(&self.base, p + 32);
        let l = bigfloat::ln(&b, p + 32);
        bigfloat::mul(&l, &bigfloat::from_rational(&self.coeff, p + 32), p)
    }
}

impl fmt::Display for LogExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "({})*ln({})", self.coeff, self.base)
        }
    }
}

/// Largest-k perfect-power decomposition `q = root^k`, k ≥ 2, via small
/// trial-division factoring of numerator and denominator.
fn perfect_power(q: &Rational) -> Option<(Rational, u32)> {
    let fact = |n: &BigInt| -> Option<Vec<(u64, u32)>> {
        let mut v = n.abs().to_u64()?;
        let mut out = Vec::new();
        let mut d = 2u64;
        while d * d <= v {
            if v % d == 0 {
                let mut e = 0;
                while v % d == 0 {
                    v /= d;
                    e += 1;
                }
                out.push((d, e));
            }
            d += 1;
        }
        if v > 1 {
            out.push((v, 1));
        }
        Some(out)
    };
    let num = fact(q.numer())?;
    let den = fact(q.denom())?;
    let mut g = 0u32;
    for (_, e) in num.iter().chain(den.iter()) {
        g = gcd_u32(g, *e);
    }
    if g < 2 {
        return None;
    }
    let rebuild = |fs: &[(u64, u32)]| -> BigInt {
        let mut acc = BigInt::one();
        for (p, e) in fs {
            acc *= BigInt::from(*p).pow(e / g);
        }
        acc
    };
    Some((Rational::new(rebuild(&num), rebuild(&den)), g))
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

/// Sample argument used for normalization-offset reports.
#[derive(Clone, Debug, PartialEq)]
pub enum SamplePoint {
    Rational(Rational),
    HalfPi,
}

impl SamplePoint {
    pub fn to_bf(&self, p: usize) -> Bf {
        match self {
            SamplePoint::Rational(r) => bigfloat::from_rational(r, p),
            SamplePoint::HalfPi => {
                bigfloat::div(&bigfloat::pi(p + 32), &bigfloat::from_i64(2, p + 32), p)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Kind {
    Logistic,
    Sin,
    Log1p,
    OneMinusExp,
    XExpNeg,
    LambertW,
    XOver1PlusX2,
    Arcsinh,
    Tanh,
    Arctan,
    XOverSqrt1PlusX,
    PowP(Rational),
}

/// A catalog entry: one base map θ with its exact and numeric data.
#[derive(Clone, Debug)]
pub struct BaseFunction {
    name: String,
    kind: Kind,
    tau: i64,
    gamma: Rational,
    basin_top: BasinTop,
    presentation_sign: i8,
    delta_conjecture: Option<LogExpression>,
    kindred_partner: Option<&'static str>,
    sample_point: SamplePoint,
}

impl BaseFunction {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Taylor support spacing: nonzero terms sit at exponents mτ+1.
    pub fn tau(&self) -> i64 {
        self.tau
    }

    /// Leading correction coefficient c₁ = γ < 0.
    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    pub fn basin_top(&self) -> BasinTop {
        self.basin_top
    }

    /// +1 when the published Abel series is the internal G, −1 when it is −G.
    pub fn presentation_sign(&self) -> i8 {
        self.presentation_sign
    }

    pub fn delta_conjecture(&self) -> Option<&LogExpression> {
        self.delta_conjecture.as_ref()
    }

    pub fn kindred_partner(&self) -> Option<&'static str> {
        self.kindred_partner
    }

    pub fn sample_point(&self) -> &SamplePoint {
        &self.sample_point
    }

    /// Stable key for memo tables (includes the family parameter).
    pub fn key(&self) -> String {
        match &self.kind {
            Kind::PowP(p) => format!("{}[{}]", self.name, p),
            _ => self.name.clone(),
        }
    }

    /// Exact Taylor coefficient c_m (of x^(mτ+1)), m ≥ 1.
    pub fn taylor_coefficient(&self, m: u32) -> Rational {
        assert!(m >= 1);
        self.taylor_coefficients(m).pop().unwrap()
    }

    /// c_1 ..= c_count as a batch (some recurrences are cheapest in prefix form).
    pub fn taylor_coefficients(&self, count: u32) -> Vec<Rational> {
        let n = count as usize;
        match &self.kind {
            Kind::Logistic => {
                let mut v = vec![Rational::zero(); n];
                if n >= 1 {
                    v[0] = rat(-1, 1);
                }
                v
            }
            Kind::Sin => (1..=count)
                .map(|m| {
                    Rational::new(sign_pow(m), factorial(2 * m as u64 + 1))
                })
                .collect(),
            Kind::Log1p => (1..=count)
                .map(|m| Rational::new(sign_pow(m), BigInt::from(m + 1)))
                .collect(),
            Kind::OneMinusExp => (1..=count)
                .map(|m| Rational::new(sign_pow(m), factorial(m as u64 + 1)))
                .collect(),
            Kind::XExpNeg => (1..=count)
                .map(|m| Rational::new(sign_pow(m), factorial(m as u64)))
                .collect(),
            Kind::LambertW => (1..=count)
                .map(|m| {
                    // [x^(m+1)] W = (−(m+1))^m / (m+1)!
                    let base = BigInt::from(m + 1).pow(m);
                    Rational::new(sign_pow(m) * base, factorial(m as u64 + 1))
                })
                .collect(),
            Kind::XOver1PlusX2 => (1..=count)
                .map(|m| Rational::from_integer(sign_pow(m)))
                .collect(),
            Kind::Arcsinh => (1..=count)
                .map(|m| {
                    let num = sign_pow(m) * factorial(2 * m as u64);
                    let den = BigInt::from(4u32).pow(m)
                        * factorial(m as u64).pow(2)
                        * BigInt::from(2 * m + 1);
                    Rational::new(num, den)
                })
                .collect(),
            Kind::Tanh => tanh_coefficients(n),
            Kind::Arctan => (1..=count)
                .map(|m| Rational::new(sign_pow(m), BigInt::from(2 * m + 1)))
                .collect(),
            Kind::XOverSqrt1PlusX => (1..=count)
                .map(|m| {
                    let num = sign_pow(m) * factorial(2 * m as u64);
                    let den = BigInt::from(4u32).pow(m) * factorial(m as u64).pow(2);
                    Rational::new(num, den)
                })
                .collect(),
            Kind::PowP(p) => {
                // c_m = binom(−p, m), built by the ratio recurrence.
                let mut out = Vec::with_capacity(n);
                let mut cur = Rational::one();
                for m in 1..=count {
                    let j = Rational::from_integer(BigInt::from(m - 1));
                    cur = cur * (-(p + &j)) / Rational::from_integer(BigInt::from(m));
                    out.push(cur.clone());
                }
                out
            }
        }
    }

    /// Truncated Taylor series φ = x + Σ_{m=1..terms} c_m x^(mτ+1), re-capped
    /// at `order`.
    pub fn phi(&self, terms: u32, order: i64) -> PowerSeries<Rational> {
        let coeffs = self.taylor_coefficients(terms);
        let mut list = vec![(1, Rational::one())];
        for (i, c) in coeffs.into_iter().enumerate() {
            let e = (i as i64 + 1) * self.tau + 1;
            if e <= order {
                list.push((e, c));
            }
        }
        PowerSeries::from_terms(list, order)
    }

    fn check_basin(&self, x: &Bf, p: usize) -> Result<(), EvalError> {
        if x.is_negative() || !bigfloat::is_finite(x) {
            return Err(EvalError::OutOfBasin {
                fn_name: self.name.clone(),
            });
        }
        let inside = match self.basin_top {
            BasinTop::Infinite => true,
            BasinTop::One => {
                x.partial_cmp(&bigfloat::from_i64(1, p)) == Some(std::cmp::Ordering::Less)
            }
            BasinTop::Pi => x.partial_cmp(&bigfloat::pi(p)) == Some(std::cmp::Ordering::Less),
        };
        if inside {
            Ok(())
        } else {
            Err(EvalError::OutOfBasin {
                fn_name: self.name.clone(),
            })
        }
    }

    /// θ(x) at precision `p`; `x` must lie in the closed basin [0, top).
    pub fn eval_forward(&self, x: &Bf, p: usize) -> Result<Bf, EvalError> {
        self.check_basin(x, p)?;
        if x.is_zero() {
            return Ok(bigfloat::from_i64(0, p));
        }
        let pw = p + 32;
        let one = bigfloat::from_i64(1, pw);
        let v = match &self.kind {
            Kind::Logistic => bigfloat::mul(x, &bigfloat::sub(&one, x, pw), p),
            Kind::Sin => bigfloat::sin(x, p),
            Kind::Log1p => bigfloat::ln(&bigfloat::add(&one, x, pw), p),
            Kind::OneMinusExp => bigfloat::sub(&one, &bigfloat::exp(&x.neg(), pw), p),
            Kind::XExpNeg => bigfloat::mul(x, &bigfloat::exp(&x.neg(), pw), p),
            Kind::LambertW => lambert_w(x, p)?,
            Kind::XOver1PlusX2 => {
                let den = bigfloat::add(&one, &bigfloat::mul(x, x, pw), pw);
                bigfloat::div(x, &den, p)
            }
            Kind::Arcsinh => bigfloat::asinh(x, p),
            Kind::Tanh => bigfloat::tanh(x, p),
            Kind::Arctan => bigfloat::atan(x, p),
            Kind::XOverSqrt1PlusX => {
                bigfloat::div(x, &bigfloat::sqrt(&bigfloat::add(&one, x, pw), pw), p)
            }
            Kind::PowP(q) => {
                let pw2 = pw + 32;
                let factor = bigfloat::pow_rational(&bigfloat::add(&one, x, pw2), &(-q), pw);
                bigfloat::mul(x, &factor, p)
            }
        };
        Ok(v)
    }

    /// Double-precision forward step, used only for orbit-length estimates.
    pub(crate) fn eval_forward_f64(&self, x: f64) -> f64 {
        match &self.kind {
            Kind::Logistic => x * (1.0 - x),
            Kind::Sin => x.sin(),
            Kind::Log1p => x.ln_1p(),
            Kind::OneMinusExp => -(-x).exp_m1(),
            Kind::XExpNeg => x * (-x).exp(),
            Kind::LambertW => {
                // Newton on w·e^w = x from a log-scaled seed.
                let mut w = if x > std::f64::consts::E {
                    x.ln() - x.ln().ln()
                } else {
                    x / (1.0 + x)
                };
                for _ in 0..64 {
                    let ew = w.exp();
                    let delta = (w * ew - x) / ((1.0 + w) * ew);
                    w -= delta;
                    if delta.abs() < 1e-14 * w.abs().max(1e-300) {
                        break;
                    }
                }
                w
            }
            Kind::XOver1PlusX2 => x / (1.0 + x * x),
            Kind::Arcsinh => x.asinh(),
            Kind::Tanh => x.tanh(),
            Kind::Arctan => x.atan(),
            Kind::XOverSqrt1PlusX => x / (1.0 + x).sqrt(),
            Kind::PowP(q) => {
                let qf = q.numer().to_f64().unwrap_or(f64::NAN)
                    / q.denom().to_f64().unwrap_or(f64::NAN);
                x * (1.0 + x).powf(-qf)
            }
        }
    }

    /// Unique basin-branch preimage of `y`; closed forms where they exist,
    /// safeguarded Newton otherwise.
    pub fn eval_inverse(&self, y: &Bf, p: usize) -> Result<Bf, EvalError> {
        if y.is_negative() || !bigfloat::is_finite(y) {
            return Err(EvalError::OutOfRange {
                fn_name: self.name.clone(),
            });
        }
        if y.is_zero() {
            return Ok(bigfloat::from_i64(0, p));
        }
        let pw = p + 64;
        let one = bigfloat::from_i64(1, pw);
        let out_of_range = || EvalError::OutOfRange {
            fn_name: self.name.clone(),
        };
        let v = match &self.kind {
            Kind::Logistic => {
                // Branch in (0, 1/2]: 2y/(1 + sqrt(1 − 4y)).
                let disc = bigfloat::sub(&one, &bigfloat::mul(&bigfloat::from_i64(4, pw), y, pw), pw);
                if disc.is_negative() {
                    return Err(out_of_range());
                }
                let den = bigfloat::add(&one, &bigfloat::sqrt(&disc, pw), pw);
                bigfloat::div(&bigfloat::mul(&bigfloat::from_i64(2, pw), y, pw), &den, p)
            }
            Kind::Sin => {
                if y.partial_cmp(&one) == Some(std::cmp::Ordering::Greater) {
                    return Err(out_of_range());
                }
                bigfloat::asin(y, p)
            }
            Kind::Log1p => bigfloat::sub(&bigfloat::exp(y, pw), &one, p),
            Kind::OneMinusExp => {
                let arg = bigfloat::sub(&one, y, pw);
                if !arg.is_positive() {
                    return Err(out_of_range());
                }
                bigfloat::ln(&arg, p).neg()
            }
            Kind::XExpNeg => {
                // Solve z·e^(−z) = y on (0, 1]; the map tops out at 1/e.
                let f = |z: &Bf, q: usize| bigfloat::mul(z, &bigfloat::exp(&z.neg(), q + 16), q);
                let df = |z: &Bf, q: usize| {
                    let e = bigfloat::exp(&z.neg(), q + 16);
                    bigfloat::mul(&bigfloat::sub(&bigfloat::from_i64(1, q), z, q), &e, q)
                };
                let hi = bigfloat::from_i64(1, pw);
                if f(&hi, pw).partial_cmp(y) == Some(std::cmp::Ordering::Less) {
                    return Err(out_of_range());
                }
                bigfloat::solve_monotone(&f, &df, y, &bigfloat::from_i64(0, pw), &hi, p)
                    .ok_or_else(out_of_range)?
            }
            Kind::LambertW => {
                // Exact inverse of W: y·e^y.
                bigfloat::mul(y, &bigfloat::exp(y, pw), p)
            }
            Kind::XOver1PlusX2 => {
                // Branch in (0, 1]: 2y/(1 + sqrt(1 − 4y²)).
                let y2 = bigfloat::mul(y, y, pw);
                let disc = bigfloat::sub(&one, &bigfloat::mul(&bigfloat::from_i64(4, pw), &y2, pw), pw);
                if disc.is_negative() {
                    return Err(out_of_range());
                }
                let den = bigfloat::add(&one, &bigfloat::sqrt(&disc, pw), pw);
                bigfloat::div(&bigfloat::mul(&bigfloat::from_i64(2, pw), y, pw), &den, p)
            }
            Kind::Arcsinh => bigfloat::sinh(y, p),
            Kind::Tanh => {
                if y.partial_cmp(&one) != Some(std::cmp::Ordering::Less) {
                    return Err(out_of_range());
                }
                bigfloat::atanh(y, p)
            }
            Kind::Arctan => {
                let half_pi = bigfloat::div(&bigfloat::pi(pw), &bigfloat::from_i64(2, pw), pw);
                if y.partial_cmp(&half_pi) != Some(std::cmp::Ordering::Less) {
                    return Err(out_of_range());
                }
                bigfloat::tan(y, p)
            }
            Kind::XOverSqrt1PlusX => {
                // x² − y²x − y² = 0 → x = (y² + y·sqrt(y² + 4))/2.
                let y2 = bigfloat::mul(y, y, pw);
                let root = bigfloat::sqrt(&bigfloat::add(&y2, &bigfloat::from_i64(4, pw), pw), pw);
                let sum = bigfloat::add(&y2, &bigfloat::mul(y, &root, pw), pw);
                bigfloat::div(&sum, &bigfloat::from_i64(2, pw), p)
            }
            Kind::PowP(q) => {
                let q = q.clone();
                let f = move |z: &Bf, w: usize| {
                    let one = bigfloat::from_i64(1, w);
                    let factor =
                        bigfloat::pow_rational(&bigfloat::add(&one, z, w + 32), &(-&q), w + 16);
                    bigfloat::mul(z, &factor, w)
                };
                let qc = match &self.kind {
                    Kind::PowP(q) => q.clone(),
                    _ => unreachable!(),
                };
                let df = move |z: &Bf, w: usize| {
                    // θ′ = (1+z)^(−q−1)·(1 + (1−q)z)
                    let one = bigfloat::from_i64(1, w);
                    let expo = -(&qc + Rational::one());
                    let lead =
                        bigfloat::pow_rational(&bigfloat::add(&one, z, w + 32), &expo, w + 16);
                    let slope = bigfloat::from_rational(&(Rational::one() - &qc), w);
                    let inner = bigfloat::add(&one, &bigfloat::mul(&slope, z, w), w);
                    bigfloat::mul(&lead, &inner, w)
                };
                // Increasing branch tops out at z = 1/(q−1) when q > 1.
                let q_orig = match &self.kind {
                    Kind::PowP(q) => q.clone(),
                    _ => unreachable!(),
                };
                let hi = if q_orig > Rational::one() {
                    bigfloat::from_rational(&(&q_orig - Rational::one()).recip(), pw)
                } else {
                    let mut hi = bigfloat::from_i64(1, pw);
                    while f(&hi, pw).partial_cmp(y) == Some(std::cmp::Ordering::Less) {
                        hi = bigfloat::mul(&hi, &bigfloat::from_i64(2, pw), pw);
                        if hi.exponent().map(|e| e > 64).unwrap_or(true) {
                            return Err(out_of_range());
                        }
                    }
                    hi
                };
                if f(&hi, pw).partial_cmp(y) == Some(std::cmp::Ordering::Less) {
                    return Err(out_of_range());
                }
                bigfloat::solve_monotone(&f, &df, y, &bigfloat::from_i64(0, pw), &hi, p)
                    .ok_or_else(out_of_range)?
            }
        };
        Ok(v)
    }
}

fn sign_pow(m: u32) -> BigInt {
    if m % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// tanh Taylor coefficients c_m (of x^(2m+1)) from t′ = 1 − t².
fn tanh_coefficients(count: usize) -> Vec<Rational> {
    // a[j] = coefficient of x^(2j+1); a[0] = 1.
    let mut a: Vec<Rational> = vec![Rational::one()];
    for j in 1..=count {
        // (n+1)·a_{n+1} = −Σ_{i+k=n} a_i a_k over odd i,k with n = 2j.
        let mut sum = Rational::zero();
        for i in 0..j {
            let k = j - 1 - i;
            sum += &a[i] * &a[k];
        }
        let next = -sum / Rational::from_integer(BigInt::from(2 * j + 1));
        a.push(next);
    }
    a.into_iter().skip(1).collect()
}

/// Principal-branch Lambert W for x > 0 by safeguarded Newton on w·e^w = x.
pub fn lambert_w(x: &Bf, p: usize) -> Result<Bf, EvalError> {
    let pw = p + 64;
    let f = |w: &Bf, q: usize| bigfloat::mul(w, &bigfloat::exp(w, q + 16), q);
    let df = |w: &Bf, q: usize| {
        let e = bigfloat::exp(w, q + 16);
        bigfloat::mul(&bigfloat::add(&bigfloat::from_i64(1, q), w, q), &e, q)
    };
    // W(x) < 1 + ln(1 + x) for x > 0.
    let hi = bigfloat::add(
        &bigfloat::from_i64(1, pw),
        &bigfloat::ln(&bigfloat::add(&bigfloat::from_i64(1, pw), x, pw), pw),
        pw,
    );
    bigfloat::solve_monotone(&f, &df, x, &bigfloat::from_i64(0, pw), &hi, p).ok_or(
        EvalError::OutOfRange {
            fn_name: "lambert-w".into(),
        },
    )
}

/// The fixed catalog.
pub struct Catalog;

impl Catalog {
    /// All named entries (the parametric family is built via [`Catalog::pow_p`]).
    pub fn all() -> Vec<BaseFunction> {
        vec![
            Self::logistic(),
            Self::sin(),
            Self::log1p(),
            Self::one_minus_exp(),
            Self::xexp_neg(),
            Self::lambert_w(),
            Self::x_over_1px2(),
            Self::arcsinh(),
            Self::tanh(),
            Self::arctan(),
            Self::x_over_sqrt1px(),
        ]
    }

    /// Lookup by CLI name; `pow-p` requires the parameter.
    pub fn get(name: &str) -> Option<BaseFunction> {
        Self::all().into_iter().find(|f| f.name == name)
    }

    pub fn logistic() -> BaseFunction {
        BaseFunction {
            name: "logistic".into(),
            kind: Kind::Logistic,
            tau: 1,
            gamma: rat(-1, 1),
            basin_top: BasinTop::One,
            presentation_sign: 1,
            delta_conjecture: Some(LogExpression::zero()),
            kindred_partner: None,
            sample_point: SamplePoint::Rational(rat(1, 2)),
        }
    }

    pub fn sin() -> BaseFunction {
        BaseFunction {
            name: "sin".into(),
            kind: Kind::Sin,
            tau: 2,
            gamma: rat(-1, 6),
            basin_top: BasinTop::Pi,
            presentation_sign: 1,
            delta_conjecture: Some(LogExpression::new(rat(3, 5), rat(3, 1))),
            kindred_partner: Some("arcsinh"),
            sample_point: SamplePoint::HalfPi,
        }
    }

    pub fn log1p() -> BaseFunction {
        BaseFunction {
            name: "log1p".into(),
            kind: Kind::Log1p,
            tau: 1,
            gamma: rat(-1, 2),
            basin_top: BasinTop::Infinite,
            presentation_sign: 1,
            // Magnitude (1/3)·ln 2 as conjectured; the sign assignment within
            // the kindred pair follows the generic law and the measured
            // offset (this member is the alternating-series one, like W).
            delta_conjecture: Some(LogExpression::new(rat(-1, 3), rat(2, 1))),
            kindred_partner: Some("one-minus-exp"),
            sample_point: SamplePoint::Rational(rat(1, 1)),
        }
    }

    pub fn one_minus_exp() -> BaseFunction {
        BaseFunction {
            name: "one-minus-exp".into(),
            kind: Kind::OneMinusExp,
            tau: 1,
            gamma: rat(-1, 2),
            basin_top: BasinTop::Infinite,
            presentation_sign: 1,
            delta_conjecture: Some(LogExpression::new(rat(1, 3), rat(2, 1))),
            kindred_partner: Some("log1p"),
            sample_point: SamplePoint::Rational(rat(1, 1)),
        }
    }

    pub fn xexp_neg() -> BaseFunction {
        BaseFunction {
            name: "xexp-neg".into(),
            kind: Kind::XExpNeg,
            tau: 1,
            gamma: rat(-1, 1),
            basin_top: BasinTop::Infinite,
            presentation_sign: 1,
            delta_conjecture: Some(LogExpression::zero()),
            kindred_partner: Some("lambert-w"),
            sample_point: SamplePoint::Rational(rat(1, 1)),
        }
    }

    pub fn lambert_w() -> BaseFunction {
        BaseFunction {
            name: "lambert-w".into(),
            kind: Kind::LambertW,
            tau: 1,
            gamma: rat(-1, 1),
            basin_top: BasinTop::Infinite,
            presentation_sign: -1,
            delta_conjecture: None,
            kindred_partner: Some("xexp-neg"),
            sample_point: SamplePoint::Rational(rat(1, 1)),
        }
    }

    pub fn x_over_1px2() -> BaseFunction {
        BaseFunction {
            name: "x-over-1px2".into(),
            kind: Kind::XOver1PlusX2,
            tau: 2,
            gamma: rat(-1, 1),
            basin_top: BasinTop::Infinite,
            presentation_sign: 1,
            delta_conjecture: Some(LogExpression::new(rat(-1, 4), rat(2, 1))),
            kindred_partner: None,
            sample_point: SamplePoint::Rational(rat(1, 1)),
        }
    }

    pub fn arcsinh() -> BaseFunction {
        BaseFunction {
            name: "arcsinh".into(),
            kind: Kind::Arcsinh,
            tau: 2,
            gamma: rat(-1, 6),
            basin_top: BasinTop::Infinite,
            presentation_sign: 1,
            delta_conjecture: Some(LogExpression::new(rat(-3, 5), rat(3, 1))),
            kindred_partner: Some("sin"),
            sample_point: SamplePoint::Rational(rat(1, 1)),
        }
    }

    pub fn tanh() -> BaseFunction {
        BaseFunction {
            name: "tanh".into(),
            kind: Kind::Tanh,
            tau: 2,
            gamma: rat(-1, 3),
            basin_top: BasinTop::Infinite,
            presentation_sign: 1,
            delta_conjecture: Some(LogExpression::new(rat(3, 20), rat(3, 2))),
            kindred_partner: Some("arctan"),
            sample_point: SamplePoint::Rational(rat(1, 1)),
        }
    }

    pub fn arctan() -> BaseFunction {
        BaseFunction {
            name: "arctan".into(),
            kind: Kind::Arctan,
            tau: 2,
            gamma: rat(-1, 3),
            basin_top: BasinTop::Infinite,
            presentation_sign: 1,
            delta_conjecture: Some(LogExpression::new(rat(-3, 20), rat(3, 2))),
            kindred_partner: Some("tanh"),
            sample_point: SamplePoint::Rational(rat(1, 1)),
        }
    }

    pub fn x_over_sqrt1px() -> BaseFunction {
        BaseFunction {
            name: "x-over-sqrt1px".into(),
            kind: Kind::XOverSqrt1PlusX,
            tau: 1,
            gamma: rat(-1, 2),
            basin_top: BasinTop::Infinite,
            presentation_sign: 1,
            delta_conjecture: Some(LogExpression::new(rat(-1, 2), rat(2, 1))),
            kindred_partner: None,
            sample_point: SamplePoint::Rational(rat(1, 1)),
        }
    }

    /// Family x/(1+x)^p for rational p > 0; conjectured offset ((1−p)/2p)·ln p.
    pub fn pow_p(p: Rational) -> BaseFunction {
        assert!(p.is_positive(), "family parameter must be positive");
        let delta = LogExpression::new(
            (Rational::one() - &p) / (Rational::from_integer(2.into()) * &p),
            p.clone(),
        );
        BaseFunction {
            name: "pow-p".into(),
            gamma: -&p,
            kind: Kind::PowP(p),
            tau: 1,
            basin_top: BasinTop::Infinite,
            presentation_sign: 1,
            delta_conjecture: Some(delta),
            kindred_partner: None,
            sample_point: SamplePoint::Rational(rat(1, 1)),
        }
    }
}
