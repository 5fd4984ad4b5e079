//! Arbitrary-precision evaluation of the Abel function, its inverse, and
//! fractional iterates.
//!
//! The Abel value is computed as `G(x) = G_series(x_n) − n`: iterate the map
//! until the orbit point is inside the series trust zone, evaluate the
//! expansion there, subtract the step count. The expansion is asymptotic, so
//! the trust zone is found by measurement: the last retained term and the
//! difference between two truncation depths must both clear the tolerance.
//! On failure the truncation parameter K and the orbit budget escalate.
//!
//! Working precision budget: `digits + log10(n) + 15` decimal digits — the
//! subtraction `G_series(x_n) − n` cancels about `log10 n` digits, and orbit
//! rounding stays inside the remaining guard.

use std::cmp::Ordering;

use thiserror::Error;

use crate::bigfloat::{self, Bf};
use crate::catalog::{BaseFunction, Catalog};
use crate::solver::{julia_series, SolverError};
use crate::laurent::AbelForm;
use crate::rational::Rational;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("argument outside the basin of {fn_name}")]
    OutOfBasin { fn_name: String },
    #[error("argument outside the invertible range of {fn_name}")]
    OutOfRange { fn_name: String },
    #[error("requested precision unreachable: {detail}")]
    PrecisionUnreachable { detail: String },
    #[error("function undefined at zero argument")]
    ZeroArgument,
    #[error("not enough samples for the requested fit")]
    InsufficientSamples,
    #[error(transparent)]
    Ej(#[from] SolverError),
}

/// One Abel-value request.
#[derive(Clone, Debug)]
pub struct EvalRequest<'a> {
    pub base: &'a BaseFunction,
    pub x: Bf,
    pub digits: u32,
    pub max_iterations: u64,
}

impl<'a> EvalRequest<'a> {
    pub fn new(base: &'a BaseFunction, x: Bf, digits: u32) -> Self {
        EvalRequest {
            base,
            x,
            digits,
            max_iterations: 1_000_000,
        }
    }
}

/// An Abel value with its convergence diagnostics.
#[derive(Clone, Debug)]
pub struct EvalResult {
    pub value: Bf,
    pub n_used: u64,
    pub k_used: u32,
    pub error_estimate: Bf,
}

const K_START: u32 = 24;
const K_STEP: u32 = 16;
const K_MAX: u32 = 96;

/// Numeric rendition of an [`AbelForm`] at a fixed precision.
pub(crate) struct AbelFormNum {
    tau: i64,
    pole: Bf,
    log: Bf,
    taylor: Vec<(i64, Bf)>,
    p: usize,
}

impl AbelFormNum {
    pub(crate) fn new(abel: &AbelForm, p: usize) -> Self {
        AbelFormNum {
            tau: abel.tau,
            pole: bigfloat::from_rational(&abel.pole_coefficient, p),
            log: bigfloat::from_rational(&abel.log_coefficient, p),
            taylor: abel
                .taylor
                .iter()
                .map(|(e, c)| (e, bigfloat::from_rational(c, p)))
                .collect(),
            p,
        }
    }

    /// Evaluate with the top `drop` Taylor terms removed.
    fn eval_dropping(&self, x: &Bf, drop: usize) -> Bf {
        let p = self.p;
        let inv_pole = bigfloat::powi_signed(x, -self.tau, p);
        let mut acc = bigfloat::mul(&self.pole, &inv_pole, p);
        if !self.log.is_zero() {
            acc = bigfloat::add(&acc, &bigfloat::mul(&self.log, &bigfloat::ln(x, p), p), p);
        }
        let keep = self.taylor.len().saturating_sub(drop);
        if keep == 0 {
            return acc;
        }
        // Horner over the τ-spaced grid from the top kept term down.
        let x_tau = bigfloat::powi(x, self.tau as usize, p);
        let mut horner = bigfloat::from_i64(0, p);
        let mut prev_e: Option<i64> = None;
        for (e, c) in self.taylor.iter().take(keep).rev() {
            if let Some(pe) = prev_e {
                let gap = ((pe - e) / self.tau) as usize;
                horner = bigfloat::mul(&horner, &bigfloat::powi(&x_tau, gap, p), p);
            }
            horner = bigfloat::add(&horner, c, p);
            prev_e = Some(*e);
        }
        if let Some(e0) = prev_e {
            horner = bigfloat::mul(&horner, &bigfloat::powi(x, e0 as usize, p), p);
        }
        bigfloat::add(&acc, &horner, p)
    }

    pub(crate) fn eval(&self, x: &Bf) -> Bf {
        self.eval_dropping(x, 0)
    }

    /// Derivative −τA·x^(−τ−1) + B/x + Σ mτ·t_m·x^(mτ−1).
    fn eval_derivative(&self, x: &Bf) -> Bf {
        let p = self.p;
        let lead = bigfloat::mul(
            &self.pole,
            &bigfloat::from_i64(-self.tau, p),
            p,
        );
        let mut acc = bigfloat::mul(&lead, &bigfloat::powi_signed(x, -self.tau - 1, p), p);
        if !self.log.is_zero() {
            acc = bigfloat::add(&acc, &bigfloat::div(&self.log, x, p), p);
        }
        for (e, c) in &self.taylor {
            let term = bigfloat::mul(
                &bigfloat::mul(c, &bigfloat::from_i64(*e, p), p),
                &bigfloat::powi(x, (*e - 1) as usize, p),
                p,
            );
            acc = bigfloat::add(&acc, &term, p);
        }
        acc
    }

    /// Magnitude of the last retained Taylor term at `x`.
    fn last_term_magnitude(&self, x: &Bf) -> Bf {
        match self.taylor.last() {
            None => bigfloat::from_i64(0, self.p),
            Some((e, c)) => {
                bigfloat::mul(c, &bigfloat::powi(x, *e as usize, self.p), self.p).abs()
            }
        }
    }

    /// Asymptotic-tail error heuristic: last retained term plus the
    /// sensitivity to dropping two truncation steps.
    fn tail_estimate(&self, x: &Bf) -> Bf {
        let full = self.eval_dropping(x, 0);
        let shallow = self.eval_dropping(x, 2);
        let diff = bigfloat::sub(&full, &shallow, self.p).abs();
        bigfloat::add(&diff, &self.last_term_magnitude(x), self.p)
    }
}

fn cmp(a: &Bf, b: &Bf) -> Ordering {
    a.partial_cmp(b).expect("comparable big-floats")
}

/// Largest dyadic x = 2^(−j) where the series tail clears `tol`, probed at a
/// moderate precision. Returns the exponent j.
fn find_trust_edge(abel: &AbelFormNum, tol: &Bf) -> Option<u32> {
    for j in 2..=64u32 {
        let mut x = bigfloat::from_i64(1, abel.p);
        x.set_exponent(1 - j as i32);
        if cmp(&abel.tail_estimate(&x), tol) == Ordering::Less {
            return Some(j);
        }
    }
    None
}

/// f64 orbit length estimate until x ≤ edge; `None` if the cap is exceeded.
fn estimate_steps(base: &BaseFunction, x0: f64, edge: f64, cap: u64) -> Option<u64> {
    let mut x = x0;
    let mut n = 0u64;
    while x > edge {
        x = base.eval_forward_f64(x);
        n += 1;
        if n > cap || !x.is_finite() || x <= 0.0 {
            if x <= 0.0 || !x.is_finite() {
                // Double-precision underflow: the true orbit is far inside
                // the trust zone already.
                return Some(n);
            }
            return None;
        }
    }
    Some(n)
}

fn decimal_digits_of(n: u64) -> u32 {
    (n.max(1) as f64).log10().ceil() as u32 + 1
}

/// n-fold application of θ at precision `p`.
pub fn orbit(base: &BaseFunction, x: &Bf, n: u64, p: usize) -> Result<Bf, EvalError> {
    let mut cur = x.clone();
    for _ in 0..n {
        cur = base.eval_forward(&cur, p)?;
    }
    Ok(cur)
}

/// Abel value in the internal `G(θ(x)) = G(x) + 1` normalization.
pub fn abel_value(base: &BaseFunction, x: &Bf, digits: u32) -> Result<EvalResult, EvalError> {
    abel_value_request(&EvalRequest::new(base, x.clone(), digits))
}

pub fn abel_value_request(req: &EvalRequest<'_>) -> Result<EvalResult, EvalError> {
    let base = req.base;
    let digits = req.digits.max(1);
    // Basin check up front (also catches x = 0, which has no finite value).
    if req.x.is_zero() {
        return Err(EvalError::OutOfBasin {
            fn_name: base.name().to_string(),
        });
    }
    base.eval_forward(&req.x, 96)?;

    let probe_p = bigfloat::bits_for_digits(digits + 25);
    let tol_probe = bigfloat::pow10_neg(digits + 5, probe_p);
    let mut k = K_START;
    loop {
        let ej = julia_series(base, k)?;
        let probe = AbelFormNum::new(&ej.abel, probe_p);
        if let Some(j) = find_trust_edge(&probe, &tol_probe) {
            let edge_f64 = 2f64.powi(-(j as i32));
            if let Some(n_est) =
                estimate_steps(base, bigfloat::to_f64(&req.x), edge_f64, req.max_iterations)
            {
                // A deeper series moves the trust edge out and shortens the
                // orbit; prefer that while the solver budget allows.
                if n_est <= 1500 || k >= K_MAX {
                    return finish_abel_value(req, &ej.abel, k, j, n_est);
                }
            }
        }
        if k >= K_MAX {
            return Err(EvalError::PrecisionUnreachable {
                detail: format!(
                    "{} at {} digits: series tail does not clear tolerance within K = {}, n = {}",
                    base.name(),
                    digits,
                    K_MAX,
                    req.max_iterations
                ),
            });
        }
        k = (k + K_STEP).min(K_MAX);
    }
}

fn finish_abel_value(
    req: &EvalRequest<'_>,
    abel: &AbelForm,
    k: u32,
    edge_j: u32,
    n_est: u64,
) -> Result<EvalResult, EvalError> {
    let base = req.base;
    let digits = req.digits.max(1);
    let work_digits = digits + 5 + decimal_digits_of(4 * n_est + 16) + 15;
    let p = bigfloat::bits_for_digits(work_digits);
    let num = AbelFormNum::new(abel, p);
    let mut edge = bigfloat::from_i64(1, p);
    edge.set_exponent(1 - edge_j as i32);

    let mut xn = req.x.clone();
    let mut n = 0u64;
    while cmp(&xn, &edge) == Ordering::Greater {
        xn = base.eval_forward(&xn, p)?;
        n += 1;
        if n > req.max_iterations {
            return Err(EvalError::PrecisionUnreachable {
                detail: format!("orbit budget {} exhausted", req.max_iterations),
            });
        }
    }

    let series_value = num.eval(&xn);
    let value = bigfloat::sub(&series_value, &bigfloat::from_i64(n as i64, p), p);
    // Tail estimate at the landing point, plus an orbit-rounding allowance
    // of order n²·2^(−p).
    let mut rounding = bigfloat::from_i64((n as i64 + 2).pow(2), p);
    if let Some(e) = rounding.exponent() {
        rounding.set_exponent(e - p as i32 + 8);
    }
    let error_estimate = bigfloat::add(&num.tail_estimate(&xn), &rounding, p);
    Ok(EvalResult {
        value,
        n_used: n,
        k_used: k,
        error_estimate,
    })
}

/// Solves `G(z) = y` for the basin-branch preimage.
///
/// Chooses the smallest shift m ≥ 0 with y + m inside the trust zone's
/// G-image, solves there by safeguarded Newton on the series (derivative
/// from the term-wise differentiated expansion), then walks back out with
/// m applications of θ^(−1).
///
/// The whole pipeline runs at doubled digits: when the preimage sits near
/// the top of the basin branch (θ′ → 0 there for the bounded-branch maps),
/// the final θ^(−1) step turns any error of size ε in the series model or
/// the walk into a sqrt(ε) displacement, so ε is held at the square of the
/// requested accuracy.
pub fn abel_inverse(base: &BaseFunction, y: &Bf, digits: u32) -> Result<Bf, EvalError> {
    let digits = 2 * digits.max(1) + 10;
    let probe_p = bigfloat::bits_for_digits(digits + 25);
    let tol_probe = bigfloat::pow10_neg(digits + 5, probe_p);
    let mut k = K_START;
    loop {
        let ej = julia_series(base, k)?;
        let probe = AbelFormNum::new(&ej.abel, probe_p);
        if let Some(j) = find_trust_edge(&probe, &tol_probe) {
            let mut edge = bigfloat::from_i64(1, probe_p);
            edge.set_exponent(1 - j as i32);
            let g_edge = probe.eval(&edge);
            // Smallest m with y + m ≥ G(edge).
            let diff = bigfloat::sub(&g_edge, y, probe_p);
            let m = if diff.is_negative() {
                0u64
            } else {
                let f = bigfloat::to_f64(&diff);
                if !f.is_finite() || f > 1e12 {
                    return Err(EvalError::PrecisionUnreachable {
                        detail: "inverse walk length out of range".into(),
                    });
                }
                f.ceil() as u64 + 1
            };
            // Each walk step is a full root solve; a deeper series pushes
            // the trust edge out and shortens the walk dramatically.
            if m <= 1000 || k >= K_MAX {
                return finish_abel_inverse(base, y, digits, &ej.abel, j, m);
            }
        }
        if k >= K_MAX {
            return Err(EvalError::PrecisionUnreachable {
                detail: format!("{}: no series trust zone at K = {}", base.name(), K_MAX),
            });
        }
        k = (k + K_STEP).min(K_MAX);
    }
}

fn finish_abel_inverse(
    base: &BaseFunction,
    y: &Bf,
    digits: u32,
    abel: &AbelForm,
    edge_j: u32,
    m: u64,
) -> Result<Bf, EvalError> {
    // Guard digits: the inverse walk amplifies by roughly G′(w)/G′(z), i.e.
    // (τ+1)·log10(1/edge) digits, plus a little for the walk length.
    let amplify = (base.tau() as u32 + 1) * (edge_j as f64 * 0.302).ceil() as u32;
    let work_digits = digits + 10 + amplify + decimal_digits_of(m + 2);
    let p = bigfloat::bits_for_digits(work_digits);
    let num = AbelFormNum::new(abel, p);
    let mut edge = bigfloat::from_i64(1, p);
    edge.set_exponent(1 - edge_j as i32);

    let target = bigfloat::add(y, &bigfloat::from_i64(m as i64, p), p);
    // Bracket [lo, edge]: G is strictly decreasing, G(edge) ≤ target, and
    // G(lo) grows without bound as lo → 0.
    let mut lo = edge.clone();
    loop {
        lo = bigfloat::div(&lo, &bigfloat::from_i64(2, p), p);
        if cmp(&num.eval(&lo), &target) != Ordering::Less {
            break;
        }
        if lo.exponent().map(|e| e < -(p as i32) * 4).unwrap_or(true) {
            return Err(EvalError::OutOfRange {
                fn_name: base.name().to_string(),
            });
        }
    }
    let f = |w: &Bf, _q: usize| num.eval(w);
    let df = |w: &Bf, _q: usize| num.eval_derivative(w);
    let w = bigfloat::solve_monotone(&f, &df, &target, &lo, &edge, p).ok_or_else(|| {
        EvalError::PrecisionUnreachable {
            detail: "series inversion did not converge".into(),
        }
    })?;

    let mut z = w;
    for _ in 0..m {
        z = base.eval_inverse(&z, p)?;
    }
    Ok(z)
}

/// θ^[t](x) = G^(−1)(G(x) + t).
pub fn fractional_iterate(
    base: &BaseFunction,
    t: &Rational,
    x: &Bf,
    digits: u32,
) -> Result<Bf, EvalError> {
    use num_traits::Zero;
    if t.is_zero() {
        return Ok(x.clone());
    }
    // The Abel value feeds the inversion, whose near-branch-top accuracy is
    // the square root of its input error; match its doubled budget.
    let inner = 2 * digits + 16;
    let p = bigfloat::bits_for_digits(inner);
    let g = abel_value(base, x, inner)?;
    let shift = bigfloat::from_rational(t, p);
    let target = bigfloat::add(&g.value, &shift, p);
    abel_inverse(base, &target, digits + 3)
}

/// Half-iterate of x·e^x, assembled piecewise from the two Abel solutions:
/// the x·e^(−x) branch reflected for x < 0, the W branch for x > 0.
pub fn xexp_half(x: &Bf, digits: u32) -> Result<Bf, EvalError> {
    if x.is_zero() {
        // Fixed point: the half-iterate passes through 0.
        return Ok(bigfloat::from_i64(0, bigfloat::bits_for_digits(digits)));
    }
    let half = Rational::new(1.into(), 2.into());
    if x.is_negative() {
        let base = Catalog::xexp_neg();
        let v = fractional_iterate(&base, &half, &x.abs(), digits)?;
        Ok(v.neg())
    } else {
        // Internal G for W is −(published g); the published half-step
        // g(x) − 1/2 is the internal shift −1/2, i.e. a half-step of
        // W^(−1) = x·e^x as required.
        let base = Catalog::lambert_w();
        fractional_iterate(&base, &(-half), x, digits)
    }
}

/// Half-iterate of x + 1/x via the conjugated map y/(1+y²):
/// d^[1/2](x) = 1/G₈^(−1)(G₈(x) + 1/2), evaluated at x itself.
pub fn xplusinv_half(x: &Bf, digits: u32) -> Result<Bf, EvalError> {
    if !x.is_positive() {
        return Err(EvalError::OutOfRange {
            fn_name: "x-plus-inv".into(),
        });
    }
    let base = Catalog::x_over_1px2();
    let half = Rational::new(1.into(), 2.into());
    let inner = fractional_iterate(&base, &half, x, digits + 2)?;
    let p = bigfloat::bits_for_digits(digits + 8);
    Ok(bigfloat::recip(&inner, p))
}

/// The piecewise Abel solution for x·e^x (both real branches).
pub fn f67(x: &Bf, digits: u32) -> Result<Bf, EvalError> {
    if x.is_zero() {
        return Err(EvalError::ZeroArgument);
    }
    if x.is_negative() {
        let base = Catalog::xexp_neg();
        Ok(abel_value(&base, &x.abs(), digits)?.value)
    } else {
        let base = Catalog::lambert_w();
        Ok(abel_value(&base, x, digits)?.value.neg())
    }
}
