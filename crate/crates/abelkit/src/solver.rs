//! Order-by-order solver for Julia's equation `λ(θ(x)) = θ′(x)·λ(x)` and the
//! Abel expansion derived from it.
//!
//! The solver keeps two accumulators: `L`, a combination of powers of the
//! truncated Taylor series φ, and `R`, the same combination of plain
//! monomials. One symbolic unknown is introduced per step, the next
//! coefficient of `L − ψ·R` is forced to zero, and the update at the
//! following step cancels the unknown exactly. The resulting λ is treated as
//! an asymptotic series everywhere downstream; no convergence is assumed.
//!
//! Running powers of φ are maintained incrementally (one series product per
//! step with a cached φ^τ) instead of recomputing φ^k from scratch.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::Zero;
use thiserror::Error;

use crate::catalog::BaseFunction;
use crate::laurent::{integrate_with_log, laurent_reciprocal, AbelForm, LaurentSeries};
use crate::linear::LinearForm;
use crate::rational::Rational;
use crate::series::{Coeff, PowerSeries, SeriesError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SolverError {
    /// The linear solve hit a zero slope; no catalog instance triggers this.
    #[error("degenerate linear solve at elimination step {step}")]
    DegenerateSolve { step: u32 },
    #[error("truncation parameter K = {k} too small; need K >= 4")]
    TruncationTooSmall { k: u32 },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Output of one solver run at truncation parameter `K`.
#[derive(Clone, Debug)]
pub struct JuliaExpansion {
    pub fn_key: String,
    pub k: u32,
    /// λ_K = γ·x^(τ+1) + Σ_{m=2..K−2} v_m·x^(τm+1).
    pub lambda: PowerSeries<Rational>,
    /// The solved coefficients v_2 ..= v_{K−2} in order.
    pub v: Vec<Rational>,
    /// 1/λ on the shifted grid (the Abel derivative).
    pub gprime: LaurentSeries,
    /// The Abel expansion in the internal `G(θ(x)) = G(x) + 1` normalization.
    pub abel: AbelForm,
}

/// `−constant/slope` for `constant + slope·u = 0`.
pub fn solve_linear(c: &LinearForm) -> Result<Rational, SolverError> {
    if c.slope.is_zero() {
        return Err(SolverError::DegenerateSolve { step: 0 });
    }
    Ok(-&c.constant / &c.slope)
}

fn epsilon(tau: i64, j: i64, k: i64) -> i64 {
    tau * (j + k - 1) + 1
}

fn memo() -> &'static Mutex<HashMap<(String, u32), Arc<JuliaExpansion>>> {
    static MEMO: OnceLock<Mutex<HashMap<(String, u32), Arc<JuliaExpansion>>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Solves Julia's equation at truncation `K`, memoized per (function, K).
pub fn julia_series(base: &BaseFunction, k: u32) -> Result<Arc<JuliaExpansion>, SolverError> {
    let key = (base.key(), k);
    if let Some(hit) = memo().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let computed = Arc::new(julia_series_uncached(base, k)?);
    memo()
        .lock()
        .unwrap()
        .entry(key)
        .or_insert_with(|| computed.clone());
    Ok(computed)
}

/// The Abel expansion at truncation `K` (internal normalization; the
/// published series for a sign-flipped presentation is its negation).
pub fn abel_series(base: &BaseFunction, k: u32) -> Result<AbelForm, SolverError> {
    Ok(julia_series(base, k)?.abel.clone())
}

fn julia_series_uncached(base: &BaseFunction, k: u32) -> Result<JuliaExpansion, SolverError> {
    if k < 4 {
        return Err(SolverError::TruncationTooSmall { k });
    }
    let tau = base.tau();
    let kk = k as i64;
    // Working truncation for everything inside the loop.
    let w_order = tau * (kk + 1) + 2;
    // φ exact through the working order (ψ = φ′ then is too).
    let m_max = ((w_order - 1) / tau) as u32;
    let phi = base.phi(m_max, w_order);
    let psi = phi.derivative().lift::<LinearForm>();

    let gamma = base.gamma().clone();
    let unknown = LinearForm::unknown();

    let phi_tau = phi.int_pow_capped(tau as u32, w_order)?;
    // Running powers: p_lo = φ^(τ(k−2)+1), p_hi = φ^(τ(k−1)+1) at step k.
    let mut p_lo = phi.int_pow_capped((tau + 1) as u32, w_order)?;
    let mut p_hi = p_lo.mul_capped(&phi_tau, w_order)?;

    let mut l_acc = p_lo
        .lift::<LinearForm>()
        .scale(&LinearForm::from_rational(gamma.clone()));
    let mut r_acc: PowerSeries<LinearForm> = PowerSeries::monomial(
        LinearForm::from_rational(gamma.clone()),
        epsilon(tau, -1, 3),
        w_order,
    );

    // v[m] = v_{m+2}: solved coefficients v_2 ..= v_{K−2}.
    let mut v: Vec<Rational> = Vec::with_capacity(k as usize - 3);

    for step in 3..=(kk - 1) {
        // v_{k−2} − u: zero at the first step (v_1 is the unknown itself),
        // afterwards it swaps the previous unknown for its solved value.
        let lo_coeff = if step == 3 {
            LinearForm::new(Rational::zero(), Rational::zero())
        } else {
            LinearForm::new(v[step as usize - 4].clone(), -Rational::from_integer(1.into()))
        };
        let e_lo = epsilon(tau, -1, step);
        let e_hi = epsilon(tau, 0, step);
        if !lo_coeff.c_is_zero() {
            l_acc = l_acc.add(&p_lo.lift::<LinearForm>().scale(&lo_coeff));
            r_acc = r_acc.add(&PowerSeries::monomial(lo_coeff.clone(), e_lo, w_order));
        }
        l_acc = l_acc.add(&p_hi.lift::<LinearForm>().scale(&unknown));
        r_acc = r_acc.add(&PowerSeries::monomial(unknown.clone(), e_hi, w_order));

        let e_solve = epsilon(tau, 1, step);
        let lhs = l_acc.coefficient_at(e_solve)?;
        let rhs = psi.product_coefficient_at(&r_acc, e_solve)?;
        let lin = lhs.c_sub(&rhs);
        let solved = solve_linear(&lin).map_err(|_| SolverError::DegenerateSolve {
            step: step as u32,
        })?;
        v.push(solved);

        p_lo = p_hi;
        p_hi = p_lo.mul_capped(&phi_tau, w_order)?;
    }

    // λ itself: next grid coefficient v_{K−1} is unknown, everything below
    // τ(K−1)+1 is determined (off-grid exponents are structurally zero).
    let lambda_order = tau * (kk - 1);
    let mut terms = vec![(tau + 1, gamma)];
    for (i, vm) in v.iter().enumerate() {
        let m = i as i64 + 2;
        terms.push((tau * m + 1, vm.clone()));
    }
    let lambda = PowerSeries::from_terms(terms, lambda_order);

    let gprime = laurent_reciprocal(&lambda, tau + 1)?;
    let abel = integrate_with_log(&gprime, tau)?;

    Ok(JuliaExpansion {
        fn_key: base.key(),
        k,
        lambda,
        v,
        gprime,
        abel,
    })
}
