//! The orbit-limit route to the principal Abel value, and the offset δ
//! between it and the series-normalized solution.
//!
//! The limit sequence generalizes the printed instances
//!
//! ```text
//! τ=1, s=1,    κ=1:    −n²(x_n − 1/n + ln(n)/n²)
//! τ=2, s=√3,   κ=3/10: −2n^(3/2)(x_n/√3 − n^(−1/2) + (3/10)·ln(n)·n^(−3/2))
//! τ=2, s=1/√2, κ=1/8:  −2n^(3/2)(√2·y_n − n^(−1/2) + (1/8)·ln(n)·n^(−3/2))
//! ```
//!
//! as s_n = −τ·n^((τ+1)/τ)·(x_n/s − n^(−1/τ) + κ·ln(n)·n^(−(τ+1)/τ)) with
//! s = (−γτ)^(−1/τ) and κ = B/τ² (B the log coefficient of the Abel form).
//! Convergence is accelerated by least squares against a power-times-log
//! correction model on a geometric grid of n.

use std::fmt;


use crate::bigfloat::{self, Bf};
use crate::catalog::{BaseFunction, Catalog, LogExpression};
use crate::solver::julia_series;
use crate::eval::{abel_value, EvalError};
use crate::rational::{rat, Rational};

/// Exact data of the limit formula for one base function.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitFormula {
    pub tau: i64,
    /// Leading factor, equal to τ.
    pub prefactor: Rational,
    /// −γτ; the scale is s = (−γτ)^(−1/τ).
    pub minus_gamma_tau: Rational,
    /// κ = B/τ².
    pub log_kappa: Rational,
}

/// Sampling depth for the exact log coefficient B; any K ≥ 4 gives the same B.
const K_FOR_B: u32 = 8;

impl LimitFormula {
    pub fn for_function(base: &BaseFunction) -> Result<Self, EvalError> {
        let ej = julia_series(base, K_FOR_B)?;
        let tau = base.tau();
        let tau_r = Rational::from_integer(tau.into());
        Ok(LimitFormula {
            tau,
            prefactor: tau_r.clone(),
            minus_gamma_tau: -(base.gamma() * &tau_r),
            log_kappa: &ej.abel.log_coefficient / (&tau_r * &tau_r),
        })
    }

    /// s^τ as an exact rational (s itself is a surd when τ > 1).
    pub fn scale_tau_power(&self) -> Rational {
        self.minus_gamma_tau.clone().recip()
    }

    pub fn scale_numeric(&self, p: usize) -> Bf {
        let inv_tau = Rational::new((-1).into(), self.tau.into());
        bigfloat::pow_rational(&bigfloat::from_rational(&self.minus_gamma_tau, p + 32), &inv_tau, p)
    }

    /// s_n from the orbit point x_n.
    pub fn transform(&self, xn: &Bf, n: u64, p: usize) -> Bf {
        let n_bf = bigfloat::from_i64(n as i64, p);
        let s = self.scale_numeric(p);
        let inv_tau = rat(1, self.tau);
        let n_pow_inv_tau = bigfloat::pow_rational(&n_bf, &inv_tau, p);
        // n^((τ+1)/τ) = n·n^(1/τ)
        let n_pow_main = bigfloat::mul(&n_bf, &n_pow_inv_tau, p);
        let term1 = bigfloat::div(xn, &s, p);
        let term2 = bigfloat::recip(&n_pow_inv_tau, p);
        let kappa = bigfloat::from_rational(&self.log_kappa, p);
        let term3 = bigfloat::div(
            &bigfloat::mul(&kappa, &bigfloat::ln(&n_bf, p), p),
            &n_pow_main,
            p,
        );
        let inner = bigfloat::add(&bigfloat::sub(&term1, &term2, p), &term3, p);
        let lead = bigfloat::mul(&bigfloat::from_rational(&self.prefactor, p), &n_pow_main, p);
        bigfloat::mul(&lead, &inner, p).neg()
    }

    /// Display-style rendering of the instantiated formula.
    pub fn render(&self) -> String {
        let (pow_txt, inv_txt) = if self.tau == 1 {
            ("n^2".to_string(), "1/n".to_string())
        } else {
            (
                format!("n^({}/{})", self.tau + 1, self.tau),
                format!("1/n^(1/{})", self.tau),
            )
        };
        let s_tau = self.scale_tau_power();
        let x_txt = if s_tau.is_one() {
            "x_n".to_string()
        } else if self.tau == 1 {
            format!("x_n/({})", s_tau)
        } else {
            format!("x_n/sqrt({})", s_tau)
        };
        let kappa_txt = if self.log_kappa.is_one() {
            format!("ln(n)/{}", pow_txt)
        } else {
            format!("({})*ln(n)/{}", self.log_kappa, pow_txt)
        };
        let lead = if self.prefactor.is_one() {
            format!("-{}", pow_txt)
        } else {
            format!("-{}*{}", self.prefactor, pow_txt)
        };
        format!("{}*({} - {} + {})", lead, x_txt, inv_txt, kappa_txt)
    }
}

/// Working precision for the limit route (decimal digits).
const ML_WORK_DIGITS: u32 = 80;
/// Smallest orbit index used in fits.
const ML_MIN_N: u64 = 64;
/// Default correction-model depth.
pub const ML_MODEL_ORDER: usize = 3;
/// Per-order logarithm powers included in the correction model: inverting
/// the orbit asymptotics puts (ln n)^j with j up to i+1 at order n^(−i),
/// capped here to keep the sample budget.
const ML_LOG_POWER_CAP: usize = 2;

/// One element of the defining sequence.
pub fn ml_sequence(base: &BaseFunction, x: &Bf, n: u64) -> Result<Bf, EvalError> {
    if n < 2 {
        return Err(EvalError::InsufficientSamples);
    }
    let p = bigfloat::bits_for_digits(ML_WORK_DIGITS);
    let formula = LimitFormula::for_function(base)?;
    let xn = crate::eval::orbit(base, x, n, p)?;
    Ok(formula.transform(&xn, n, p))
}

/// The x-form of the limit for the recurrence x_{n+1} = x_n + 1/x_n,
/// conjugate to y/(1+y²) through y = 1/x:
/// n^(1/2)·(√2·x_n − 2·n^(1/2) − (1/4)·ln(n)/n^(1/2)).
pub fn ml_sequence_xplusinv(x: &Bf, n: u64) -> Result<Bf, EvalError> {
    if n < 2 || !x.is_positive() {
        return Err(EvalError::InsufficientSamples);
    }
    let p = bigfloat::bits_for_digits(ML_WORK_DIGITS);
    let base = Catalog::x_over_1px2();
    let y0 = bigfloat::recip(x, p);
    let yn = crate::eval::orbit(&base, &y0, n, p)?;
    let xn = bigfloat::recip(&yn, p);
    let n_bf = bigfloat::from_i64(n as i64, p);
    let sqrt_n = bigfloat::sqrt(&n_bf, p);
    let sqrt2 = bigfloat::sqrt(&bigfloat::from_i64(2, p), p);
    let t1 = bigfloat::mul(&sqrt2, &xn, p);
    let t2 = bigfloat::mul(&bigfloat::from_i64(2, p), &sqrt_n, p);
    let t3 = bigfloat::div(
        &bigfloat::mul(&bigfloat::from_rational(&rat(1, 4), p), &bigfloat::ln(&n_bf, p), p),
        &sqrt_n,
        p,
    );
    let inner = bigfloat::sub(&bigfloat::sub(&t1, &t2, p), &t3, p);
    Ok(bigfloat::mul(&sqrt_n, &inner, p))
}

/// Principal Abel value by sequence extrapolation.
///
/// Samples s_n on the geometric grid {n_max/2^j : n ≥ 64}, fits
/// `s + Σ_i (Σ_j b_{ij}(ln n)^j)·n^(−i)` by least squares at fixed big-float
/// precision, and reports the fitted constant with a cross-validation error
/// bar (difference against the one-order-shallower fit). The correction
/// ladder sits on integer powers of 1/n for every τ: the half-integer steps
/// of the orbit variable cancel against the n^((τ+1)/τ) prefactor.
pub fn ml_value(
    base: &BaseFunction,
    x: &Bf,
    n_max: u64,
    model_order: usize,
) -> Result<(Bf, Bf), EvalError> {
    if n_max < ML_MIN_N {
        return Err(EvalError::InsufficientSamples);
    }
    let p = bigfloat::bits_for_digits(ML_WORK_DIGITS);
    // Geometric grid, ascending.
    let mut grid = Vec::new();
    let mut n = n_max;
    while n >= ML_MIN_N {
        grid.push(n);
        n /= 2;
    }
    grid.reverse();
    let formula = LimitFormula::for_function(base)?;
    // One orbit pass, snapshotting at grid points.
    let mut samples = Vec::with_capacity(grid.len());
    let mut cur = x.clone();
    let mut step = 0u64;
    for &target in &grid {
        while step < target {
            cur = base.eval_forward(&cur, p)?;
            step += 1;
        }
        samples.push((target, formula.transform(&cur, target, p)));
    }
    let full = fit_constant(&samples, model_order, p)?;
    let shallow = fit_constant(&samples, model_order.saturating_sub(1), p)?;
    let bar = bigfloat::sub(&full, &shallow, p).abs();
    Ok((full, bar))
}

/// Basis exponent/log-power pairs for the correction model.
fn model_basis(order: usize) -> Vec<(usize, usize)> {
    let mut basis = vec![(0, 0)];
    for i in 1..=order {
        for j in 0..=(i + 1).min(ML_LOG_POWER_CAP) {
            basis.push((i, j));
        }
    }
    basis
}

/// Least-squares fit of the constant term in
/// s_n ≈ c₀ + Σ_{(i,j)} c_{ij}·(ln n)^j·n^(−i).
fn fit_constant(samples: &[(u64, Bf)], order: usize, p: usize) -> Result<Bf, EvalError> {
    let basis = model_basis(order);
    let cols = basis.len();
    if samples.len() < cols {
        return Err(EvalError::InsufficientSamples);
    }
    // Design matrix rows.
    let mut rows = Vec::with_capacity(samples.len());
    for (n, _) in samples {
        let n_bf = bigfloat::from_i64(*n as i64, p);
        let ln_n = bigfloat::ln(&n_bf, p);
        let n_inv = bigfloat::recip(&n_bf, p);
        let mut row = Vec::with_capacity(cols);
        for (i, j) in &basis {
            let mut v = bigfloat::powi(&n_inv, *i, p);
            v = bigfloat::mul(&v, &bigfloat::powi(&ln_n, *j, p), p);
            row.push(v);
        }
        rows.push(row);
    }
    // Normal equations AᵀA c = Aᵀ y.
    let mut ata = vec![vec![bigfloat::from_i64(0, p); cols]; cols];
    let mut aty = vec![bigfloat::from_i64(0, p); cols];
    for (row, (_, y)) in rows.iter().zip(samples.iter()) {
        for a in 0..cols {
            for b in a..cols {
                let prod = bigfloat::mul(&row[a], &row[b], p);
                ata[a][b] = bigfloat::add(&ata[a][b], &prod, p);
            }
            aty[a] = bigfloat::add(&aty[a], &bigfloat::mul(&row[a], y, p), p);
        }
    }
    for a in 0..cols {
        for b in 0..a {
            ata[a][b] = ata[b][a].clone();
        }
    }
    let solution = solve_linear_system(&mut ata, &mut aty, p)?;
    Ok(solution.into_iter().next().expect("constant column"))
}

/// Gaussian elimination with partial pivoting.
fn solve_linear_system(
    a: &mut [Vec<Bf>],
    b: &mut [Bf],
    p: usize,
) -> Result<Vec<Bf>, EvalError> {
    let n = b.len();
    for col in 0..n {
        let mut pivot = col;
        for row in (col + 1)..n {
            if a[row][col]
                .abs()
                .partial_cmp(&a[pivot][col].abs())
                .map(|o| o == std::cmp::Ordering::Greater)
                .unwrap_or(false)
            {
                pivot = row;
            }
        }
        if a[pivot][col].is_zero() {
            return Err(EvalError::InsufficientSamples);
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in (col + 1)..n {
            let factor = bigfloat::div(&a[row][col], &a[col][col], p);
            if factor.is_zero() {
                continue;
            }
            for k in col..n {
                let t = bigfloat::mul(&factor, &a[col][k], p);
                a[row][k] = bigfloat::sub(&a[row][k], &t, p);
            }
            let t = bigfloat::mul(&factor, &b[col], p);
            b[row] = bigfloat::sub(&b[row], &t, p);
        }
    }
    let mut x = vec![bigfloat::from_i64(0, p); n];
    for col in (0..n).rev() {
        let mut acc = b[col].clone();
        for k in (col + 1)..n {
            let t = bigfloat::mul(&a[col][k], &x[k], p);
            acc = bigfloat::sub(&acc, &t, p);
        }
        x[col] = bigfloat::div(&acc, &a[col][col], p);
    }
    Ok(x)
}

/// Generic closed-form hypothesis for the offset: δ = −(B/τ)·ln(−γτ).
pub fn delta_hypothesis(base: &BaseFunction) -> Result<LogExpression, EvalError> {
    let ej = julia_series(base, K_FOR_B)?;
    let tau = Rational::from_integer(base.tau().into());
    let coeff = -(&ej.abel.log_coefficient / &tau);
    let arg = -(base.gamma() * &tau);
    Ok(LogExpression::new(coeff, arg))
}

/// Comparison of the two normalizations at one sample point.
#[derive(Clone, Debug)]
pub struct DeltaReport {
    pub fn_name: String,
    pub x: Bf,
    pub n_max: u64,
    /// Measured g_series-normalized minus limit-normalized value.
    pub delta_estimate: Bf,
    pub error_bar: Bf,
    /// Catalog closed form, when one is recorded.
    pub delta_conjectured: Option<LogExpression>,
    /// Generic −(B/τ)·ln(−γτ).
    pub delta_hypothesis: LogExpression,
    pub discrepancy_conjecture: Option<Bf>,
    pub discrepancy_hypothesis: Bf,
}

impl fmt::Display for DeltaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "function:        {}", self.fn_name)?;
        writeln!(f, "x:               {}", bigfloat::decimal_truncated(&self.x, 8))?;
        writeln!(f, "n_max:           {}", self.n_max)?;
        writeln!(
            f,
            "delta estimate:  {}",
            bigfloat::decimal_truncated(&self.delta_estimate, 12)
        )?;
        writeln!(
            f,
            "error bar:       {}",
            bigfloat::to_sci_string(&self.error_bar, 3)
        )?;
        writeln!(
            f,
            "hypothesis:      {} = {}",
            self.delta_hypothesis,
            bigfloat::decimal_truncated(&self.delta_hypothesis.numeric(64), 12)
        )?;
        writeln!(
            f,
            "|est - hyp|:     {}",
            bigfloat::to_sci_string(&self.discrepancy_hypothesis, 3)
        )?;
        match (&self.delta_conjectured, &self.discrepancy_conjecture) {
            (Some(c), Some(d)) => {
                writeln!(
                    f,
                    "conjectured:     {} = {}",
                    c,
                    bigfloat::decimal_truncated(&c.numeric(64), 12)
                )?;
                writeln!(f, "|est - conj|:    {}", bigfloat::to_sci_string(d, 3))
            }
            _ => writeln!(f, "conjectured:     (none recorded)"),
        }
    }
}

/// Estimates δ = g_series − g_limit at `x` and compares against the closed forms.
pub fn delta_estimate(
    base: &BaseFunction,
    x: &Bf,
    n_max: u64,
) -> Result<DeltaReport, EvalError> {
    let p = bigfloat::bits_for_digits(ML_WORK_DIGITS);
    let g = abel_value(base, x, 30)?;
    let (limit, bar) = ml_value(base, x, n_max, ML_MODEL_ORDER)?;
    let delta = bigfloat::sub(&g.value, &limit, p);
    let hypothesis = delta_hypothesis(base)?;
    let hyp_num = hypothesis.numeric(p);
    let discrepancy_hypothesis = bigfloat::sub(&delta, &hyp_num, p).abs();
    let conjectured = base.delta_conjecture().cloned();
    let discrepancy_conjecture = conjectured.as_ref().map(|c| {
        let cn = c.numeric(p);
        bigfloat::sub(&delta, &cn, p).abs()
    });
    Ok(DeltaReport {
        fn_name: base.name().to_string(),
        x: x.clone(),
        n_max,
        delta_estimate: delta,
        error_bar: bigfloat::add(&bar, &g.error_estimate, p),
        delta_conjectured: conjectured,
        delta_hypothesis: hypothesis,
        discrepancy_conjecture,
        discrepancy_hypothesis,
    })
}

trait IsOne {
    fn is_one(&self) -> bool;
}

impl IsOne for Rational {
    fn is_one(&self) -> bool {
        self == &Rational::from_integer(1.into())
    }
}
