#![allow(dead_code)]

//! Shared test helpers: the coefficient-matching oracle for Julia's equation
//! and assertion utilities.

use abelkit::bigfloat::{self, Bf};
use abelkit::catalog::BaseFunction;
use abelkit::rational::Rational;
use abelkit::series::PowerSeries;

/// Independent oracle for the Julia series.
///
/// Solves λ(θ(x)) = θ′(x)·λ(x) directly: substitute the ansatz
/// λ = γ·x^(τ+1) + Σ w_m·x^(τm+1) and match coefficients order by order.
/// The system is triangular — the unknown w_m first appears at exponent
/// τ(m+1)+1 with the exact pivot γτ(m−1) — and everything stays in exact
/// rationals. No elimination bookkeeping from the production solver is used;
/// the composition route is the check on it.
///
/// Returns w_2 ..= w_terms.
pub fn julia_oracle(base: &BaseFunction, terms: u32) -> Vec<Rational> {
    assert!(terms >= 2);
    let tau = base.tau();
    let order = tau * (terms as i64 + 1) + 2;
    let m_max = ((order - 1) / tau) as u32;
    let phi = base.phi(m_max, order);
    let phi_prime = phi.derivative();
    let gamma = base.gamma().clone();

    let phi_tau = phi.int_pow_capped(tau as u32, order).unwrap();
    // power = φ^(τm+1); composed = Σ_{k≤m} w_k·φ^(τk+1) with w_1 = γ.
    let mut power = phi.int_pow_capped((tau + 1) as u32, order).unwrap();
    let mut composed = power.scale(&gamma);
    let mut lambda = PowerSeries::monomial(gamma, tau + 1, order);
    let mut out = Vec::with_capacity(terms as usize - 1);

    for m in 2..=(terms as i64) {
        power = power.mul_capped(&phi_tau, order).unwrap();
        let e = tau * (m + 1) + 1;
        // Residual coefficient at e as a linear function of the unknown:
        //   [x^e]{ composed + w·φ^(τm+1) − θ′·(λ + w·x^(τm+1)) } = α + β·w.
        let alpha = composed.coefficient_at(e).unwrap()
            - phi_prime.product_coefficient_at(&lambda, e).unwrap();
        let beta =
            power.coefficient_at(e).unwrap() - phi_prime.coefficient_at(e - (tau * m + 1)).unwrap();
        assert!(!num_traits::Zero::is_zero(&beta), "triangular pivot vanished");
        let w = -alpha / beta;
        composed = composed.add(&power.scale(&w));
        lambda = lambda.add(&PowerSeries::monomial(w.clone(), tau * m + 1, order));
        out.push(w);
    }
    out
}

/// |a − b| < 10^(−digits).
pub fn assert_close(a: &Bf, b: &Bf, digits: u32, p: usize, what: &str) {
    let err = bigfloat::sub(a, b, p).abs();
    let tol = bigfloat::pow10_neg(digits, p);
    assert!(
        err.partial_cmp(&tol) == Some(std::cmp::Ordering::Less),
        "{}: difference {} exceeds 1e-{}",
        what,
        bigfloat::to_sci_string(&err, 3),
        digits
    );
}

/// Deterministic pseudo-random rationals in (lo, hi), coarse grid.
pub fn sample_points(seed: u64, count: usize, lo: f64, hi: f64) -> Vec<f64> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.gen_range(lo..hi)).collect()
}

pub fn bf_from_f64(v: f64, p: usize) -> Bf {
    bigfloat::parse_decimal(&format!("{:.15}", v), p)
}
