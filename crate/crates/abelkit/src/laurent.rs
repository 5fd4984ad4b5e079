//! Laurent reciprocals and the structured Abel expansion.
//!
//! `laurent_reciprocal` inverts a series with exact valuation τ+1 (the Julia
//! series), producing coefficients from x^(−τ−1) upward. `integrate_with_log`
//! antidifferentiates that term by term — x^(−1) maps to ln x, everything else
//! follows the power rule — with the integration constant pinned to exactly
//! zero. The result is an [`AbelForm`]:
//!
//! ```text
//! A·x^(−τ) + B·ln x + Σ_{m≥1} t_m·x^(mτ)
//! ```

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::rational::Rational;
use crate::series::{format_terms, PowerSeries, SeriesError};

/// Sparse exact series allowing negative exponents, with truncation order.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries {
    coeffs: BTreeMap<i64, Rational>,
    order: i64,
}

impl LaurentSeries {
    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn coefficient_at(&self, n: i64) -> Result<Rational, SeriesError> {
        if n > self.order {
            return Err(SeriesError::BeyondTruncation {
                wanted: n,
                order: self.order,
            });
        }
        Ok(self.coeffs.get(&n).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(terms: I, order: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e, c) in terms {
            assert!(e <= order, "term exponent beyond truncation order");
            if !c.is_zero() {
                coeffs.insert(e, c);
            }
        }
        LaurentSeries { coeffs, order }
    }

    pub fn to_text(&self) -> String {
        format_terms(self.iter().map(|(e, c)| (e, c.clone())))
    }
}

/// Inverts a rational series with exact valuation `valuation`.
///
/// Writes `a = γ·x^v·(1 + w)` and expands `(1 + w)^(−1)` by the standard
/// recurrence, so the result has exponents from `−v` upward and truncation
/// order `N − 2v` where `N` is the input order.
pub fn laurent_reciprocal(
    a: &PowerSeries<Rational>,
    valuation: i64,
) -> Result<LaurentSeries, SeriesError> {
    if a.valuation() != Some(valuation) {
        return Err(SeriesError::ZeroLeadingCoefficient { valuation });
    }
    let gamma = a.coefficient_at(valuation)?;
    let unit_order = a.order() - valuation;
    // unit = a / (γ x^v), a power series with constant term 1.
    let mut unit = PowerSeries::zero(unit_order);
    for (e, c) in a.iter() {
        unit = unit.add(&PowerSeries::monomial(c / &gamma, e - valuation, unit_order));
    }
    // inv = unit^(-1): c0 = 1, c_n = -Σ_{k=1..n} unit_k · inv_{n-k}.
    let mut inv: Vec<Rational> = Vec::with_capacity(unit_order as usize + 1);
    inv.push(Rational::from_integer(1.into()));
    for n in 1..=unit_order {
        let mut sum = Rational::zero();
        for (k, uk) in unit.iter() {
            if k == 0 {
                continue;
            }
            if k > n {
                break;
            }
            sum += uk * &inv[(n - k) as usize];
        }
        inv.push(-sum);
    }
    let order = a.order() - 2 * valuation;
    let terms = inv
        .into_iter()
        .enumerate()
        .map(|(n, c)| (n as i64 - valuation, c / &gamma))
        .filter(|(e, _)| *e <= order);
    Ok(LaurentSeries::from_terms(terms, order))
}

/// Structured expansion of the Abel solution near the fixed point:
/// `A·x^(−τ) + B·ln x + Σ t_m·x^(mτ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct AbelForm {
    pub tau: i64,
    /// Coefficient of `x^(−τ)`.
    pub pole_coefficient: Rational,
    /// Coefficient of `ln x`.
    pub log_coefficient: Rational,
    /// Taylor part with support on positive multiples of τ.
    pub taylor: PowerSeries<Rational>,
}

impl AbelForm {
    /// Formal derivative, back on the reciprocal grid `{−τ−1 + mτ}`.
    pub fn derivative(&self) -> LaurentSeries {
        let order = self.taylor.order() - 1;
        let mut terms = vec![
            (
                -self.tau - 1,
                -&self.pole_coefficient * Rational::from_integer(self.tau.into()),
            ),
            (-1, self.log_coefficient.clone()),
        ];
        for (e, c) in self.taylor.iter() {
            if e - 1 <= order {
                terms.push((e - 1, c * Rational::from_integer(e.into())));
            }
        }
        LaurentSeries::from_terms(terms, order)
    }

    /// Negated form (the published series for sign-flipped presentations).
    pub fn neg(&self) -> AbelForm {
        AbelForm {
            tau: self.tau,
            pole_coefficient: -&self.pole_coefficient,
            log_coefficient: -&self.log_coefficient,
            taylor: self.taylor.neg(),
        }
    }

    /// Drops the top `count` Taylor terms (tail-sensitivity probe).
    pub fn drop_top_terms(&self, count: usize) -> AbelForm {
        let keep: Vec<_> = self.taylor.iter().map(|(e, c)| (e, c.clone())).collect();
        let kept = keep.len().saturating_sub(count);
        AbelForm {
            tau: self.tau,
            pole_coefficient: self.pole_coefficient.clone(),
            log_coefficient: self.log_coefficient.clone(),
            taylor: PowerSeries::from_terms(
                keep.into_iter().take(kept),
                self.taylor.order(),
            ),
        }
    }

    /// Presentation text: pole, log, then Taylor terms.
    pub fn to_text(&self) -> String {
        let mut parts = Vec::new();
        if !self.pole_coefficient.is_zero() {
            parts.push((-self.tau, self.pole_coefficient.clone(), false));
        }
        if !self.log_coefficient.is_zero() {
            parts.push((0, self.log_coefficient.clone(), true));
        }
        let mut out = String::new();
        for (e, c, is_log) in parts {
            let neg = c < Rational::zero();
            let mag = if neg { -c } else { c };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if is_log {
                out.push_str(&format!("{} ln(x)", mag));
            } else {
                out.push_str(&format!("{} x^{}", mag, e));
            }
        }
        let taylor = self.taylor.to_text();
        if taylor != "0" {
            if out.is_empty() {
                out = taylor;
            } else {
                if taylor.starts_with('-') {
                    out.push_str(" - ");
                    out.push_str(taylor.trim_start_matches('-'));
                } else {
                    out.push_str(" + ");
                    out.push_str(&taylor);
                }
            }
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Term-by-term antiderivative of a reciprocal-grid Laurent series, with the
/// integration constant fixed to exactly zero. This choice *is* the series
/// normalization of the Abel solution.
pub fn integrate_with_log(d: &LaurentSeries, tau: i64) -> Result<AbelForm, SeriesError> {
    assert!(tau >= 1);
    let taylor_order = d.order() + 1;
    let mut pole = Rational::zero();
    let mut log = Rational::zero();
    let mut taylor_terms = Vec::new();
    for (e, c) in d.iter() {
        let target = e + 1;
        // Valid inputs live on {−τ−1 + mτ : m ≥ 0}, i.e. target ≡ 0 (mod τ)
        // with target ≥ −τ; anything else has no slot in the Abel form.
        if target % tau != 0 || target < -tau || (target > -tau && target < 0) {
            return Err(SeriesError::GridMismatch {
                exponent: e,
                tau,
            });
        }
        if target == -tau {
            pole = c / Rational::from_integer((-tau).into());
        } else if target == 0 {
            log = c.clone();
        } else {
            taylor_terms.push((target, c / Rational::from_integer(target.into())));
        }
    }
    Ok(AbelForm {
        tau,
        pole_coefficient: pole,
        log_coefficient: log,
        taylor: PowerSeries::from_terms(
            taylor_terms.into_iter().filter(|(e, _)| *e <= taylor_order),
            taylor_order.max(0),
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn reciprocal_of_monomial() {
        let a = PowerSeries::from_terms([(2, rat_int(-1))], 8);
        let r = laurent_reciprocal(&a, 2).unwrap();
        assert_eq!(r.coefficient_at(-2).unwrap(), rat_int(-1));
        assert_eq!(r.coefficient_at(0).unwrap(), rat_int(0));
        assert_eq!(r.order(), 4);
    }

    #[test]
    fn reciprocal_rejects_wrong_valuation() {
        let a = PowerSeries::from_terms([(2, rat_int(-1))], 8);
        assert!(matches!(
            laurent_reciprocal(&a, 3),
            Err(SeriesError::ZeroLeadingCoefficient { valuation: 3 })
        ));
    }

    /// λ₆ through x^10 as printed; 1/λ₆ must reproduce the printed expansion.
    #[test]
    fn reciprocal_of_lambda_xexp() {
        let lambda = PowerSeries::from_terms(
            [
                (2, rat_int(-1)),
                (3, rat(-1, 2)),
                (4, rat(-5, 12)),
                (5, rat(-5, 12)),
                (6, rat(-107, 240)),
                (7, rat(-173, 360)),
                (8, rat(-7577, 15120)),
                (9, rat(-14867, 30240)),
                (10, rat(-36461, 80640)),
            ],
            10,
        );
        let r = laurent_reciprocal(&lambda, 2).unwrap();
        let expected = [
            (-2, rat_int(-1)),
            (-1, rat(1, 2)),
            (0, rat(1, 6)),
            (1, rat(1, 8)),
            (2, rat(19, 180)),
            (3, rat(1, 12)),
            (4, rat(41, 840)),
            (5, rat(37, 17280)),
            (6, rat(-18349, 453600)),
        ];
        for (e, c) in expected {
            assert_eq!(r.coefficient_at(e).unwrap(), c, "exponent {}", e);
        }
    }

    /// 1/λ₉ spot values derived by hand inversion of the printed λ₉.
    #[test]
    fn reciprocal_of_lambda_arcsinh() {
        let lambda = PowerSeries::from_terms(
            [
                (3, rat(-1, 6)),
                (5, rat(1, 30)),
                (7, rat(-41, 3780)),
                (9, rat(4, 945)),
            ],
            10,
        );
        let r = laurent_reciprocal(&lambda, 3).unwrap();
        assert_eq!(r.coefficient_at(-3).unwrap(), rat_int(-6));
        assert_eq!(r.coefficient_at(-1).unwrap(), rat(-6, 5));
    }

    #[test]
    fn reciprocal_times_original_is_one() {
        let lambda = PowerSeries::from_terms(
            [(2, rat_int(-1)), (3, rat(-1, 2)), (4, rat(-5, 12)), (5, rat(-5, 12))],
            6,
        );
        let r = laurent_reciprocal(&lambda, 2).unwrap();
        // Multiply back by hand: sum over split exponents.
        for n in 0..=(r.order() + 2) {
            let mut acc = Rational::zero();
            for (e, c) in r.iter() {
                let other = n - e;
                if (0..=lambda.order()).contains(&other) {
                    acc += c * lambda.coefficient_at(other).unwrap();
                }
            }
            let expect = if n == 0 { rat_int(1) } else { rat_int(0) };
            assert_eq!(acc, expect, "coefficient at x^{}", n);
        }
    }

    #[test]
    fn integrate_xexp_reciprocal() {
        let d = LaurentSeries::from_terms(
            [
                (-2, rat_int(-1)),
                (-1, rat(1, 2)),
                (0, rat(1, 6)),
                (1, rat(1, 8)),
                (2, rat(19, 180)),
            ],
            2,
        );
        let g = integrate_with_log(&d, 1).unwrap();
        assert_eq!(g.pole_coefficient, rat_int(1));
        assert_eq!(g.log_coefficient, rat(1, 2));
        assert_eq!(g.taylor.coefficient_at(1).unwrap(), rat(1, 6));
        assert_eq!(g.taylor.coefficient_at(2).unwrap(), rat(1, 16));
        assert_eq!(g.taylor.coefficient_at(3).unwrap(), rat(19, 540));
    }

    #[test]
    fn integrate_sin_reciprocal() {
        // 1/λ₃ leading terms: -6 x^-3 + (6/5) x^-1 + (79/525) x + ...
        let d = LaurentSeries::from_terms(
            [(-3, rat_int(-6)), (-1, rat(6, 5)), (1, rat(79, 525))],
            2,
        );
        let g = integrate_with_log(&d, 2).unwrap();
        assert_eq!(g.pole_coefficient, rat_int(3));
        assert_eq!(g.log_coefficient, rat(6, 5));
        assert_eq!(g.taylor.coefficient_at(2).unwrap(), rat(79, 1050));
    }

    #[test]
    fn integrate_arcsinh_reciprocal() {
        let d = LaurentSeries::from_terms(
            [
                (-3, rat_int(-6)),
                (-1, rat(-6, 5)),
                (1, rat(79, 525)),
                (3, rat(-116, 2625)),
            ],
            4,
        );
        let g = integrate_with_log(&d, 2).unwrap();
        assert_eq!(g.pole_coefficient, rat_int(3));
        assert_eq!(g.log_coefficient, rat(-6, 5));
        assert_eq!(g.taylor.coefficient_at(2).unwrap(), rat(79, 1050));
        assert_eq!(g.taylor.coefficient_at(4).unwrap(), rat(-29, 2625));
    }

    #[test]
    fn integrate_rejects_off_grid() {
        let d = LaurentSeries::from_terms([(-3, rat_int(-6)), (0, rat_int(1))], 2);
        assert!(matches!(
            integrate_with_log(&d, 2),
            Err(SeriesError::GridMismatch { exponent: 0, tau: 2 })
        ));
    }

    #[test]
    fn derivative_round_trip() {
        let d = LaurentSeries::from_terms(
            [
                (-3, rat_int(-6)),
                (-1, rat(-6, 5)),
                (1, rat(79, 525)),
                (3, rat(-116, 2625)),
            ],
            4,
        );
        let g = integrate_with_log(&d, 2).unwrap();
        assert_eq!(g.derivative(), d);
    }
}
