//! Truncated formal power series over exact scalars.
//!
//! A `PowerSeries<C>` stores sparse coefficients on non-negative exponents
//! together with its truncation order `N`:
//!
//! - every stored exponent is ≤ `N`,
//! - an absent exponent ≤ `N` is exactly zero,
//! - exponents > `N` are *unknown*, not zero.
//!
//! Truncation bookkeeping is strict: binary operations return the tightest
//! order implied by the operands (`min` for addition; valuation-shifted `min`
//! for products; `min` for composition with a unit-valuation inner series),
//! so a coefficient can never be read beyond what the inputs determine.
//!
//! The scalar domain is either [`Rational`] or [`LinearForm`]; a product of
//! two series that both carry the symbolic unknown is rejected.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::linear::LinearForm;
use crate::rational::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    /// Both product operands carry the symbolic unknown with nonzero slope.
    #[error("both series carry the symbolic unknown; product would be quadratic in u")]
    BothSymbolic,
    /// Composition inner series has a nonzero constant term.
    #[error("inner series of a composition must have zero constant term")]
    NonzeroConstantTerm,
    /// Reciprocal requested at a claimed valuation whose coefficient vanishes.
    #[error("series has no nonzero leading coefficient at the claimed valuation {valuation}")]
    ZeroLeadingCoefficient { valuation: i64 },
    /// Antiderivative input has support off the expected exponent grid.
    #[error("exponent {exponent} is off the integration grid for tau = {tau}")]
    GridMismatch { exponent: i64, tau: i64 },
    /// Coefficient requested beyond the truncation order.
    #[error("coefficient at x^{wanted} is unknown: series truncated at order {order}")]
    BeyondTruncation { wanted: i64, order: i64 },
}

/// Scalar ring for series coefficients.
///
/// Method names are prefixed to stay unambiguous next to `num_traits` and
/// the standard operator traits on concrete scalar types.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn c_zero() -> Self;
    fn c_one() -> Self;
    fn c_is_zero(&self) -> bool;
    fn c_add(&self, rhs: &Self) -> Self;
    fn c_sub(&self, rhs: &Self) -> Self;
    fn c_neg(&self) -> Self;
    /// Scalar product; may panic for symbolic×symbolic (guarded at series level).
    fn c_mul(&self, rhs: &Self) -> Self;
    fn c_is_symbolic(&self) -> bool;
}

impl Coeff for Rational {
    fn c_zero() -> Self {
        num_traits::Zero::zero()
    }
    fn c_one() -> Self {
        num_traits::One::one()
    }
    fn c_is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn c_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn c_sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn c_neg(&self) -> Self {
        -self
    }
    fn c_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn c_is_symbolic(&self) -> bool {
        false
    }
}

impl Coeff for LinearForm {
    fn c_zero() -> Self {
        LinearForm::new(Zero::zero(), Zero::zero())
    }
    fn c_one() -> Self {
        LinearForm::from_rational(num_traits::One::one())
    }
    fn c_is_zero(&self) -> bool {
        num_traits::Zero::is_zero(&self.constant) && num_traits::Zero::is_zero(&self.slope)
    }
    fn c_add(&self, rhs: &Self) -> Self {
        LinearForm::new(&self.constant + &rhs.constant, &self.slope + &rhs.slope)
    }
    fn c_sub(&self, rhs: &Self) -> Self {
        LinearForm::new(&self.constant - &rhs.constant, &self.slope - &rhs.slope)
    }
    fn c_neg(&self) -> Self {
        LinearForm::new(-&self.constant, -&self.slope)
    }
    fn c_mul(&self, rhs: &Self) -> Self {
        LinearForm::mul(self, rhs)
    }
    fn c_is_symbolic(&self) -> bool {
        LinearForm::is_symbolic(self)
    }
}

/// Truncated formal power series with sparse exact coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries<C: Coeff> {
    coeffs: BTreeMap<i64, C>,
    order: i64,
}

impl<C: Coeff> PowerSeries<C> {
    /// The zero series known through `x^order`.
    pub fn zero(order: i64) -> Self {
        assert!(order >= 0, "truncation order must be non-negative");
        PowerSeries {
            coeffs: BTreeMap::new(),
            order,
        }
    }

    /// The constant 1 known through `x^order`.
    pub fn one(order: i64) -> Self {
        Self::monomial(C::c_one(), 0, order)
    }

    /// `c·x^exp` known through `x^order`.
    pub fn monomial(c: C, exp: i64, order: i64) -> Self {
        assert!(exp >= 0, "power series exponents are non-negative");
        assert!(exp <= order, "monomial exponent beyond truncation order");
        let mut s = Self::zero(order);
        s.set(exp, c);
        s
    }

    /// The identity series `x`.
    pub fn identity(order: i64) -> Self {
        Self::monomial(C::c_one(), 1, order)
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(terms: I, order: i64) -> Self {
        let mut s = Self::zero(order);
        for (e, c) in terms {
            assert!((0..=order).contains(&e), "term exponent out of range");
            s.set(e, c);
        }
        s
    }

    /// Truncation order `N`: coefficients at exponents > `N` are unknown.
    pub fn order(&self) -> i64 {
        self.order
    }

    /// Smallest exponent with a nonzero coefficient, `None` for the zero series.
    pub fn valuation(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    fn valuation_bound(&self) -> i64 {
        // For the zero series everything known is zero, so any product is
        // zero at least through order + other's truncation.
        self.valuation().unwrap_or(self.order + 1)
    }

    /// Stored coefficient of `x^n`, requiring `n ≤ order`.
    pub fn coefficient_at(&self, n: i64) -> Result<C, SeriesError> {
        if n > self.order {
            return Err(SeriesError::BeyondTruncation {
                wanted: n,
                order: self.order,
            });
        }
        Ok(self.coeffs.get(&n).cloned().unwrap_or_else(C::c_zero))
    }

    fn get(&self, n: i64) -> C {
        self.coeffs.get(&n).cloned().unwrap_or_else(C::c_zero)
    }

    fn set(&mut self, n: i64, c: C) {
        if n > self.order {
            return;
        }
        if c.c_is_zero() {
            self.coeffs.remove(&n);
        } else {
            self.coeffs.insert(n, c);
        }
    }

    fn add_to(&mut self, n: i64, c: &C) {
        if n > self.order || c.c_is_zero() {
            return;
        }
        let sum = self.get(n).c_add(c);
        self.set(n, sum);
    }

    /// Nonzero terms in ascending exponent order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True if any coefficient carries the symbolic unknown.
    pub fn is_symbolic(&self) -> bool {
        self.coeffs.values().any(|c| c.c_is_symbolic())
    }

    /// Coefficientwise sum; order is the tighter of the two.
    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order.min(rhs.order);
        let mut out = Self::zero(order);
        for (e, c) in self.iter().take_while(|(e, _)| *e <= order) {
            out.set(e, c.clone());
        }
        for (e, c) in rhs.iter().take_while(|(e, _)| *e <= order) {
            out.add_to(e, c);
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(self.order);
        for (e, c) in self.iter() {
            out.set(e, c.c_neg());
        }
        out
    }

    /// Scalar multiple. The scalar must not be symbolic if the series is.
    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::zero(self.order);
        if c.c_is_zero() {
            return out;
        }
        for (e, v) in self.iter() {
            out.set(e, v.c_mul(c));
        }
        out
    }

    /// Cauchy product truncated at `min(N_a + v_b, N_b + v_a)`.
    pub fn mul(&self, rhs: &Self) -> Result<Self, SeriesError> {
        self.mul_capped(rhs, i64::MAX)
    }

    /// Product additionally truncated at `cap`; used by callers that will
    /// never read above their own working order.
    pub fn mul_capped(&self, rhs: &Self, cap: i64) -> Result<Self, SeriesError> {
        if self.is_symbolic() && rhs.is_symbolic() {
            return Err(SeriesError::BothSymbolic);
        }
        let order = (self.order + rhs.valuation_bound())
            .min(rhs.order + self.valuation_bound())
            .min(cap);
        let mut out = Self::zero(order.max(0));
        for (ea, ca) in self.iter() {
            if ea + rhs.valuation_bound() > order {
                break;
            }
            for (eb, cb) in rhs.iter() {
                let e = ea + eb;
                if e > order {
                    break;
                }
                out.add_to(e, &ca.c_mul(cb));
            }
        }
        Ok(out)
    }

    /// Single coefficient `[x^n](self·rhs)` without forming the product.
    pub fn product_coefficient_at(&self, rhs: &Self, n: i64) -> Result<C, SeriesError> {
        if self.is_symbolic() && rhs.is_symbolic() {
            return Err(SeriesError::BothSymbolic);
        }
        let order = (self.order + rhs.valuation_bound()).min(rhs.order + self.valuation_bound());
        if n > order {
            return Err(SeriesError::BeyondTruncation { wanted: n, order });
        }
        let mut acc = C::c_zero();
        for (ea, ca) in self.iter() {
            if ea > n {
                break;
            }
            let eb = n - ea;
            if eb > rhs.order {
                continue;
            }
            if let Some(cb) = rhs.coeffs.get(&eb) {
                acc = acc.c_add(&ca.c_mul(cb));
            }
        }
        Ok(acc)
    }

    /// `self^k` by repeated multiplication. `k = 0` yields 1 at this order.
    pub fn int_pow(&self, k: u32) -> Result<Self, SeriesError> {
        self.int_pow_capped(k, i64::MAX)
    }

    pub fn int_pow_capped(&self, k: u32, cap: i64) -> Result<Self, SeriesError> {
        let mut out = Self::one(self.order.min(cap).max(0));
        for _ in 0..k {
            out = out.mul_capped(self, cap)?;
        }
        Ok(out)
    }

    /// `self(inner(x))`, requiring `inner(0) = 0`; order is `min` of the two.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        if inner.coeffs.contains_key(&0) {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        let order = self.order.min(inner.order);
        let mut out = Self::zero(order);
        let mut power: Option<Self> = None;
        let mut power_exp = 0i64;
        for (e, c) in self.iter() {
            if e == 0 {
                out.add_to(0, c);
                continue;
            }
            // Walk the inner power up to e, reusing the previous power.
            let cur = match power.take() {
                None => inner.int_pow_capped(e as u32, order)?,
                Some(p) => {
                    let step = inner.int_pow_capped((e - power_exp) as u32, order)?;
                    p.mul_capped(&step, order)?
                }
            };
            // Past the truncation order every remaining term vanishes.
            if cur.valuation_bound() > order {
                break;
            }
            for (pe, pc) in cur.iter() {
                out.add_to(pe, &pc.c_mul(c));
            }
            power = Some(cur);
            power_exp = e;
        }
        Ok(out)
    }

    /// Termwise derivative; drops the order by one.
    pub fn derivative(&self) -> Self
    where
        C: CoeffScaleInt,
    {
        let mut out = Self::zero((self.order - 1).max(0));
        for (e, c) in self.iter() {
            if e >= 1 {
                out.set(e - 1, c.scale_int(e));
            }
        }
        out
    }

    /// Re-truncate to a lower (or equal) order.
    pub fn truncated(&self, order: i64) -> Self {
        assert!(order <= self.order, "cannot extend a truncated series");
        let mut out = Self::zero(order);
        for (e, c) in self.iter().take_while(|(e, _)| *e <= order) {
            out.set(e, c.clone());
        }
        out
    }

    pub fn map<D: Coeff, F: Fn(&C) -> D>(&self, f: F) -> PowerSeries<D> {
        let mut out = PowerSeries::zero(self.order);
        for (e, c) in self.iter() {
            out.set(e, f(c));
        }
        out
    }
}

/// Integer scaling used by the derivative.
pub trait CoeffScaleInt: Coeff {
    fn scale_int(&self, k: i64) -> Self;
}

impl CoeffScaleInt for Rational {
    fn scale_int(&self, k: i64) -> Self {
        self * Rational::from_integer(k.into())
    }
}

impl CoeffScaleInt for LinearForm {
    fn scale_int(&self, k: i64) -> Self {
        let k = Rational::from_integer(k.into());
        LinearForm::new(&self.constant * &k, &self.slope * &k)
    }
}

impl<C: Coeff> PowerSeries<C> {
    /// Lift into another scalar domain, e.g. `Rational` → `LinearForm`.
    pub fn lift<D: Coeff + From<C>>(&self) -> PowerSeries<D> {
        self.map(|c| D::from(c.clone()))
    }
}

impl From<Rational> for LinearForm {
    fn from(r: Rational) -> Self {
        LinearForm::from_rational(r)
    }
}

impl PowerSeries<Rational> {
    /// Canonical text form, e.g. `x - 1/2 x^3 + 5/12 x^4`.
    pub fn to_text(&self) -> String {
        format_terms(self.iter().map(|(e, c)| (e, c.clone())))
    }

    /// CSV rows `exponent,numerator,denominator` with a leading order comment.
    pub fn to_csv(&self) -> String {
        let mut out = format!("# order {}\nexponent,numerator,denominator\n", self.order);
        for (e, c) in self.iter() {
            out.push_str(&format!("{},{},{}\n", e, c.numer(), c.denom()));
        }
        out
    }

    /// Parses the output of [`to_csv`](Self::to_csv) back into a series.
    pub fn parse_csv(text: &str) -> Option<Self> {
        let mut order = None;
        let mut terms = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line == "exponent,numerator,denominator" {
                continue;
            }
            if let Some(rest) = line.strip_prefix("# order") {
                order = Some(rest.trim().parse::<i64>().ok()?);
                continue;
            }
            let mut parts = line.split(',');
            let e: i64 = parts.next()?.trim().parse().ok()?;
            let n: num_bigint::BigInt = parts.next()?.trim().parse().ok()?;
            let d: num_bigint::BigInt = parts.next()?.trim().parse().ok()?;
            terms.push((e, Rational::new(n, d)));
        }
        Some(Self::from_terms(terms, order?))
    }
}

/// Shared term formatter for power-series-like term lists (exponents may be
/// negative for Laurent parts).
pub(crate) fn format_terms<I: Iterator<Item = (i64, Rational)>>(terms: I) -> String {
    let mut out = String::new();
    for (e, c) in terms {
        if c.c_is_zero() {
            continue;
        }
        let neg = c < Rational::zero();
        let mag = if neg { -c } else { c };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let coeff_is_one = mag == num_traits::One::one();
        match (e, coeff_is_one) {
            (0, _) => out.push_str(&mag.to_string()),
            (1, true) => out.push('x'),
            (1, false) => out.push_str(&format!("{} x", mag)),
            (_, true) => out.push_str(&format!("x^{}", e)),
            (_, false) => out.push_str(&format!("{} x^{}", mag, e)),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<C: Coeff> fmt::Display for PowerSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "({})", c)?,
                1 => write!(f, "({}) x", c)?,
                _ => write!(f, "({}) x^{}", c, e)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn x_minus_x2(order: i64) -> PowerSeries<Rational> {
        PowerSeries::from_terms([(1, rat_int(1)), (2, rat_int(-1))], order)
    }

    /// First terms of x·e^(-x).
    fn phi_xexp(order: i64) -> PowerSeries<Rational> {
        let mut terms = Vec::new();
        let mut fac = 1i64;
        for m in 0..=order.min(10) {
            if m > 0 {
                fac *= m;
            }
            let sign = if m % 2 == 0 { 1 } else { -1 };
            terms.push((m + 1, rat(sign, fac)));
        }
        PowerSeries::from_terms(
            terms.into_iter().filter(|(e, _)| *e <= order).collect::<Vec<_>>(),
            order,
        )
    }

    #[test]
    fn add_cancellation() {
        let a = x_minus_x2(8);
        let b = PowerSeries::from_terms([(2, rat_int(1))], 6);
        let sum = a.add(&b);
        assert_eq!(sum, PowerSeries::from_terms([(1, rat_int(1))], 6));
        assert_eq!(sum.order(), 6);
    }

    #[test]
    fn add_identity() {
        let phi = phi_xexp(9);
        let zero = PowerSeries::zero(9);
        assert_eq!(zero.add(&phi), phi);
    }

    #[test]
    fn add_eliminates_unknown() {
        // (x + a·x³) + ((-1/2 - a)·x³) = x - 1/2 x³ with zero slope in u.
        let a = PowerSeries::from_terms(
            [
                (1, LinearForm::from_rational(rat_int(1))),
                (3, LinearForm::unknown()),
            ],
            6,
        );
        let b = PowerSeries::from_terms([(3, LinearForm::new(rat(-1, 2), rat_int(-1)))], 6);
        let sum = a.add(&b);
        assert_eq!(
            sum.coefficient_at(3).unwrap(),
            LinearForm::from_rational(rat(-1, 2))
        );
        assert!(!sum.is_symbolic());
    }

    #[test]
    fn mul_hand_expansion() {
        let a = x_minus_x2(8);
        let sq = a.mul(&a).unwrap();
        assert_eq!(
            sq,
            PowerSeries::from_terms(
                [(2, rat_int(1)), (3, rat_int(-2)), (4, rat_int(1))],
                9 // order 8 + valuation 1
            )
        );
    }

    #[test]
    fn mul_phi_coefficient() {
        // [x³] φ₆² = -2 by hand convolution.
        let phi = phi_xexp(9);
        let sq = phi.mul(&phi).unwrap();
        assert_eq!(sq.coefficient_at(3).unwrap(), rat_int(-2));
    }

    #[test]
    fn mul_symbolic_one_side() {
        // ψ₆·(-x² + a·x³): coefficient of x⁴ is -3/2 - 2a.
        let psi = PowerSeries::from_terms(
            [
                (0, rat_int(1)),
                (1, rat_int(-2)),
                (2, rat(3, 2)),
                (3, rat(-2, 3)),
                (4, rat(5, 24)),
            ],
            4,
        )
        .lift::<LinearForm>();
        let r = PowerSeries::from_terms(
            [
                (2, LinearForm::from_rational(rat_int(-1))),
                (3, LinearForm::unknown()),
            ],
            6,
        );
        let prod = psi.mul(&r).unwrap();
        assert_eq!(
            prod.coefficient_at(4).unwrap(),
            LinearForm::new(rat(-3, 2), rat_int(-2))
        );
        assert_eq!(
            psi.product_coefficient_at(&r, 4).unwrap(),
            LinearForm::new(rat(-3, 2), rat_int(-2))
        );
    }

    #[test]
    fn mul_both_symbolic_rejected() {
        let u = PowerSeries::from_terms([(1, LinearForm::unknown())], 4);
        assert_eq!(u.mul(&u), Err(SeriesError::BothSymbolic));
    }

    #[test]
    fn mul_order_rule() {
        // orders 5 and 7, valuations 2 and 3: min(5+3, 7+2) = 8.
        let a = PowerSeries::from_terms([(2, rat_int(1))], 5);
        let b = PowerSeries::from_terms([(3, rat_int(1))], 7);
        assert_eq!(a.mul(&b).unwrap().order(), 8);
    }

    #[test]
    fn compose_logistic_self() {
        let f = x_minus_x2(8);
        let c = f.compose(&f).unwrap();
        assert_eq!(
            c,
            PowerSeries::from_terms(
                [
                    (1, rat_int(1)),
                    (2, rat_int(-2)),
                    (3, rat_int(2)),
                    (4, rat_int(-1)),
                ],
                8
            )
        );
    }

    #[test]
    fn compose_identity_inner() {
        let f = phi_xexp(7);
        let x = PowerSeries::identity(7);
        assert_eq!(f.compose(&x).unwrap(), f);
    }

    #[test]
    fn compose_rejects_constant_term() {
        let f = x_minus_x2(4);
        let bad = PowerSeries::from_terms([(0, rat_int(1)), (1, rat_int(1))], 4);
        assert_eq!(f.compose(&bad), Err(SeriesError::NonzeroConstantTerm));
    }

    #[test]
    fn int_pow_examples() {
        let phi = phi_xexp(9);
        assert_eq!(phi.int_pow(0).unwrap(), PowerSeries::one(9));
        let sq = x_minus_x2(8).int_pow(2).unwrap();
        assert_eq!(sq.coefficient_at(2).unwrap(), rat_int(1));
        assert_eq!(sq.coefficient_at(3).unwrap(), rat_int(-2));
        assert_eq!(sq.coefficient_at(4).unwrap(), rat_int(1));
        // [x⁴] φ₆³ = -3 by hand convolution.
        assert_eq!(phi.int_pow(3).unwrap().coefficient_at(4).unwrap(), rat_int(-3));
    }

    #[test]
    fn coefficient_beyond_truncation() {
        let f = x_minus_x2(4);
        assert_eq!(f.coefficient_at(0).unwrap(), rat_int(0));
        assert_eq!(
            f.coefficient_at(5),
            Err(SeriesError::BeyondTruncation { wanted: 5, order: 4 })
        );
    }

    #[test]
    fn derivative_drops_order() {
        let f = phi_xexp(9);
        let d = f.derivative();
        assert_eq!(d.order(), 8);
        assert_eq!(d.coefficient_at(0).unwrap(), rat_int(1));
        assert_eq!(d.coefficient_at(1).unwrap(), rat_int(-2));
        assert_eq!(d.coefficient_at(2).unwrap(), rat(3, 2));
    }

    #[test]
    fn csv_round_trip() {
        let f = phi_xexp(9);
        let csv = f.to_csv();
        assert_eq!(PowerSeries::parse_csv(&csv).unwrap(), f);
    }

    #[test]
    fn text_form() {
        let f = PowerSeries::from_terms([(1, rat_int(1)), (3, rat(-1, 2))], 5);
        assert_eq!(f.to_text(), "x - 1/2 x^3");
    }
}
