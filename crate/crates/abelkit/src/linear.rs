//! Affine expressions `c + s·u` in the single symbolic unknown `u`.
//!
//! The elimination loop of the series solver introduces one fresh unknown per
//! step and the unknown only ever appears linearly, so this is the whole
//! symbolic algebra needed: products where both factors carry `u` are rejected.

use std::fmt;

use num_traits::Zero;

use crate::rational::Rational;

/// `constant + slope·u` for the single symbolic unknown `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    pub constant: Rational,
    pub slope: Rational,
}

impl LinearForm {
    pub fn new(constant: Rational, slope: Rational) -> Self {
        LinearForm { constant, slope }
    }

    /// The unknown itself: `u`.
    pub fn unknown() -> Self {
        LinearForm::new(Rational::zero(), Rational::from_integer(1.into()))
    }

    pub fn from_rational(r: Rational) -> Self {
        LinearForm::new(r, Rational::zero())
    }

    pub fn is_symbolic(&self) -> bool {
        !self.slope.is_zero()
    }

    /// Product of two linear forms. Degree ≥ 2 in `u` never occurs in the
    /// solver, so a symbolic×symbolic product is a caller bug.
    ///
    /// Panics if both factors have nonzero slope.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert!(
            !(self.is_symbolic() && rhs.is_symbolic()),
            "product of two symbolic linear forms (degree 2 in u)"
        );
        LinearForm::new(
            &self.constant * &rhs.constant,
            &self.constant * &rhs.slope + &self.slope * &rhs.constant,
        )
    }

    /// `None` when both factors are symbolic.
    pub fn try_mul(&self, rhs: &Self) -> Option<Self> {
        if self.is_symbolic() && rhs.is_symbolic() {
            None
        } else {
            Some(self.mul(rhs))
        }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slope.is_zero() {
            write!(f, "{}", self.constant)
        } else if self.constant.is_zero() {
            write!(f, "{}*u", self.slope)
        } else {
            write!(f, "{} + {}*u", self.constant, self.slope)
        }
    }
}
