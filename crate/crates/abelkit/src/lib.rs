//! Exact and arbitrary-precision machinery for Abel's functional equation
//! `g(θ(x)) = g(x) + 1` on maps with an attracting unit-slope fixed point
//! at the origin.
//!
//! The crate is organized around the pipeline:
//!
//! 1. [`series`] / [`laurent`] — exact truncated-series algebra,
//! 2. [`catalog`] — base functions θ with exact Taylor data and evaluators,
//! 3. [`ej`] — the order-by-order Julia-series solver and the Abel expansion,
//! 4. [`eval`] — big-float evaluation of Abel values, inverses, and
//!    fractional iterates (half-iterates in particular),
//! 5. [`ml`] — the orbit-limit route to the principal Abel value and the
//!    normalization offset δ between the two routes.

pub mod bigfloat;
pub mod catalog;
pub mod solver;
pub mod eval;
pub mod laurent;
pub mod linear;
pub mod limit;
pub mod rational;
pub mod reference;
pub mod series;

pub use catalog::{BaseFunction, Catalog};
pub use laurent::{integrate_with_log, laurent_reciprocal, AbelForm, LaurentSeries};
pub use linear::LinearForm;
pub use rational::Rational;
pub use series::{PowerSeries, SeriesError};
