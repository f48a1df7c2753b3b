//! Exact arithmetic kernel.
//!
//! [`Rational`] and [`GaussianRational`] come from `num-rational` / `num-complex`; on top of
//! them live truncated power series, dense matrices with exact determinants, and
//! [`QuadraticSurd`] values `a + b·√r` used by the CLT normalizations.

pub(crate) mod matrix;
mod rational;
mod series;
mod surd;

pub use matrix::{ExactMatrix, Matrix};
pub use rational::{
    gaussian, gaussian_to_string, int, parse_rational, rat, rational_pow, rational_to_decimal,
    rational_to_string, GaussianRational, Rational,
};
pub use series::TruncatedSeries;
pub use surd::QuadraticSurd;

/// Determinant of a square matrix over Gaussian rationals.
pub fn det_exact(m: &ExactMatrix) -> crate::Result<GaussianRational> {
    m.det()
}

/// `exp(s)` truncated at the order of `s`; `s` must have zero constant term.
pub fn series_exp(s: &TruncatedSeries) -> crate::Result<TruncatedSeries> {
    s.exp()
}

/// `num / den` truncated at the shared order; `den` must be a unit.
pub fn series_quotient(
    num: &TruncatedSeries,
    den: &TruncatedSeries,
) -> crate::Result<TruncatedSeries> {
    num.quotient(den)
}
