//! Exact polynomial and rational-function arithmetic in `u` and `(u, T)`.
//!
//! Everything is over arbitrary-precision integers. Univariate fractions
//! are kept reduced and canonical; bivariate fractions are not reduced and
//! compare by cross-multiplication.

mod bipoly;
pub mod json;
mod poly;
mod rational;
mod series;

use thiserror::Error;

pub use bipoly::{birat_eq, BiPolyUT, ZetaRational};
pub use poly::IntPolyU;
pub use rational::{rf_arith, rf_eq, rf_make, ArithOp, LaurentExpansion, RationalFunctionU};
pub use series::{ts_expand, TSeriesU};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RatPolyError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("Laurent coefficient of u^{exponent} is not an integer")]
    NonIntegral { exponent: i64 },
    #[error("denominator has zero constant term in T; no power series expansion")]
    NotSeriesExpandable,
}
