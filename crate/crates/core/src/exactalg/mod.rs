//! Exact rational arithmetic, sparse multivariate polynomials and
//! truncated ħ-series.

mod monomial;
mod poly;
pub mod rational;
mod series;

pub use monomial::{leibniz_split, MultiIndex};
pub use poly::{poly_arith, MultiPoly, Operand, PolyOp};
pub use rational::{parse_rational, rat, Rational};
pub use series::{
    exp_coefficients, f_series, f_series_coefficients, series_arith, HbarSeries, Linear,
    SeriesOp, SeriesRing,
};
