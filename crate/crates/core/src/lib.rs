//! Exact Hochschild calculus for polynomial algebras `ℚ[x1, …, xd]`.
//!
//! The crate covers:
//!
//! - [`exactalg`]: rationals, sparse polynomials, truncated ħ-series;
//! - [`hochschild`]: polydifferential cochains and Hochschild chains with the
//!   cup product, Gerstenhaber bracket, contraction, Lie derivative, Connes'
//!   operator and an exact coboundary solver;
//! - [`polyvec`]: polyvector fields and forms with the Schouten–Nijenhuis
//!   bracket, contraction, de Rham differential and the HKR embedding;
//! - [`dgla`]: Maurer–Cartan elements, twisting, gauge action and the
//!   Chevalley–Eilenberg coderivation for any DG Lie algebra instance;
//! - [`starprod`]: star products, the Moyal–Weyl product and equivalences;
//! - [`obstruction`]: the Vey cocycle and an exact certificate that it is not
//!   a coboundary on `ℚ[x, y]/ℚ`;
//! - [`cli`]: configuration, verification suites and JSON reports used by the
//!   `hochlab` binary.
//!
//! Runnable walkthroughs live in the crate's `examples/` directory.

pub mod cli;
pub mod dgla;
pub mod error;
pub mod exactalg;
pub mod hochschild;
pub mod linsolve;
pub mod obstruction;
pub mod polyvec;
pub mod sample;
pub mod starprod;

pub use error::{AlgError, Result};
pub use exactalg::{HbarSeries, MultiIndex, MultiPoly, Rational};
