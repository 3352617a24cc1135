//! Polyvector fields and exterior forms with polynomial coefficients.
//!
//! `(T_poly, ∧, [,]_SN)` with forms `Ω^{−•}` is a calculus: contraction
//! `i_γ`, de Rham `d` and `l_γ = d i_γ − (−1)^{|γ|} i_γ d`. The contraction
//! convention is `i_{γ_1∧γ_2} = i_{γ_1} ∘ i_{γ_2}`, so `i_{∂_1∧∂_2}(dx_1∧dx_2) = −1`.

mod alt;
mod field;
mod form;

pub use field::{AltJson, AltTermJson, PolyVector};
pub use form::ExtForm;

use crate::error::Result;
use crate::hochschild::PolyDiffCochain;

pub fn wedge(a: &PolyVector, b: &PolyVector) -> Result<PolyVector> {
    a.wedge(b)
}

pub fn schouten_bracket(a: &PolyVector, b: &PolyVector) -> Result<PolyVector> {
    a.schouten(b)
}

pub fn contraction_i(gamma: &PolyVector, omega: &ExtForm) -> Result<ExtForm> {
    omega.contraction(gamma)
}

pub fn de_rham_d(omega: &ExtForm) -> ExtForm {
    omega.d()
}

pub fn lie_derivative_l(gamma: &PolyVector, omega: &ExtForm) -> Result<ExtForm> {
    omega.lie_derivative(gamma)
}

pub fn hkr(gamma: &PolyVector) -> PolyDiffCochain {
    gamma.hkr()
}
