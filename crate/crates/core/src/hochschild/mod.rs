//! Hochschild cochains (polydifferential operators) and chains of
//! `A = ℚ[x1, …, xd]`, with the cup product, the Gerstenhaber bracket, the
//! contraction `I`, the Lie derivative `L`, Connes' operator `B` and the
//! negative cyclic differential `∂ + uB`.
//!
//! For `P` of arity `k` the differential satisfies `∂P = (-1)^{k+1} [μ, P]_G`.

mod chain;
mod cochain;
mod solve;

pub use chain::{ChainJson, ChainTermJson, CyclicChain, HochChain, MixedChain};
pub use cochain::{CochainJson, CochainTermJson, PolyDiffCochain};
pub use solve::{
    chain_boundary_solve, coboundary_solve, Bounds, CoboundaryOutcome, CoboundaryWitness,
    WitnessEntryJson, WitnessJson,
};

use crate::error::Result;
use crate::exactalg::MultiPoly;

pub fn cochain_apply(p: &PolyDiffCochain, args: &[MultiPoly]) -> Result<MultiPoly> {
    p.apply(args)
}

pub fn hoch_differential(p: &PolyDiffCochain) -> PolyDiffCochain {
    p.hoch_differential()
}

pub fn cup(p1: &PolyDiffCochain, p2: &PolyDiffCochain) -> Result<PolyDiffCochain> {
    p1.cup(p2)
}

pub fn gerstenhaber_bracket(q1: &PolyDiffCochain, q2: &PolyDiffCochain) -> Result<PolyDiffCochain> {
    q1.gerstenhaber_bracket(q2)
}

pub fn chain_boundary(c: &HochChain) -> HochChain {
    c.chain_boundary()
}

pub fn contraction_i(p: &PolyDiffCochain, c: &HochChain) -> Result<HochChain> {
    c.contraction_i(p)
}

pub fn lie_derivative_l(q: &PolyDiffCochain, c: &HochChain) -> Result<HochChain> {
    c.lie_derivative(q)
}

pub fn connes_b(c: &HochChain) -> HochChain {
    c.connes_b()
}

pub fn cyclic_differential(c: &CyclicChain) -> CyclicChain {
    c.cyclic_differential()
}
