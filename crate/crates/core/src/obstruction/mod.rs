//! Non-triviality of the Vey cocycle on the Poisson algebra `A/𝕂`.
//!
//! For constant `θ`, the Moyal commutator is `ħ{a,b} + ħ³V(a,b) mod ħ⁵`. If
//! a formality morphism existed, `V` would be a Chevalley–Eilenberg
//! coboundary: `V(a,b) = P({a,b}) − {P(a),b} − {a,P(b)}` for some linear
//! `P: A/𝕂 → A/𝕂`. The system for `P` over a graded truncation is assembled
//! here and either solved or refuted with an exact row combination.

mod replay;
mod system;

pub use replay::{reproduce_contradiction, ReplayStep, Transcript};
pub use system::{
    build_coboundary_system, build_system_with, coboundary_of, solve_or_certify, verify_certificate, CertificateJson,
    LinearMapTable, LinearSystem, ObstructionBounds, ObstructionCertificate, SystemRow, WitnessCoeffJson,
    WitnessJson, WitnessRowJson,
};

use num_traits::{One, Zero};

use crate::error::{AlgError, Result};
use crate::exactalg::rational::rat;
use crate::exactalg::{MultiIndex, MultiPoly, Rational};
use crate::polyvec::PolyVector;

/// A class in `A/𝕂`, represented by its zero-constant-term polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PoissonFunctionClass(MultiPoly);

impl PoissonFunctionClass {
    pub fn new(p: MultiPoly) -> Self {
        PoissonFunctionClass(p.without_constant())
    }

    pub fn parse(text: &str, dim: usize) -> Result<Self> {
        Ok(Self::new(MultiPoly::parse(text, dim)?))
    }

    pub fn rep(&self) -> &MultiPoly {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

fn check_theta(theta: &[Vec<Rational>], dims: &[usize]) -> Result<()> {
    PolyVector::constant_bivector(theta)?;
    if let Some(&d) = dims.iter().find(|&&d| d != theta.len()) {
        return Err(AlgError::DimensionMismatch { left: theta.len(), right: d });
    }
    Ok(())
}

/// `θ^{ij} ∂_i a ∂_j b` without projection.
pub fn poisson_bracket_raw(theta: &[Vec<Rational>], a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
    check_theta(theta, &[a.dim(), b.dim()])?;
    let d = theta.len();
    let da: Vec<MultiPoly> = (0..d).map(|i| a.partial(i)).collect::<Result<_>>()?;
    let db: Vec<MultiPoly> = (0..d).map(|j| b.partial(j)).collect::<Result<_>>()?;
    let mut out = MultiPoly::zero(d);
    for (i, row) in theta.iter().enumerate() {
        for (j, t) in row.iter().enumerate() {
            if !t.is_zero() && !da[i].is_zero() && !db[j].is_zero() {
                out.add_scaled(&(&da[i] * &db[j]), t);
            }
        }
    }
    Ok(out)
}

pub fn poisson_bracket(
    theta: &[Vec<Rational>],
    a: &PoissonFunctionClass,
    b: &PoissonFunctionClass,
) -> Result<PoissonFunctionClass> {
    Ok(PoissonFunctionClass::new(poisson_bracket_raw(theta, &a.0, &b.0)?))
}

/// `(1/24) θ^{i₁j₁}θ^{i₂j₂}θ^{i₃j₃} ∂_{i₁i₂i₃}a ∂_{j₁j₂j₃}b`, unprojected.
pub fn vey_raw(theta: &[Vec<Rational>], a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
    check_theta(theta, &[a.dim(), b.dim()])?;
    let d = theta.len();
    // (Σ θ^{ij} e_i ⊗ e_j)^3 as multi-index pairs
    let zero = MultiIndex::zero(d);
    let mut power = std::collections::BTreeMap::new();
    power.insert((zero.clone(), zero), Rational::one());
    for _ in 0..3 {
        let mut next = std::collections::BTreeMap::new();
        for ((p, q), c) in &power {
            for (i, row) in theta.iter().enumerate() {
                for (j, t) in row.iter().enumerate() {
                    if t.is_zero() {
                        continue;
                    }
                    let key = (p.add(&MultiIndex::unit(d, i)), q.add(&MultiIndex::unit(d, j)));
                    *next.entry(key).or_insert_with(Rational::zero) += c * t;
                }
            }
        }
        power = next;
    }
    let mut out = MultiPoly::zero(d);
    for ((p, q), c) in &power {
        if c.is_zero() {
            continue;
        }
        let (x, y) = (a.derive(p), b.derive(q));
        if !x.is_zero() && !y.is_zero() {
            out.add_scaled(&(&x * &y), &(c * rat(1, 24)));
        }
    }
    Ok(out)
}

pub fn vey_cocycle(
    theta: &[Vec<Rational>],
    a: &PoissonFunctionClass,
    b: &PoissonFunctionClass,
) -> Result<PoissonFunctionClass> {
    Ok(PoissonFunctionClass::new(vey_raw(theta, &a.0, &b.0)?))
}

/// The planar form with `{a,b} = a_x b_y − a_y b_x`:
/// `V = (1/24)(a_xxx b_yyy − 3 a_xxy b_xyy + 3 a_xyy b_xxy − a_yyy b_xxx)`.
pub fn vey_planar(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
    if a.dim() != 2 || b.dim() != 2 {
        return Err(AlgError::DimensionMismatch { left: 2, right: if a.dim() != 2 { a.dim() } else { b.dim() } });
    }
    let m = |i: u32, j: u32| MultiIndex::new(vec![i, j]);
    let terms = [(1, m(3, 0), m(0, 3)), (-3, m(2, 1), m(1, 2)), (3, m(1, 2), m(2, 1)), (-1, m(0, 3), m(3, 0))];
    let mut out = MultiPoly::zero(2);
    for (c, p, q) in terms {
        out.add_scaled(&(&a.derive(&p) * &b.derive(&q)), &rat(c, 24));
    }
    Ok(out)
}

/// `{a,V(b,c)} − {b,V(a,c)} + {c,V(a,b)} − V({a,b},c) + V({a,c},b) − V({b,c},a)` in `A/𝕂`.
pub fn ce2_cocycle_defect(
    theta: &[Vec<Rational>],
    a: &PoissonFunctionClass,
    b: &PoissonFunctionClass,
    c: &PoissonFunctionClass,
) -> Result<PoissonFunctionClass> {
    let br = |x: &PoissonFunctionClass, y: &PoissonFunctionClass| poisson_bracket(theta, x, y);
    let v = |x: &PoissonFunctionClass, y: &PoissonFunctionClass| vey_cocycle(theta, x, y);
    let terms = [
        br(a, &v(b, c)?)?,
        br(b, &v(a, c)?)?,
        br(c, &v(a, b)?)?,
        v(&br(a, b)?, c)?,
        v(&br(a, c)?, b)?,
        v(&br(b, c)?, a)?,
    ];
    let mut out = MultiPoly::zero(theta.len());
    for (t, s) in terms.iter().zip([1, -1, 1, -1, 1, -1]) {
        out.add_scaled(t.rep(), &rat(s, 1));
    }
    Ok(PoissonFunctionClass::new(out))
}
