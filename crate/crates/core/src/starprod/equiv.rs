//! Intertwiners `T = Id + ħT₁ + ħ²T₂ + …` acting on star products by
//! push-forward: `T(a * b) = T(a) *̃ T(b)`.
//!
//! Orientation: for a gauge element `ξ`, `exp(ξ)·Π` (gauge action) is the
//! star product obtained by pushing `*` forward along `T = exp(−ξ)`.

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::StarProduct;
use crate::error::{AlgError, Result};
use crate::exactalg::rational::factorial;
use crate::exactalg::{HbarSeries, Linear, Rational};
use crate::hochschild::{CochainJson, PolyDiffCochain};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceSeries {
    dim: usize,
    t: HbarSeries<PolyDiffCochain>,
}

/// Truncated composition `(S∘T)_n = Σ_{i+j=n} S_i ∘ T_j` of arity-1 series.
fn compose(s: &HbarSeries<PolyDiffCochain>, t: &HbarSeries<PolyDiffCochain>, dim: usize) -> HbarSeries<PolyDiffCochain> {
    s.convolve(t, PolyDiffCochain::zero(dim, 1), |a, b| a.insert(0, b).expect("arity 1"))
        .expect("orders match")
}

impl EquivalenceSeries {
    pub fn new(t: HbarSeries<PolyDiffCochain>) -> Result<Self> {
        let dim = t.coeff(0).dim();
        if let Some(c) = t.coeffs().iter().find(|c| c.arity() != 1) {
            return Err(AlgError::ArityMismatch { expected: 1, got: c.arity() });
        }
        if t.coeff(0) != &PolyDiffCochain::identity(dim) {
            return Err(AlgError::Grading("an intertwiner must start from the identity".into()));
        }
        Ok(EquivalenceSeries { dim, t })
    }

    pub fn identity(dim: usize, order: usize) -> Self {
        let mut c = vec![PolyDiffCochain::zero(dim, 1); order + 1];
        c[0] = PolyDiffCochain::identity(dim);
        EquivalenceSeries { dim, t: HbarSeries::new(c) }
    }

    /// `exp(ξ) = Σ ξ^{∘n}/n!` for an arity-1 series with zero `ħ⁰` term.
    pub fn exp(xi: &HbarSeries<PolyDiffCochain>) -> Result<Self> {
        if !xi.coeff(0).is_zero() {
            return Err(AlgError::NonzeroConstantTerm);
        }
        let dim = xi.coeff(0).dim();
        let n = xi.order();
        let id = Self::identity(dim, n);
        let mut acc = id.t.clone();
        let mut power = id.t;
        for k in 1..=n {
            power = compose(&power, xi, dim);
            acc = acc.add(&power.scale(&(Rational::one() / factorial(k as u32))));
        }
        Self::new(acc)
    }

    pub fn series(&self) -> &HbarSeries<PolyDiffCochain> {
        &self.t
    }

    pub fn order(&self) -> usize {
        self.t.order()
    }

    /// `self ∘ other` (apply `other` first).
    pub fn then_after(&self, other: &Self) -> Result<Self> {
        if self.order() != other.order() {
            return Err(AlgError::OrderMismatch { left: self.order(), right: other.order() });
        }
        Ok(EquivalenceSeries { dim: self.dim, t: compose(&self.t, &other.t, self.dim) })
    }

    /// Neumann series `Σ (Id − T)^n`, finite because `Id − T = O(ħ)`.
    pub fn inverse(&self) -> Self {
        let n = self.order();
        let id = Self::identity(self.dim, n).t;
        let x = id.sub(&self.t);
        let mut acc = id.clone();
        let mut power = id;
        for _ in 1..=n {
            power = compose(&power, &x, self.dim);
            acc = acc.add(&power);
        }
        EquivalenceSeries { dim: self.dim, t: acc }
    }

    pub fn to_json(&self) -> EquivalenceJson {
        EquivalenceJson {
            dim: self.dim,
            t: self.t.coeffs().iter().map(PolyDiffCochain::to_json).collect(),
        }
    }
}

/// `*̃` with `T(a * b) = T(a) *̃ T(b)`, i.e. `m̃ = T ∘ m ∘ (T⁻¹ ⊗ T⁻¹)`.
pub fn apply_equivalence(t: &EquivalenceSeries, s: &StarProduct) -> Result<StarProduct> {
    let n = s.order();
    if t.order() != n {
        return Err(AlgError::OrderMismatch { left: n, right: t.order() });
    }
    if t.dim != s.dim() {
        return Err(AlgError::DimensionMismatch { left: t.dim, right: s.dim() });
    }
    let u = t.inverse();
    let m = s.full();
    let zero2 = PolyDiffCochain::zero(s.dim(), 2);
    // m ∘ (U ⊗ 1), then ∘ (1 ⊗ U), then T ∘
    let mu = m.convolve(&u.t, zero2.clone(), |a, b| a.insert(0, b).expect("arity"))?;
    let muu = mu.convolve(&u.t, zero2.clone(), |a, b| a.insert(1, b).expect("arity"))?;
    let tm = t.t.convolve(&muu, zero2, |a, b| a.insert(0, b).expect("arity"))?;
    let mut pi = tm.into_coeffs();
    pi[0] = pi[0].try_sub(&PolyDiffCochain::mu(s.dim()))?;
    StarProduct::new(HbarSeries::new(pi))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceJson {
    pub dim: usize,
    pub t: Vec<CochainJson>,
}
