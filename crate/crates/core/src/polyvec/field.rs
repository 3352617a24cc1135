//! Polyvector fields `f · ∂_{i_1} ∧ … ∧ ∂_{i_k}` and the Schouten–Nijenhuis bracket.

use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::alt::Alternating;
use crate::error::{AlgError, Result};
use crate::exactalg::rational::{factorial, sign};
use crate::exactalg::{MultiIndex, MultiPoly, Rational};
use crate::hochschild::PolyDiffCochain;
use crate::sample::permutations;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyVector(pub(crate) Alternating);

impl PolyVector {
    pub fn zero(dim: usize, degree: usize) -> Self {
        PolyVector(Alternating::zero(dim, degree))
    }

    pub fn function(f: MultiPoly) -> Self {
        let mut a = Alternating::zero(f.dim(), 0);
        a.add_sorted(vec![], &f, &Rational::one());
        PolyVector(a)
    }

    /// `f · ∂_{axes[0]} ∧ …` (0-based axes, any order).
    pub fn term(f: MultiPoly, axes: Vec<usize>) -> Result<Self> {
        let mut a = Alternating::zero(f.dim(), axes.len());
        a.add_term(axes, &f, &Rational::one())?;
        Ok(PolyVector(a))
    }

    /// The constant field `∂_{axis}`.
    pub fn partial(dim: usize, axis: usize) -> Self {
        Self::term(MultiPoly::one(dim), vec![axis]).expect("axis in range")
    }

    /// `Σ_{i<j} θ^{ij} ∂_i ∧ ∂_j` for an antisymmetric matrix.
    pub fn constant_bivector(theta: &[Vec<Rational>]) -> Result<Self> {
        let d = theta.len();
        if theta.iter().any(|r| r.len() != d) {
            return Err(AlgError::InvalidBivector("matrix is not square".into()));
        }
        let mut out = Self::zero(d, 2);
        for i in 0..d {
            for j in 0..d {
                if theta[i][j] != -theta[j][i].clone() {
                    return Err(AlgError::InvalidBivector(format!(
                        "entries ({},{}) and ({},{}) are not opposite",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
                if i < j {
                    out.0.add_sorted(vec![i, j], &MultiPoly::one(d), &theta[i][j]);
                }
            }
        }
        Ok(out)
    }

    pub fn parse(text: &str, dim: usize) -> Result<Self> {
        Ok(PolyVector(Alternating::parse(text, dim, "d")?))
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// Degree in the shifted Lie algebra `T^{•+1}_poly`.
    pub fn lie_degree(&self) -> i64 {
        self.0.degree as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.0.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &MultiPoly)> {
        self.0.terms.iter()
    }

    pub fn coeff(&self, axes: &[usize]) -> MultiPoly {
        self.0
            .terms
            .get(axes)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(self.dim()))
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.0.check_shape(&other.0)?;
        let mut out = self.clone();
        out.0.add_assign_scaled(&other.0, &Rational::one());
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.0.check_shape(&other.0)?;
        let mut out = self.clone();
        out.0.add_assign_scaled(&other.0, &-Rational::one());
        Ok(out)
    }

    pub fn add_assign_scaled(&mut self, other: &Self, c: &Rational) {
        self.0.add_assign_scaled(&other.0, c);
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PolyVector(self.0.scale(c))
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        Ok(PolyVector(self.0.wedge(&other.0)?))
    }

    /// Schouten–Nijenhuis bracket of degree `k_a + k_b − 1`.
    pub fn schouten(&self, other: &Self) -> Result<Self> {
        self.0.check_dim(&other.0)?;
        let (ka, kb) = (self.degree(), other.degree());
        let dim = self.dim();
        if ka + kb == 0 {
            return Ok(Self::zero(dim, 0));
        }
        let mut out = Self::zero(dim, ka + kb - 1);
        for (ia, fa) in self.terms() {
            for (ib, fb) in other.terms() {
                let t = bracket_terms(fa, ia, fb, ib);
                out.add_assign_scaled(&t, &Rational::one());
            }
        }
        Ok(out)
    }

    /// `(1/k!) Σ_σ sgn σ · f · ∂_{i_σ1} ⊗ … ⊗ ∂_{i_σk}`.
    pub fn hkr(&self) -> PolyDiffCochain {
        let (dim, k) = (self.dim(), self.degree());
        let mut out = PolyDiffCochain::zero(dim, k);
        let norm = Rational::one() / factorial(k as u32);
        let perms = permutations(k);
        for (axes, f) in self.terms() {
            for (perm, s) in &perms {
                let words = perm.iter().map(|&p| MultiIndex::unit(dim, axes[p])).collect();
                let mut t = PolyDiffCochain::term(f.clone(), words).expect("shape");
                t = t.scale(&(&norm * Rational::from_integer((*s).into())));
                out.add_assign_scaled(&t, &Rational::one());
            }
        }
        out
    }

    pub fn to_json(&self) -> AltJson {
        to_json(&self.0)
    }

    pub fn from_json(j: &AltJson) -> Result<Self> {
        Ok(PolyVector(from_json(j)?))
    }
}

fn single(dim: usize, f: MultiPoly, axes: Vec<usize>) -> PolyVector {
    let mut a = Alternating::zero(dim, axes.len());
    a.add_sorted(axes, &f, &Rational::one());
    PolyVector(a)
}

/// `[g, f ξ_I] = −f Σ_r (−1)^{r−1} (∂_{i_r} g) ξ_{I∖r}` for a function `g`.
fn function_with(g: &MultiPoly, f: &MultiPoly, axes: &[usize]) -> PolyVector {
    let dim = g.dim();
    let mut out = PolyVector::zero(dim, axes.len().saturating_sub(1));
    for r in 0..axes.len() {
        let dg = g.partial(axes[r]).expect("axis in range");
        if dg.is_zero() {
            continue;
        }
        let mut rest = axes.to_vec();
        rest.remove(r);
        out.0.add_sorted(rest, &(&dg * f), &-sign(r as i64));
    }
    out
}

/// `[f ξ_I, g ξ_J]` by the Leibniz rule in the second slot.
fn bracket_terms(fa: &MultiPoly, ia: &[usize], fb: &MultiPoly, ib: &[usize]) -> PolyVector {
    let dim = fa.dim();
    let ka = ia.len();
    if ib.is_empty() {
        if ka == 0 {
            return PolyVector::zero(dim, 0);
        }
        // [a, g] = (−1)^{|a|} [g, a]
        return function_with(fb, fa, ia).scale(&sign(ka as i64));
    }
    if ka == 0 {
        return function_with(fa, fb, ib);
    }
    // b = ξ_j ∧ rest:  [a, b] = [a, ξ_j] ∧ rest + (−1)^{|a|+1} ξ_j ∧ [a, rest],  [a, ξ_j] = −[ξ_j, a]
    let j = ib[0];
    let rest = single(dim, fb.clone(), ib[1..].to_vec());
    let xi = PolyVector::partial(dim, j);
    let a_xi = single(dim, fa.partial(j).expect("axis in range"), ia.to_vec()).scale(&-Rational::one());
    let mut out = a_xi.wedge(&rest).expect("dim");
    let inner = bracket_terms(fa, ia, fb, &ib[1..]);
    let t2 = xi.wedge(&inner).expect("dim");
    if out.degree() == t2.degree() {
        out.add_assign_scaled(&t2, &sign(ka as i64 + 1));
    } else {
        out = t2.scale(&sign(ka as i64 + 1));
    }
    out
}

impl crate::exactalg::Linear for PolyVector {
    fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("polyvector shape mismatch")
    }
    fn scale(&self, c: &Rational) -> Self {
        PolyVector::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        self.0.terms.is_empty()
    }
}

impl fmt::Display for PolyVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_with(f, "d")
    }
}

/// JSON mirror shared by polyvectors and forms; axes are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AltJson {
    pub dim: usize,
    pub degree: usize,
    pub terms: Vec<AltTermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AltTermJson {
    pub coeff: String,
    pub axes: Vec<usize>,
}

pub(crate) fn to_json(a: &Alternating) -> AltJson {
    AltJson {
        dim: a.dim,
        degree: a.degree,
        terms: a
            .terms
            .iter()
            .map(|(axes, c)| AltTermJson {
                coeff: c.to_string(),
                axes: axes.iter().map(|x| x + 1).collect(),
            })
            .collect(),
    }
}

pub(crate) fn from_json(j: &AltJson) -> Result<Alternating> {
    let mut a = Alternating::zero(j.dim, j.degree);
    for t in &j.terms {
        if let Some(&bad) = t.axes.iter().find(|&&x| x == 0 || x > j.dim) {
            return Err(AlgError::AxisOutOfRange { axis: bad, dim: j.dim });
        }
        let f = MultiPoly::parse(&t.coeff, j.dim)?;
        a.add_term(t.axes.iter().map(|x| x - 1).collect(), &f, &Rational::one())?;
    }
    Ok(a)
}
