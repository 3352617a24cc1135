//! DG Lie algebras through a small capability trait: Maurer–Cartan
//! elements, twisting, the gauge action and the Chevalley–Eilenberg
//! coderivation.
//!
//! Two concrete instances: Hochschild cochains `C^{•+1}(A)` with
//! `d = [μ, ·]_G` and the bracket `[,]_G`, and polyvector fields `T^{•+1}_poly`
//! with `d = 0` and the Schouten–Nijenhuis bracket. Degrees are Lie degrees
//! (arity − 1, polyvector degree − 1).

mod ce;
mod mc;

pub use ce::{ce_coderivation, ce_coproduct, ce_tensor_coderivation, ce_word, CeBasis, CeSum, CeTensor, CeWord, DEFAULT_MAX_WORD};
pub use mc::{bch, gauge_action, mc_defect, twist_differential, GaugeElement, McElement};

use std::fmt::Debug;

use crate::error::{AlgError, Result};
use crate::exactalg::{HbarSeries, Linear, MultiIndex, Rational};
use crate::hochschild::PolyDiffCochain;
use crate::polyvec::PolyVector;

pub trait Dgla {
    type Elem: Linear + PartialEq + Debug;

    fn degree(&self, x: &Self::Elem) -> i64;
    fn zero(&self, degree: i64) -> Result<Self::Elem>;
    fn differential(&self, x: &Self::Elem) -> Result<Self::Elem>;
    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
}

fn shape_of(degree: i64) -> Result<usize> {
    usize::try_from(degree + 1).map_err(|_| AlgError::Grading(format!("no elements of degree {degree}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HochschildDgla {
    pub dim: usize,
}

impl Dgla for HochschildDgla {
    type Elem = PolyDiffCochain;

    fn degree(&self, x: &PolyDiffCochain) -> i64 {
        x.lie_degree()
    }

    fn zero(&self, degree: i64) -> Result<PolyDiffCochain> {
        Ok(PolyDiffCochain::zero(self.dim, shape_of(degree)?))
    }

    fn differential(&self, x: &PolyDiffCochain) -> Result<PolyDiffCochain> {
        PolyDiffCochain::mu(self.dim).gerstenhaber_bracket(x)
    }

    fn bracket(&self, a: &PolyDiffCochain, b: &PolyDiffCochain) -> Result<PolyDiffCochain> {
        a.gerstenhaber_bracket(b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PolyvectorGla {
    pub dim: usize,
}

impl Dgla for PolyvectorGla {
    type Elem = PolyVector;

    fn degree(&self, x: &PolyVector) -> i64 {
        x.lie_degree()
    }

    fn zero(&self, degree: i64) -> Result<PolyVector> {
        Ok(PolyVector::zero(self.dim, shape_of(degree)?))
    }

    fn differential(&self, x: &PolyVector) -> Result<PolyVector> {
        let deg = self.degree(x) + 1;
        self.zero(deg)
    }

    fn bracket(&self, a: &PolyVector, b: &PolyVector) -> Result<PolyVector> {
        if a.degree() + b.degree() == 0 {
            return Err(AlgError::Grading("bracket of two functions".into()));
        }
        a.schouten(b)
    }
}

/// `𝓛[[ħ]]` truncated at `ħ^order`; operations extend ħ-linearly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Formal<D> {
    pub base: D,
    pub order: usize,
}

impl<D: Dgla> Formal<D> {
    pub fn new(base: D, order: usize) -> Self {
        Formal { base, order }
    }

    fn check(&self, x: &HbarSeries<D::Elem>) -> Result<()> {
        if x.order() != self.order {
            return Err(AlgError::OrderMismatch { left: self.order, right: x.order() });
        }
        Ok(())
    }
}

impl<D: Dgla> Dgla for Formal<D> {
    type Elem = HbarSeries<D::Elem>;

    fn degree(&self, x: &Self::Elem) -> i64 {
        self.base.degree(x.coeff(0))
    }

    fn zero(&self, degree: i64) -> Result<Self::Elem> {
        Ok(HbarSeries::constant(self.base.zero(degree)?, self.order))
    }

    fn differential(&self, x: &Self::Elem) -> Result<Self::Elem> {
        self.check(x)?;
        let coeffs = x.coeffs().iter().map(|c| self.base.differential(c)).collect::<Result<_>>()?;
        Ok(HbarSeries::new(coeffs))
    }

    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.check(a)?;
        self.check(b)?;
        let n = self.order;
        let z = self.base.zero(self.degree(a) + self.degree(b))?;
        let mut out = vec![z; n + 1];
        for i in 0..=n {
            if a.coeff(i).is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if b.coeff(j).is_zero() {
                    continue;
                }
                let t = self.base.bracket(a.coeff(i), b.coeff(j))?;
                out[i + j] = out[i + j].add(&t);
            }
        }
        Ok(HbarSeries::new(out))
    }
}

/// The same bracket with differential `d + [α, ·]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Twisted<D: Dgla> {
    pub base: D,
    pub alpha: D::Elem,
}

impl<D: Dgla> Dgla for Twisted<D> {
    type Elem = D::Elem;

    fn degree(&self, x: &Self::Elem) -> i64 {
        self.base.degree(x)
    }

    fn zero(&self, degree: i64) -> Result<Self::Elem> {
        self.base.zero(degree)
    }

    fn differential(&self, x: &Self::Elem) -> Result<Self::Elem> {
        let d = self.base.differential(x)?;
        Ok(d.add(&self.base.bracket(&self.alpha, x)?))
    }

    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        self.base.bracket(a, b)
    }
}

impl CeBasis for HochschildDgla {
    type Atom = (Vec<MultiIndex>, MultiIndex);

    fn atoms(&self, x: &PolyDiffCochain) -> Vec<(Self::Atom, Rational)> {
        let mut out = Vec::new();
        for (words, c) in x.terms() {
            for (m, r) in c.terms() {
                out.push(((words.clone(), m.clone()), r.clone()));
            }
        }
        out
    }

    fn atom_elem(&self, a: &Self::Atom) -> PolyDiffCochain {
        let f = crate::exactalg::MultiPoly::monomial(a.1.clone(), num_traits::One::one());
        PolyDiffCochain::term(f, a.0.clone()).expect("atom shape")
    }

    fn atom_degree(&self, a: &Self::Atom) -> i64 {
        a.0.len() as i64 - 1
    }
}

impl CeBasis for PolyvectorGla {
    type Atom = (Vec<usize>, MultiIndex);

    fn atoms(&self, x: &PolyVector) -> Vec<(Self::Atom, Rational)> {
        let mut out = Vec::new();
        for (axes, c) in x.terms() {
            for (m, r) in c.terms() {
                out.push(((axes.clone(), m.clone()), r.clone()));
            }
        }
        out
    }

    fn atom_elem(&self, a: &Self::Atom) -> PolyVector {
        let f = crate::exactalg::MultiPoly::monomial(a.1.clone(), num_traits::One::one());
        PolyVector::term(f, a.0.clone()).expect("atom shape")
    }

    fn atom_degree(&self, a: &Self::Atom) -> i64 {
        a.0.len() as i64 - 1
    }
}
