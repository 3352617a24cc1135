//! Exterior forms `f · dx_{i_1} ∧ … ∧ dx_{i_p}`, contraction and the Cartan calculus.

use std::fmt;

use num_traits::One;

use super::alt::Alternating;
use super::field::{from_json, to_json, AltJson, PolyVector};
use crate::error::Result;
use crate::exactalg::rational::sign;
use crate::exactalg::{MultiPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtForm(pub(crate) Alternating);

impl ExtForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        ExtForm(Alternating::zero(dim, degree))
    }

    pub fn function(f: MultiPoly) -> Self {
        let mut a = Alternating::zero(f.dim(), 0);
        a.add_sorted(vec![], &f, &Rational::one());
        ExtForm(a)
    }

    pub fn term(f: MultiPoly, axes: Vec<usize>) -> Result<Self> {
        let mut a = Alternating::zero(f.dim(), axes.len());
        a.add_term(axes, &f, &Rational::one())?;
        Ok(ExtForm(a))
    }

    /// Parses `x1*dx1^dx2 + …`.
    pub fn parse(text: &str, dim: usize) -> Result<Self> {
        Ok(ExtForm(Alternating::parse(text, dim, "dx")?))
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn is_zero(&self) -> bool {
        self.0.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &MultiPoly)> {
        self.0.terms.iter()
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
        ExtForm(self.0.scale(c))
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        Ok(ExtForm(self.0.wedge(&other.0)?))
    }

    /// `d(f dx_I) = Σ_j ∂_j f dx_j ∧ dx_I`.
    pub fn d(&self) -> Self {
        let dim = self.dim();
        let mut out = Self::zero(dim, self.degree() + 1);
        for (axes, f) in self.terms() {
            for j in 0..dim {
                let df = f.partial(j).expect("axis in range");
                let mut a = vec![j];
                a.extend(axes.iter().copied());
                out.0.add_term(a, &df, &Rational::one()).expect("shape");
            }
        }
        out
    }

    /// `i_{∂_j}(dx_{i_1} ∧ … ∧ dx_{i_p}) = Σ_r (−1)^{r−1} δ_{i_r j} (slot r removed)`.
    fn contract_axis(&self, j: usize) -> Self {
        let mut out = Self::zero(self.dim(), self.degree().saturating_sub(1));
        for (axes, f) in self.terms() {
            if let Some(r) = axes.iter().position(|&a| a == j) {
                let mut rest = axes.clone();
                rest.remove(r);
                out.0.add_sorted(rest, f, &sign(r as i64));
            }
        }
        out
    }

    fn mul_function(&self, g: &MultiPoly) -> Self {
        let mut out = Self::zero(self.dim(), self.degree());
        for (axes, f) in self.terms() {
            out.0.add_sorted(axes.clone(), &(f * g), &Rational::one());
        }
        out
    }

    /// `i_γ ω` with `i_{γ_1 ∧ γ_2} = i_{γ_1} ∘ i_{γ_2}`; zero when `k > p`.
    pub fn contraction(&self, gamma: &PolyVector) -> Result<Self> {
        self.0.check_dim(&gamma.0)?;
        let (k, p) = (gamma.degree(), self.degree());
        if k > p {
            return Ok(Self::zero(self.dim(), 0));
        }
        let mut out = Self::zero(self.dim(), p - k);
        for (axes, g) in gamma.terms() {
            let mut w = self.clone();
            for &j in axes.iter().rev() {
                w = w.contract_axis(j);
            }
            out.add_assign_scaled(&w.mul_function(g), &Rational::one());
        }
        Ok(out)
    }

    /// `l_γ = d i_γ − (−1)^{|γ|} i_γ d`.
    pub fn lie_derivative(&self, gamma: &PolyVector) -> Result<Self> {
        let k = gamma.degree();
        let a = self.contraction(gamma)?.d();
        let b = self.d().contraction(gamma)?;
        let target = (self.degree() + 1).checked_sub(k);
        let Some(target) = target else {
            return Ok(Self::zero(self.dim(), 0));
        };
        let mut out = Self::zero(self.dim(), target);
        if a.degree() == target {
            out.add_assign_scaled(&a, &Rational::one());
        }
        if b.degree() == target {
            out.add_assign_scaled(&b, &-sign(k as i64));
        }
        Ok(out)
    }

    pub fn to_json(&self) -> AltJson {
        to_json(&self.0)
    }

    pub fn from_json(j: &AltJson) -> Result<Self> {
        Ok(ExtForm(from_json(j)?))
    }
}

impl crate::exactalg::Linear for ExtForm {
    fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("form shape mismatch")
    }
    fn scale(&self, c: &Rational) -> Self {
        ExtForm::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        self.0.terms.is_empty()
    }
}

impl fmt::Display for ExtForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_with(f, "dx")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fm(s: &str) -> ExtForm {
        ExtForm::parse(s, 2).unwrap()
    }

    fn pv(s: &str) -> PolyVector {
        PolyVector::parse(s, 2).unwrap()
    }

    #[test]
    fn contraction_examples() {
        let w = fm("x2*dx1^dx2");
        assert_eq!(w.contraction(&pv("x1 + 1")).unwrap(), fm("(x1*x2 + x2)*dx1^dx2"));
        assert_eq!(fm("dx1^dx2").contraction(&pv("d1")).unwrap(), fm("dx2"));
        assert_eq!(fm("dx1^dx2").contraction(&pv("d1^d2")).unwrap(), fm("-1"));
        assert!(fm("dx1").contraction(&pv("d1^d2")).unwrap().is_zero());
    }

    #[test]
    fn de_rham_examples() {
        assert_eq!(fm("x1^2").d(), fm("2*x1*dx1"));
        assert_eq!(fm("x1*dx2").d(), fm("dx1^dx2"));
        assert!(fm("x1*x2").d().d().is_zero());
    }

    #[test]
    fn lie_derivative_examples() {
        assert_eq!(fm("x1^2").lie_derivative(&pv("d1")).unwrap(), fm("2*x1"));
        assert_eq!(fm("x1*dx2").lie_derivative(&pv("d1")).unwrap(), fm("dx2"));
        assert!(ExtForm::zero(2, 1).lie_derivative(&pv("x1*d1^d2")).unwrap().is_zero());
    }
}
