//! Star products `a * b = ab + Σ ħ^k Π_k(a, b)` with bidifferential `Π_k`,
//! the Moyal–Weyl product, intertwiners and formal Poisson structures.
//!
//! `Π` is an MC element of the Hochschild DGLA exactly when `*` is
//! associative: with `m = μ + Π`, `∂Π + ½[Π,Π]_G = ½[m,m]_G = m∘₀m − m∘₁m`,
//! which is the associator `(a*b)*c − a*(b*c)` on the nose.

mod equiv;

pub use equiv::{apply_equivalence, EquivalenceJson, EquivalenceSeries};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::dgla::{Dgla, Formal, HochschildDgla, McElement, PolyvectorGla};
use crate::error::{AlgError, Result};
use crate::exactalg::rational::factorial;
use crate::exactalg::{HbarSeries, MultiIndex, MultiPoly, Rational};
use crate::hochschild::{CochainJson, PolyDiffCochain};
use crate::polyvec::{AltJson, PolyVector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarProduct {
    dim: usize,
    pi: HbarSeries<PolyDiffCochain>,
}

impl StarProduct {
    /// `Π` must consist of arity-2 cochains with vanishing `ħ⁰` term.
    pub fn new(pi: HbarSeries<PolyDiffCochain>) -> Result<Self> {
        let dim = pi.coeff(0).dim();
        for c in pi.coeffs() {
            if c.arity() != 2 {
                return Err(AlgError::ArityMismatch { expected: 2, got: c.arity() });
            }
            if c.dim() != dim {
                return Err(AlgError::DimensionMismatch { left: dim, right: c.dim() });
            }
        }
        if !pi.coeff(0).is_zero() {
            return Err(AlgError::NonzeroConstantTerm);
        }
        Ok(StarProduct { dim, pi })
    }

    /// The undeformed product.
    pub fn commutative(dim: usize, order: usize) -> Self {
        StarProduct { dim, pi: HbarSeries::constant(PolyDiffCochain::zero(dim, 2), order) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.pi.order()
    }

    pub fn pi(&self) -> &HbarSeries<PolyDiffCochain> {
        &self.pi
    }

    /// `m = μ + Π`.
    pub fn full(&self) -> HbarSeries<PolyDiffCochain> {
        let mut m = self.pi.clone().into_coeffs();
        m[0] = PolyDiffCochain::mu(self.dim);
        HbarSeries::new(m)
    }

    pub fn to_json(&self) -> StarJson {
        StarJson {
            dim: self.dim,
            order: self.order(),
            pi: self.pi.coeffs().iter().map(PolyDiffCochain::to_json).collect(),
        }
    }

    pub fn from_json(j: &StarJson) -> Result<Self> {
        if j.pi.len() != j.order + 1 {
            return Err(AlgError::OrderMismatch { left: j.order, right: j.pi.len().saturating_sub(1) });
        }
        let coeffs = j.pi.iter().map(PolyDiffCochain::from_json).collect::<Result<Vec<_>>>()?;
        let s = Self::new(HbarSeries::new(coeffs))?;
        if s.dim != j.dim {
            return Err(AlgError::DimensionMismatch { left: j.dim, right: s.dim });
        }
        Ok(s)
    }
}

/// A star product as the list of its per-order cochains `Π_0 = 0, Π_1, …`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarJson {
    pub dim: usize,
    pub order: usize,
    pub pi: Vec<CochainJson>,
}

/// A series of bivectors `π = Σ_{k≥1} ħ^k π_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalPoisson {
    pi: HbarSeries<PolyVector>,
}

impl FormalPoisson {
    pub fn new(pi: HbarSeries<PolyVector>) -> Result<Self> {
        if let Some(c) = pi.coeffs().iter().find(|c| c.degree() != 2) {
            return Err(AlgError::InvalidBivector(format!("coefficient of degree {}", c.degree())));
        }
        if !pi.coeff(0).is_zero() {
            return Err(AlgError::NonzeroConstantTerm);
        }
        Ok(FormalPoisson { pi })
    }

    pub fn pi(&self) -> &HbarSeries<PolyVector> {
        &self.pi
    }

    pub fn order(&self) -> usize {
        self.pi.order()
    }

    pub fn to_json(&self) -> Vec<AltJson> {
        self.pi.coeffs().iter().map(PolyVector::to_json).collect()
    }
}

/// `Π_k = (1/k!)(1/2^k) θ^{i₁j₁}⋯θ^{i_kj_k} ∂_{i₁⋯i_k} ⊗ ∂_{j₁⋯j_k}`.
pub fn moyal_weyl(theta: &[Vec<Rational>], order: usize) -> Result<StarProduct> {
    PolyVector::constant_bivector(theta)?;
    let dim = theta.len();
    let zero = MultiIndex::zero(dim);
    let mut power: Vec<((MultiIndex, MultiIndex), Rational)> = vec![((zero.clone(), zero), Rational::one())];
    let mut pi = vec![PolyDiffCochain::zero(dim, 2)];
    for k in 1..=order {
        let mut next = std::collections::BTreeMap::new();
        for ((a, b), c) in &power {
            for (i, row) in theta.iter().enumerate() {
                for (j, t) in row.iter().enumerate() {
                    if t.is_zero() {
                        continue;
                    }
                    let key = (a.add(&MultiIndex::unit(dim, i)), b.add(&MultiIndex::unit(dim, j)));
                    *next.entry(key).or_insert_with(Rational::zero) += c * t;
                }
            }
        }
        power = next.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let norm = Rational::one() / (factorial(k as u32) * Rational::from_integer((1i64 << k).into()));
        let mut pk = PolyDiffCochain::zero(dim, 2);
        for ((a, b), c) in &power {
            let t = PolyDiffCochain::words(dim, vec![a.clone(), b.clone()]);
            pk.add_assign_scaled(&t, &(c * &norm));
        }
        pi.push(pk);
    }
    StarProduct::new(HbarSeries::new(pi))
}

/// The canonical `θ` on `ℚ^{2n}`: `θ^{i,i+n} = 1`.
pub fn canonical_theta(dim: usize) -> Result<Vec<Vec<Rational>>> {
    if dim % 2 != 0 || dim == 0 {
        return Err(AlgError::InvalidBivector(format!("canonical θ needs even d > 0, got {dim}")));
    }
    let n = dim / 2;
    let mut t = vec![vec![Rational::zero(); dim]; dim];
    for i in 0..n {
        t[i][i + n] = Rational::one();
        t[i + n][i] = -Rational::one();
    }
    Ok(t)
}

/// `(a * b)_n = Σ_{i+j+k=n} Π_k(a_i, b_j)` with `Π_0 = μ`.
pub fn star_multiply(
    s: &StarProduct,
    a: &HbarSeries<MultiPoly>,
    b: &HbarSeries<MultiPoly>,
) -> Result<HbarSeries<MultiPoly>> {
    let n = s.order();
    for x in [a, b] {
        if x.order() != n {
            return Err(AlgError::OrderMismatch { left: n, right: x.order() });
        }
        if x.coeff(0).dim() != s.dim {
            return Err(AlgError::DimensionMismatch { left: s.dim, right: x.coeff(0).dim() });
        }
    }
    let m = s.full();
    let mut out = vec![MultiPoly::zero(s.dim); n + 1];
    for k in 0..=n {
        if m.coeff(k).is_zero() {
            continue;
        }
        for i in 0..=(n - k) {
            for j in 0..=(n - k - i) {
                let v = m.coeff(k).apply(&[a.coeff(i).clone(), b.coeff(j).clone()])?;
                out[i + j + k] = &out[i + j + k] + &v;
            }
        }
    }
    Ok(HbarSeries::new(out))
}

/// `(a, b, c) ↦ (a*b)*c − a*(b*c)` as arity-3 cochains, order by order.
pub fn associativity_defect(s: &StarProduct) -> HbarSeries<PolyDiffCochain> {
    let n = s.order();
    let m = s.full();
    let mut out = vec![PolyDiffCochain::zero(s.dim, 3); n + 1];
    for k in 0..=n {
        for l in 0..=(n - k) {
            let (mk, ml) = (m.coeff(k), m.coeff(l));
            if mk.is_zero() || ml.is_zero() {
                continue;
            }
            let outer = mk.insert(0, ml).expect("arity 2");
            let inner = mk.insert(1, ml).expect("arity 2");
            out[k + l].add_assign_scaled(&outer, &Rational::one());
            out[k + l].add_assign_scaled(&inner, &-Rational::one());
        }
    }
    HbarSeries::new(out)
}

/// `* ↦ Π` as an MC candidate of the Hochschild DGLA.
pub fn mc_star_correspondence(s: &StarProduct) -> Result<McElement<HochschildDgla>> {
    McElement::new(&HochschildDgla { dim: s.dim }, s.pi.clone())
}

/// The inverse of [`mc_star_correspondence`].
pub fn star_of(alpha: &McElement<HochschildDgla>) -> Result<StarProduct> {
    StarProduct::new(alpha.value().clone())
}

/// `[a, b]_* = a*b − b*a` for functions `a, b`.
pub fn commutator_expansion(s: &StarProduct, a: &MultiPoly, b: &MultiPoly) -> Result<HbarSeries<MultiPoly>> {
    let n = s.order();
    let (sa, sb) = (HbarSeries::constant(a.clone(), n), HbarSeries::constant(b.clone(), n));
    star_multiply(s, &sa, &sb)?.try_sub(&star_multiply(s, &sb, &sa)?)
}

/// `[π, π]_SN`, truncated; zero iff `π` is a formal Poisson structure.
pub fn jacobi_check(p: &FormalPoisson) -> Result<HbarSeries<PolyVector>> {
    let dim = p.pi.coeff(0).dim();
    Formal::new(PolyvectorGla { dim }, p.order()).bracket(&p.pi, &p.pi)
}

/// `½ · (Π(a,b) − Π(b,a))` as a cochain: the antisymmetric part of an arity-2 cochain.
pub fn antisymmetric_part(p: &PolyDiffCochain) -> PolyDiffCochain {
    let mut swapped = PolyDiffCochain::zero(p.dim(), p.arity());
    for (words, c) in p.terms() {
        let w: Vec<MultiIndex> = words.iter().rev().cloned().collect();
        swapped.add_assign_scaled(&PolyDiffCochain::term(c.clone(), w).expect("shape"), &Rational::one());
    }
    let half = Rational::new(1.into(), 2.into());
    p.scale(&half).try_sub(&swapped.scale(&half)).expect("shape")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgla::mc_defect;
    use crate::exactalg::rational::{int, rat};

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s, 2).unwrap()
    }

    fn constant(f: MultiPoly, n: usize) -> HbarSeries<MultiPoly> {
        HbarSeries::constant(f, n)
    }

    #[test]
    fn moyal_examples() {
        let s = moyal_weyl(&canonical_theta(2).unwrap(), 4).unwrap();
        let xy = star_multiply(&s, &constant(p("x1"), 4), &constant(p("x2"), 4)).unwrap();
        assert_eq!(xy.coeffs()[..2], [p("x1*x2"), p("1/2")]);
        let yx = star_multiply(&s, &constant(p("x2"), 4), &constant(p("x1"), 4)).unwrap();
        assert_eq!(yx.coeffs()[..2], [p("x1*x2"), p("-1/2")]);
        let xx = star_multiply(&s, &constant(p("x1"), 4), &constant(p("x1"), 4)).unwrap();
        assert_eq!(xx, constant(p("x1^2"), 4));
        let sq = star_multiply(&s, &constant(p("x1^2"), 4), &constant(p("x2^2"), 4)).unwrap();
        assert_eq!(sq.coeffs()[..3], [p("x1^2*x2^2"), p("2*x1*x2"), p("1/2")]);
        assert!(sq.coeff(3).is_zero());
    }

    #[test]
    fn unit_and_commutative_product() {
        let s = moyal_weyl(&canonical_theta(2).unwrap(), 3).unwrap();
        let a = constant(p("x1^3*x2 + x2"), 3);
        assert_eq!(star_multiply(&s, &a, &constant(p("1"), 3)).unwrap(), a);
        let c = StarProduct::commutative(2, 3);
        let b = constant(p("x1 - x2^2"), 3);
        assert_eq!(star_multiply(&c, &a, &b).unwrap(), constant(p("(x1^3*x2 + x2)*(x1 - x2^2)"), 3));
        assert!(associativity_defect(&c).is_zero());
    }

    #[test]
    fn invalid_theta_is_rejected() {
        let bad = vec![vec![int(1), int(0)], vec![int(0), int(0)]];
        assert!(moyal_weyl(&bad, 2).is_err());
    }

    #[test]
    fn truncated_moyal_is_not_associative() {
        let full = moyal_weyl(&canonical_theta(2).unwrap(), 2).unwrap();
        let mut pi = full.pi().clone().into_coeffs();
        pi[2] = PolyDiffCochain::zero(2, 2);
        let s = StarProduct::new(HbarSeries::new(pi)).unwrap();
        let defect = associativity_defect(&s);
        assert!(defect.coeff(1).is_zero());
        assert!(!defect.coeff(2).is_zero());
        let mc = mc_defect(&HochschildDgla { dim: 2 }, &mc_star_correspondence(&s).unwrap()).unwrap();
        assert_eq!(mc, defect);
        let p1 = s.pi().coeff(1);
        assert_eq!(defect.coeff(2), &p1.gerstenhaber_bracket(p1).unwrap().scale(&rat(1, 2)));
    }

    #[test]
    fn commutator_examples() {
        let s = moyal_weyl(&canonical_theta(2).unwrap(), 5).unwrap();
        let c = commutator_expansion(&s, &p("x1"), &p("x2")).unwrap();
        assert_eq!(c, HbarSeries::monomial(p("1"), 1, 5));
        let c = commutator_expansion(&s, &p("x1^3"), &p("x2^3")).unwrap();
        assert_eq!(c.coeff(1), &p("9*x1^2*x2^2"));
        assert_eq!(c.coeff(3), &p("3/2"));
        assert!(c.coeff(2).is_zero() && c.coeff(4).is_zero());
        assert!(commutator_expansion(&s, &p("x1*x2^2"), &p("x1*x2^2")).unwrap().is_zero());
    }

    #[test]
    fn jacobi_examples() {
        let pv = |s: &str, d| PolyVector::parse(s, d).unwrap();
        let f = |v: PolyVector| FormalPoisson::new(HbarSeries::monomial(v, 1, 2)).unwrap();
        assert!(jacobi_check(&f(pv("d1^d2", 2))).unwrap().is_zero());
        assert!(jacobi_check(&f(pv("x1*d1^d2", 2))).unwrap().is_zero());
        // {x,y} = z, {y,z} = x, {z,x} = 0 is a linear Poisson structure (a Lie algebra)
        assert!(jacobi_check(&f(pv("x3*d1^d2 + x1*d2^d3", 3))).unwrap().is_zero());
        // {x,y} = y, {y,z} = x: the Jacobiator on (x,y,z) is −x
        let j = jacobi_check(&f(pv("x2*d1^d2 + x1*d2^d3", 3))).unwrap();
        assert!(j.coeff(1).is_zero());
        assert!(!j.coeff(2).is_zero());
        assert!(FormalPoisson::new(HbarSeries::monomial(pv("d1", 2), 1, 2)).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = moyal_weyl(&canonical_theta(2).unwrap(), 3).unwrap();
        let text = serde_json::to_string(&s.to_json()).unwrap();
        let back: StarJson = serde_json::from_str(&text).unwrap();
        assert_eq!(StarProduct::from_json(&back).unwrap(), s);
    }
}
