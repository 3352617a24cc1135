//! Maurer–Cartan elements, twisting and the gauge action.

use num_traits::One;

use super::{Dgla, Formal, Twisted};
use crate::error::{AlgError, Result};
use crate::exactalg::rational::{factorial, rat};
use crate::exactalg::{HbarSeries, Linear, Rational};

fn check_series<D: Dgla>(inst: &D, s: &HbarSeries<D::Elem>, degree: i64, what: &str) -> Result<()> {
    for (k, c) in s.coeffs().iter().enumerate() {
        if inst.degree(c) != degree {
            return Err(AlgError::Grading(format!(
                "{what}: ħ^{k} coefficient has degree {}, expected {degree}",
                inst.degree(c)
            )));
        }
    }
    if !s.coeff(0).is_zero() {
        return Err(AlgError::NonzeroConstantTerm);
    }
    Ok(())
}

/// A degree-1 series in `ħ𝓛¹[[ħ]]`; the MC equation itself is not enforced.
#[derive(Debug, Clone, PartialEq)]
pub struct McElement<D: Dgla> {
    value: HbarSeries<D::Elem>,
}

impl<D: Dgla> McElement<D> {
    pub fn new(inst: &D, value: HbarSeries<D::Elem>) -> Result<Self> {
        check_series(inst, &value, 1, "MC candidate")?;
        Ok(McElement { value })
    }

    pub fn zero(inst: &D, order: usize) -> Result<Self> {
        Ok(McElement { value: HbarSeries::constant(inst.zero(1)?, order) })
    }

    pub fn value(&self) -> &HbarSeries<D::Elem> {
        &self.value
    }

    pub fn order(&self) -> usize {
        self.value.order()
    }
}

/// A degree-0 series in `ħ𝓛⁰[[ħ]]`, exponentiated formally.
#[derive(Debug, Clone, PartialEq)]
pub struct GaugeElement<D: Dgla> {
    value: HbarSeries<D::Elem>,
}

impl<D: Dgla> GaugeElement<D> {
    pub fn new(inst: &D, value: HbarSeries<D::Elem>) -> Result<Self> {
        check_series(inst, &value, 0, "gauge element")?;
        Ok(GaugeElement { value })
    }

    pub fn value(&self) -> &HbarSeries<D::Elem> {
        &self.value
    }

    pub fn order(&self) -> usize {
        self.value.order()
    }
}

/// `∂α + ½[α, α]`, truncated at the order of `α`.
pub fn mc_defect<D: Dgla + Clone>(inst: &D, alpha: &McElement<D>) -> Result<HbarSeries<D::Elem>> {
    let f = Formal::new(inst.clone(), alpha.order());
    let a = &alpha.value;
    Ok(f.differential(a)?.add(&f.bracket(a, a)?.scale(&rat(1, 2))))
}

/// `𝓛^α`: differential `∂ + [α, ·]` on `𝓛[[ħ]]`; fails unless `α` is MC.
pub fn twist_differential<D: Dgla + Clone>(inst: &D, alpha: &McElement<D>) -> Result<Twisted<Formal<D>>> {
    if !mc_defect(inst, alpha)?.is_zero() {
        return Err(AlgError::NotMaurerCartan);
    }
    Ok(Twisted {
        base: Formal::new(inst.clone(), alpha.order()),
        alpha: alpha.value.clone(),
    })
}

fn check_orders(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(AlgError::OrderMismatch { left: a, right: b });
    }
    Ok(())
}

/// `exp(ξ)·α = e^{ad}α + f(ad) ∂ξ` with `ad(x) = [x, ξ]` and
/// `f(x) = (eˣ − 1)/x`. Since `ξ = O(ħ)`, `ad^n = O(ħ^n)` and both series stop
/// at the truncation order. Acting by `ξ` and then by `η` equals acting by
/// `bch(ξ, η)`.
pub fn gauge_action<D: Dgla + Clone>(
    inst: &D,
    xi: &GaugeElement<D>,
    alpha: &McElement<D>,
) -> Result<McElement<D>> {
    check_orders(xi.order(), alpha.order())?;
    let n = alpha.order();
    let f = Formal::new(inst.clone(), n);
    let ad = |x: &HbarSeries<D::Elem>| f.bracket(x, &xi.value);

    let mut acc = alpha.value.clone();
    let mut term = alpha.value.clone();
    for k in 1..=n {
        term = ad(&term)?;
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term.scale(&(Rational::one() / factorial(k as u32))));
    }
    let mut term = f.differential(&xi.value)?;
    acc = acc.add(&term);
    for k in 1..=n {
        term = ad(&term)?;
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term.scale(&(Rational::one() / factorial(k as u32 + 1))));
    }
    Ok(McElement { value: acc })
}

/// Baker–Campbell–Hausdorff through bracket length 3:
/// `X + Y + ½[X,Y] + (1/12)[X,[X,Y]] − (1/12)[Y,[X,Y]]`. Exact for series
/// truncated at `ħ³`; larger orders are refused.
pub fn bch<D: Dgla + Clone>(inst: &D, x: &GaugeElement<D>, y: &GaugeElement<D>) -> Result<GaugeElement<D>> {
    check_orders(x.order(), y.order())?;
    if x.order() > 3 {
        return Err(AlgError::InconsistentBounds(format!(
            "bch is closed-form through ħ^3 only, got order {}",
            x.order()
        )));
    }
    let f = Formal::new(inst.clone(), x.order());
    let (a, b) = (&x.value, &y.value);
    let ab = f.bracket(a, b)?;
    let out = a
        .add(b)
        .add(&ab.scale(&rat(1, 2)))
        .add(&f.bracket(a, &ab)?.scale(&rat(1, 12)))
        .add(&f.bracket(b, &ab)?.scale(&rat(-1, 12)));
    Ok(GaugeElement { value: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dgla::{HochschildDgla, PolyvectorGla};
    use crate::hochschild::PolyDiffCochain;
    use crate::polyvec::PolyVector;
    use crate::sample;

    fn pv(s: &str) -> PolyVector {
        PolyVector::parse(s, 2).unwrap()
    }

    #[test]
    fn grading_is_checked() {
        let p = PolyvectorGla { dim: 2 };
        let bad = HbarSeries::monomial(pv("x1*d1"), 1, 2);
        assert!(McElement::new(&p, bad).is_err());
        let constant = HbarSeries::constant(pv("d1^d2"), 2);
        assert!(matches!(McElement::new(&p, constant), Err(AlgError::NonzeroConstantTerm)));
    }

    #[test]
    fn bivector_in_the_plane_is_mc() {
        let p = PolyvectorGla { dim: 2 };
        let a = McElement::new(&p, HbarSeries::monomial(pv("x1*x2^2*d1^d2"), 1, 3)).unwrap();
        assert!(mc_defect(&p, &a).unwrap().is_zero());
        assert!(twist_differential(&p, &a).is_ok());
    }

    #[test]
    fn first_order_moyal_term_alone_is_not_mc() {
        let h = HochschildDgla { dim: 2 };
        let w = |a: u32, b: u32| crate::MultiIndex::new(vec![a, b]);
        let p1 = PolyDiffCochain::words(2, vec![w(1, 0), w(0, 1)]);
        let a = McElement::new(&h, HbarSeries::monomial(p1.clone(), 1, 2)).unwrap();
        let defect = mc_defect(&h, &a).unwrap();
        assert!(defect.coeff(1).is_zero());
        let half = p1.gerstenhaber_bracket(&p1).unwrap().scale(&rat(1, 2));
        assert!(!half.is_zero());
        assert_eq!(defect.coeff(2), &half);
        assert!(matches!(twist_differential(&h, &a), Err(AlgError::NotMaurerCartan)));
    }

    #[test]
    fn gauge_of_zero_is_mc() {
        let h = HochschildDgla { dim: 2 };
        let mut r = sample::rng(42);
        for _ in 0..5 {
            let xi: Vec<_> = (0..=3)
                .map(|k| if k == 0 { PolyDiffCochain::zero(2, 1) } else { sample::cochain(&mut r, 2, 1, 1, 2, 2) })
                .collect();
            let xi = GaugeElement::new(&h, HbarSeries::new(xi)).unwrap();
            let zero = McElement::zero(&h, 3).unwrap();
            let a = gauge_action(&h, &xi, &zero).unwrap();
            assert!(mc_defect(&h, &a).unwrap().is_zero());
        }
    }

    #[test]
    fn gauge_action_composes_by_bch() {
        let p = PolyvectorGla { dim: 2 };
        let mut r = sample::rng(43);
        let series = |r: &mut sample::SampleRng, k: usize| {
            let v: Vec<_> = (0..=3)
                .map(|n| if n == 0 { PolyVector::zero(2, k) } else { sample::polyvector(r, 2, k, 2, 2) })
                .collect();
            HbarSeries::new(v)
        };
        for _ in 0..5 {
            let xi = GaugeElement::new(&p, series(&mut r, 1)).unwrap();
            let eta = GaugeElement::new(&p, series(&mut r, 1)).unwrap();
            let alpha = McElement::new(&p, series(&mut r, 2)).unwrap();
            let two_steps = gauge_action(&p, &eta, &gauge_action(&p, &xi, &alpha).unwrap()).unwrap();
            let one_step = gauge_action(&p, &bch(&p, &xi, &eta).unwrap(), &alpha).unwrap();
            assert_eq!(two_steps, one_step);
        }
    }
}
