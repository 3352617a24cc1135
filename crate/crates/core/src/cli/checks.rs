//! Every randomized or enumerated check evaluates one serializable [`Case`].
//! A failing case is stored verbatim in the report, and `verify-witness`
//! re-runs [`evaluate`] on it, so counterexamples and positive witnesses are
//! re-checkable without the generator.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::config::theta_from_text;
use crate::dgla::{
    ce_coderivation, ce_coproduct, ce_tensor_coderivation, ce_word, gauge_action, mc_defect, twist_differential,
    CeBasis, CeWord, Dgla, GaugeElement, HochschildDgla, McElement, PolyvectorGla, DEFAULT_MAX_WORD,
};
use crate::exactalg::rational::{int, rat, sign};
use crate::exactalg::{HbarSeries, MultiPoly, Rational};
use crate::hochschild::{
    coboundary_solve, Bounds, ChainJson, CoboundaryOutcome, CochainJson, CyclicChain, HochChain, MixedChain,
    PolyDiffCochain,
};
use crate::obstruction::{
    build_system_with, ce2_cocycle_defect, coboundary_of, poisson_bracket_raw, verify_certificate, vey_planar, vey_raw,
    LinearMapTable, ObstructionBounds, ObstructionCertificate, PoissonFunctionClass,
};
use crate::polyvec::{AltJson, ExtForm, PolyVector};
use crate::starprod::{
    apply_equivalence, associativity_defect, canonical_theta, commutator_expansion, mc_star_correspondence,
    moyal_weyl, EquivalenceSeries, StarProduct,
};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Case {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<ObstructionBounds>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub polys: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cochains: Vec<CochainJson>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub chains: Vec<ChainJson>,
    /// `u`-coefficients of a negative cyclic chain, each a list of chains.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cyclic: Vec<Vec<ChainJson>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub polyvectors: Vec<AltJson>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub forms: Vec<AltJson>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cochain_series: Vec<Vec<CochainJson>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub polyvector_series: Vec<Vec<AltJson>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tables: Vec<BTreeMap<String, String>>,
}

type Check = Result<(), String>;

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

impl Case {
    fn theta(&self) -> Result<Vec<Vec<Rational>>, String> {
        let rows = self.theta.as_ref().ok_or("case has no θ")?;
        theta_from_text(rows).map_err(err)
    }

    fn dim(&self) -> Result<usize, String> {
        self.dim.ok_or_else(|| "case has no dimension".to_string())
    }

    fn poly(&self, i: usize) -> Result<MultiPoly, String> {
        let text = self.polys.get(i).ok_or_else(|| format!("case has no polynomial #{i}"))?;
        MultiPoly::parse(text, self.dim()?).map_err(err)
    }

    fn cochain(&self, i: usize) -> Result<PolyDiffCochain, String> {
        PolyDiffCochain::from_json(self.cochains.get(i).ok_or_else(|| format!("case has no cochain #{i}"))?).map_err(err)
    }

    fn chain(&self, i: usize) -> Result<HochChain, String> {
        HochChain::from_json(self.chains.get(i).ok_or_else(|| format!("case has no chain #{i}"))?).map_err(err)
    }

    fn polyvector(&self, i: usize) -> Result<PolyVector, String> {
        PolyVector::from_json(self.polyvectors.get(i).ok_or_else(|| format!("case has no polyvector #{i}"))?).map_err(err)
    }

    fn form(&self, i: usize) -> Result<ExtForm, String> {
        ExtForm::from_json(self.forms.get(i).ok_or_else(|| format!("case has no form #{i}"))?).map_err(err)
    }

    fn cochain_series(&self, i: usize) -> Result<HbarSeries<PolyDiffCochain>, String> {
        let s = self.cochain_series.get(i).ok_or_else(|| format!("case has no series #{i}"))?;
        if s.is_empty() {
            return Err("empty series".into());
        }
        let c: Vec<PolyDiffCochain> = s.iter().map(PolyDiffCochain::from_json).collect::<crate::Result<_>>().map_err(err)?;
        Ok(HbarSeries::new(c))
    }

    fn polyvector_series(&self, i: usize) -> Result<HbarSeries<PolyVector>, String> {
        let s = self.polyvector_series.get(i).ok_or_else(|| format!("case has no series #{i}"))?;
        if s.is_empty() {
            return Err("empty series".into());
        }
        let c: Vec<PolyVector> = s.iter().map(PolyVector::from_json).collect::<crate::Result<_>>().map_err(err)?;
        Ok(HbarSeries::new(c))
    }

    fn table(&self, i: usize, dim: usize, d: u32) -> Result<LinearMapTable, String> {
        LinearMapTable::from_text(dim, d, self.tables.get(i).ok_or_else(|| format!("case has no table #{i}"))?)
            .map_err(err)
    }
}

pub fn series_json(s: &HbarSeries<PolyDiffCochain>) -> Vec<CochainJson> {
    s.coeffs().iter().map(PolyDiffCochain::to_json).collect()
}

pub fn pv_series_json(s: &HbarSeries<PolyVector>) -> Vec<AltJson> {
    s.coeffs().iter().map(PolyVector::to_json).collect()
}

pub fn cyclic_json(c: &CyclicChain) -> Vec<Vec<ChainJson>> {
    (0..=c.u_order()).map(|k| c.coeff(k).parts().map(HochChain::to_json).collect()).collect()
}

/// `a + s·b` where either side may be the zero of a collapsed arity.
fn chain_combine(a: &HochChain, b: &HochChain, s: &Rational) -> HochChain {
    if b.is_zero() {
        a.clone()
    } else if a.is_zero() {
        b.scale(s)
    } else {
        let mut out = a.clone();
        out.add_assign_scaled(b, s);
        out
    }
}

fn chain_same(a: &HochChain, b: &HochChain) -> bool {
    (a.is_zero() && b.is_zero()) || a == b
}

fn pv_combine(a: &PolyVector, b: &PolyVector, s: &Rational) -> PolyVector {
    if b.is_zero() {
        a.clone()
    } else if a.is_zero() {
        b.scale(s)
    } else {
        let mut out = a.clone();
        out.add_assign_scaled(b, s);
        out
    }
}

fn pv_same(a: &PolyVector, b: &PolyVector) -> bool {
    (a.is_zero() && b.is_zero()) || a == b
}

fn form_combine(a: &ExtForm, b: &ExtForm, s: &Rational) -> ExtForm {
    if b.is_zero() {
        a.clone()
    } else if a.is_zero() {
        b.scale(s)
    } else {
        let mut out = a.clone();
        out.add_assign_scaled(b, s);
        out
    }
}

fn form_same(a: &ExtForm, b: &ExtForm) -> bool {
    (a.is_zero() && b.is_zero()) || a == b
}

/// Names of all checks, in report order within each suite.
pub const CHECKS: &[&str] = &[
    "hochschild_differential_squares_to_zero",
    "chain_boundary_squares_to_zero",
    "connes_b_squares_to_zero",
    "boundary_anticommutes_with_connes_b",
    "negative_cyclic_differential_squares_to_zero",
    "lie_derivative_module_identity",
    "connes_b_lie_derivative_compatibility",
    "wedge_graded_commutative_associative",
    "schouten_antisymmetry_and_jacobi",
    "schouten_biderivation_of_wedge",
    "contraction_lie_derivative_relation",
    "lie_derivative_of_wedge",
    "cartan_formula",
    "hkr_lands_in_cocycles",
    "hkr_brackets_up_to_coboundary",
    "mc_iff_associativity",
    "gauge_action_preserves_mc",
    "twisted_differential_squares_to_zero_moyal",
    "twisted_differential_squares_to_zero_poisson",
    "ce_coderivation_squares_to_zero",
    "moyal_associativity",
    "moyal_commutator_expansion",
    "moyal_spot_values",
    "equivalences_compose",
    "vey_antisymmetry",
    "vey_ce2_cocycle",
    "vey_general_matches_planar",
    "coboundary_negative_control",
];

pub fn evaluate(name: &str, case: &Case) -> Check {
    match name {
        "hochschild_differential_squares_to_zero" => {
            let p = case.cochain(0)?;
            ensure(p.hoch_differential().hoch_differential().is_zero(), || "∂∂P ≠ 0".into())
        }
        "chain_boundary_squares_to_zero" => {
            let c = case.chain(0)?;
            ensure(c.chain_boundary().chain_boundary().is_zero(), || "bb ≠ 0".into())
        }
        "connes_b_squares_to_zero" => {
            let c = case.chain(0)?;
            ensure(c.connes_b().connes_b().is_zero(), || "BB ≠ 0".into())
        }
        "boundary_anticommutes_with_connes_b" => {
            let c = case.chain(0)?;
            let mut anti = c.connes_b().chain_boundary();
            if c.arity() >= 1 {
                anti.add_assign_scaled(&c.chain_boundary().connes_b(), &int(1));
            }
            ensure(anti.is_zero(), || "bB + Bb ≠ 0".into())
        }
        "negative_cyclic_differential_squares_to_zero" => {
            let dim = case.dim()?;
            let mut coeffs = Vec::new();
            for part in &case.cyclic {
                let mut mc = MixedChain::zero(dim);
                for c in part {
                    mc.add_chain(&HochChain::from_json(c).map_err(err)?, &int(1));
                }
                coeffs.push(mc);
            }
            if coeffs.is_empty() {
                return Err("empty cyclic chain".into());
            }
            let c = CyclicChain::from_coeffs(coeffs);
            ensure(c.cyclic_differential().cyclic_differential().is_zero(), || "(b + uB)² ≠ 0".into())
        }
        "lie_derivative_module_identity" => {
            let (q1, q2, c) = (case.cochain(0)?, case.cochain(1)?, case.chain(0)?);
            let a = c.lie_derivative(&q2).map_err(err)?.lie_derivative(&q1).map_err(err)?;
            let b = c.lie_derivative(&q1).map_err(err)?.lie_derivative(&q2).map_err(err)?;
            let s = sign((q1.arity() as i64 + 1) * (q2.arity() as i64 + 1));
            let lhs = chain_combine(&a, &b, &-s);
            let rhs = c.lie_derivative(&q1.gerstenhaber_bracket(&q2).map_err(err)?).map_err(err)?;
            ensure(chain_same(&lhs, &rhs), || format!("L_Q1 L_Q2 ∓ L_Q2 L_Q1 = {lhs}, L_[Q1,Q2] = {rhs}"))
        }
        "connes_b_lie_derivative_compatibility" => {
            let (p, c) = (case.cochain(0)?, case.chain(0)?);
            let bl = c.lie_derivative(&p).map_err(err)?.connes_b();
            let lb = c.connes_b().lie_derivative(&p).map_err(err)?;
            let d = chain_combine(&bl, &lb, &-sign(p.arity() as i64 + 1));
            ensure(d.is_zero(), || format!("B L_P ∓ L_P B = {d}"))
        }
        "wedge_graded_commutative_associative" => {
            let (a, b, c) = (case.polyvector(0)?, case.polyvector(1)?, case.polyvector(2)?);
            let ab = a.wedge(&b).map_err(err)?;
            let ba = b.wedge(&a).map_err(err)?;
            ensure(pv_same(&ab, &ba.scale(&sign((a.degree() * b.degree()) as i64))), || "a∧b ≠ ±b∧a".into())?;
            let l = ab.wedge(&c).map_err(err)?;
            let r = a.wedge(&b.wedge(&c).map_err(err)?).map_err(err)?;
            ensure(pv_same(&l, &r), || "(a∧b)∧c ≠ a∧(b∧c)".into())
        }
        "schouten_antisymmetry_and_jacobi" => {
            let (a, b, c) = (case.polyvector(0)?, case.polyvector(1)?, case.polyvector(2)?);
            let (la, lb) = (a.lie_degree(), b.lie_degree());
            let ab = a.schouten(&b).map_err(err)?;
            let ba = b.schouten(&a).map_err(err)?;
            ensure(pv_same(&ab, &ba.scale(&-sign(la * lb))), || format!("[a,b] = {ab}, [b,a] = {ba}"))?;
            let lhs = a.schouten(&b.schouten(&c).map_err(err)?).map_err(err)?;
            let r1 = ab.schouten(&c).map_err(err)?;
            let r2 = b.schouten(&a.schouten(&c).map_err(err)?).map_err(err)?;
            let rhs = pv_combine(&r1, &r2, &sign(la * lb));
            ensure(pv_same(&lhs, &rhs), || format!("Jacobi: {lhs} vs {rhs}"))
        }
        "schouten_biderivation_of_wedge" => {
            let (g, g1, g2) = (case.polyvector(0)?, case.polyvector(1)?, case.polyvector(2)?);
            let lhs = g.schouten(&g1.wedge(&g2).map_err(err)?).map_err(err)?;
            let t1 = g.schouten(&g1).map_err(err)?.wedge(&g2).map_err(err)?;
            let t2 = g1.wedge(&g.schouten(&g2).map_err(err)?).map_err(err)?;
            let rhs = pv_combine(&t1, &t2, &sign(g1.degree() as i64 * (g.degree() as i64 + 1)));
            ensure(pv_same(&lhs, &rhs), || format!("{lhs} vs {rhs}"))
        }
        "contraction_lie_derivative_relation" => {
            let (a, b, w) = (case.polyvector(0)?, case.polyvector(1)?, case.form(0)?);
            let (ka, kb) = (a.degree() as i64, b.degree() as i64);
            let x = w.lie_derivative(&b).map_err(err)?.contraction(&a).map_err(err)?;
            let y = w.contraction(&a).map_err(err)?.lie_derivative(&b).map_err(err)?;
            let lhs = form_combine(&x, &y, &-sign(ka * (kb + 1)));
            let rhs = w.contraction(&a.schouten(&b).map_err(err)?).map_err(err)?;
            ensure(form_same(&lhs, &rhs), || format!("{lhs} vs {rhs}"))
        }
        "lie_derivative_of_wedge" => {
            let (a, b, w) = (case.polyvector(0)?, case.polyvector(1)?, case.form(0)?);
            let lhs = w.lie_derivative(&a.wedge(&b).map_err(err)?).map_err(err)?;
            let x = w.contraction(&b).map_err(err)?.lie_derivative(&a).map_err(err)?;
            let y = w.lie_derivative(&b).map_err(err)?.contraction(&a).map_err(err)?;
            let rhs = form_combine(&x, &y, &sign(a.degree() as i64));
            ensure(form_same(&lhs, &rhs), || format!("{lhs} vs {rhs}"))
        }
        "cartan_formula" => {
            let (a, w) = (case.polyvector(0)?, case.form(0)?);
            let x = w.contraction(&a).map_err(err)?.d();
            let y = w.d().contraction(&a).map_err(err)?;
            let lhs = form_combine(&x, &y, &-sign(a.degree() as i64));
            let rhs = w.lie_derivative(&a).map_err(err)?;
            ensure(form_same(&lhs, &rhs), || format!("{lhs} vs {rhs}"))
        }
        "hkr_lands_in_cocycles" => {
            let g = case.polyvector(0)?;
            ensure(g.hkr().hoch_differential().is_zero(), || format!("∂ hkr({g}) ≠ 0"))
        }
        "hkr_brackets_up_to_coboundary" => {
            let (g1, g2) = (case.polyvector(0)?, case.polyvector(1)?);
            let y = hkr_defect(&g1, &g2)?;
            match case.cochains.first() {
                None => ensure(y.is_zero(), || "no F2 recorded for a nonzero defect".into()),
                Some(f) => {
                    let f2 = PolyDiffCochain::from_json(f).map_err(err)?;
                    ensure(f2.hoch_differential() == y, || "∂F2 differs from the defect".into())
                }
            }
        }
        "mc_iff_associativity" => {
            let s = StarProduct::new(case.cochain_series(0)?).map_err(err)?;
            let h = HochschildDgla { dim: s.dim() };
            let assoc = associativity_defect(&s);
            let mc = mc_defect(&h, &mc_star_correspondence(&s).map_err(err)?).map_err(err)?;
            for o in 0..=s.order() {
                ensure(assoc.coeff(o).is_zero() == mc.coeff(o).is_zero(), || format!("order {o} disagrees"))?;
            }
            ensure(assoc == mc, || "MC defect differs from the associativity defect".into())
        }
        "gauge_action_preserves_mc" => {
            let theta = case.theta()?;
            let xi = case.cochain_series(0)?;
            let h = HochschildDgla { dim: theta.len() };
            let alpha = mc_star_correspondence(&moyal_weyl(&theta, xi.order()).map_err(err)?).map_err(err)?;
            let moved = gauge_action(&h, &GaugeElement::new(&h, xi).map_err(err)?, &alpha).map_err(err)?;
            ensure(mc_defect(&h, &moved).map_err(err)?.is_zero(), || "ξ·α is not MC".into())
        }
        "twisted_differential_squares_to_zero_moyal" => {
            let theta = case.theta()?;
            let x = case.cochain_series(0)?;
            let h = HochschildDgla { dim: theta.len() };
            let alpha = mc_star_correspondence(&moyal_weyl(&theta, x.order()).map_err(err)?).map_err(err)?;
            let tw = twist_differential(&h, &alpha).map_err(err)?;
            let dx = tw.differential(&x).map_err(err)?;
            ensure(tw.differential(&dx).map_err(err)?.is_zero(), || "d_Π² ≠ 0".into())
        }
        "twisted_differential_squares_to_zero_poisson" => {
            let pi = case.polyvector_series(0)?;
            let x = case.polyvector_series(1)?;
            let p = PolyvectorGla { dim: pi.coeff(0).dim() };
            let tw = twist_differential(&p, &McElement::new(&p, pi).map_err(err)?).map_err(err)?;
            let dx = tw.differential(&x).map_err(err)?;
            ensure(tw.differential(&dx).map_err(err)?.is_zero(), || "d_π² ≠ 0".into())
        }
        "ce_coderivation_squares_to_zero" => {
            if !case.cochains.is_empty() {
                let els: Vec<PolyDiffCochain> =
                    case.cochains.iter().map(PolyDiffCochain::from_json).collect::<crate::Result<_>>().map_err(err)?;
                let dim = els[0].dim();
                ce_words_check(&HochschildDgla { dim }, &els)
            } else {
                let els: Vec<PolyVector> = (0..case.polyvectors.len()).map(|i| case.polyvector(i)).collect::<Result<_, _>>()?;
                let dim = els.first().ok_or("empty element set")?.dim();
                ce_words_check(&PolyvectorGla { dim }, &els)
            }
        }
        "moyal_associativity" => {
            let s = moyal_weyl(&case.theta()?, case.order.ok_or("case has no order")?).map_err(err)?;
            ensure(associativity_defect(&s).is_zero(), || "Moyal product is not associative".into())
        }
        "moyal_commutator_expansion" => {
            let theta = case.theta()?;
            let (a, b) = (case.poly(0)?, case.poly(1)?);
            let s = moyal_weyl(&theta, case.order.unwrap_or(5).max(4)).map_err(err)?;
            let c = commutator_expansion(&s, &a, &b).map_err(err)?;
            for k in [0, 2, 4] {
                ensure(c.coeff(k).is_zero(), || format!("ħ^{k} part of [{a},{b}] is {}", c.coeff(k)))?;
            }
            let br = poisson_bracket_raw(&theta, &a, &b).map_err(err)?;
            ensure(*c.coeff(1) == br, || format!("ħ part {} vs {{a,b}} = {br}", c.coeff(1)))?;
            let v = vey_raw(&theta, &a, &b).map_err(err)?;
            ensure(*c.coeff(3) == v, || format!("ħ³ part {} vs V = {v}", c.coeff(3)))
        }
        "moyal_spot_values" => {
            let s = moyal_weyl(&canonical_theta(2).map_err(err)?, 5).map_err(err)?;
            let p = |t: &str| MultiPoly::parse(t, 2).map_err(err);
            let xy = commutator_expansion(&s, &p("x1")?, &p("x2")?).map_err(err)?;
            ensure(*xy.coeff(1) == MultiPoly::one(2) && (2..=5).all(|k| xy.coeff(k).is_zero()), || {
                "[x, y] ≠ ħ".into()
            })?;
            let c = commutator_expansion(&s, &p("x1^3")?, &p("x2^3")?).map_err(err)?;
            ensure(*c.coeff(3) == MultiPoly::constant(2, rat(3, 2)), || format!("ħ³ part of [x³,y³] is {}", c.coeff(3)))
        }
        "equivalences_compose" => {
            let theta = case.theta()?;
            let (x1, x2) = (case.cochain_series(0)?, case.cochain_series(1)?);
            let s = moyal_weyl(&theta, x1.order()).map_err(err)?;
            let t1 = EquivalenceSeries::exp(&x1).map_err(err)?;
            let t2 = EquivalenceSeries::exp(&x2).map_err(err)?;
            let s1 = apply_equivalence(&t1, &s).map_err(err)?;
            let stepwise = apply_equivalence(&t2, &s1).map_err(err)?;
            let at_once = apply_equivalence(&t2.then_after(&t1).map_err(err)?, &s).map_err(err)?;
            ensure(stepwise == at_once, || "T2(T1 s) ≠ (T2∘T1) s".into())?;
            ensure(associativity_defect(&stepwise).is_zero(), || "transported product is not associative".into())?;
            ensure(apply_equivalence(&t1.inverse(), &s1).map_err(err)? == s, || "T1⁻¹(T1 s) ≠ s".into())
        }
        "vey_antisymmetry" => {
            let theta = case.theta()?;
            let (a, b) = (case.poly(0)?, case.poly(1)?);
            let ab = vey_raw(&theta, &a, &b).map_err(err)?;
            let ba = vey_raw(&theta, &b, &a).map_err(err)?;
            ensure(ab == ba.scale(&int(-1)), || format!("V(a,b) = {ab}, V(b,a) = {ba}"))
        }
        "vey_ce2_cocycle" => {
            let theta = case.theta()?;
            let cls = |i| case.poly(i).map(PoissonFunctionClass::new);
            let d = ce2_cocycle_defect(&theta, &cls(0)?, &cls(1)?, &cls(2)?).map_err(err)?;
            ensure(d.is_zero(), || format!("defect {}", d.rep()))
        }
        "vey_general_matches_planar" => {
            let theta = case.theta()?;
            let (a, b) = (case.poly(0)?, case.poly(1)?);
            let g = vey_raw(&theta, &a, &b).map_err(err)?;
            let p = vey_planar(&a, &b).map_err(err)?;
            ensure(g == p, || format!("general {g} vs planar {p}"))
        }
        "coboundary_negative_control" => {
            let theta = case.theta()?;
            let bounds = case.bounds.ok_or("case has no bounds")?;
            let dim = theta.len();
            let p0 = case.table(0, dim, bounds.max_degree)?;
            let p = case.table(1, dim, bounds.max_degree)?;
            let rhs = coboundary_of(&theta, &p0);
            let sys = build_system_with(&theta, bounds, &rhs).map_err(err)?;
            let cert = ObstructionCertificate::Solvable { bounds, table: p.clone() };
            ensure(verify_certificate(&sys, &cert, &rhs).map_err(err)?, || "recorded P does not solve δP = δP₀".into())?;
            // P − P₀ solves the homogeneous system
            let mut diff = p;
            for (m, v) in &p0.entries {
                diff.entries.entry(m.clone()).or_insert_with(|| MultiPoly::zero(dim)).add_scaled(v, &int(-1));
            }
            let zero = |_: &MultiPoly, _: &MultiPoly| Ok(MultiPoly::zero(dim));
            let homogeneous = build_system_with(&theta, bounds, zero).map_err(err)?;
            let kernel = ObstructionCertificate::Solvable { bounds, table: diff };
            ensure(verify_certificate(&homogeneous, &kernel, zero).map_err(err)?, || "P − P₀ is not in the kernel".into())
        }
        other => Err(format!("unknown check `{other}`")),
    }
}

/// `hkr[γ1,γ2]_SN − [hkr γ1, hkr γ2]_G`.
pub fn hkr_defect(g1: &PolyVector, g2: &PolyVector) -> Result<PolyDiffCochain, String> {
    let mut y = g1.schouten(g2).map_err(err)?.hkr();
    y.add_assign_scaled(&g1.hkr().gerstenhaber_bracket(&g2.hkr()).map_err(err)?, &int(-1));
    Ok(y)
}

/// Solves `∂F2 = hkr_defect(γ1, γ2)`; `None` when the defect vanishes.
pub fn hkr_f2(g1: &PolyVector, g2: &PolyVector) -> Result<Option<PolyDiffCochain>, String> {
    let y = hkr_defect(g1, g2)?;
    if y.is_zero() {
        return Ok(None);
    }
    match coboundary_solve(&y, Bounds::default()).map_err(err)? {
        CoboundaryOutcome::Solved(f2) => Ok(Some(f2)),
        CoboundaryOutcome::Infeasible(_) => Err("defect is not a coboundary within the bounds".into()),
    }
}

/// `Q² = 0` and `ΔQ = (Q⊗1 + 1⊗Q)Δ` on every word of length ≤ 3 over `els`.
fn ce_words_check<I: CeBasis + Clone>(inst: &I, els: &[I::Elem]) -> Check
where
    I::Elem: Clone,
{
    let n = els.len();
    let mut words: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        words.push(vec![i]);
        for j in i..n {
            words.push(vec![i, j]);
            for k in j..n {
                words.push(vec![i, j, k]);
            }
        }
    }
    for w in words {
        let factors = w.iter().map(|&i| els[i].clone()).collect();
        let x = ce_word(inst, &CeWord { factors }).map_err(err)?;
        let q = ce_coderivation(inst, &x, DEFAULT_MAX_WORD).map_err(err)?;
        ensure(ce_coderivation(inst, &q, DEFAULT_MAX_WORD).map_err(err)?.is_zero(), || format!("Q² ≠ 0 on word {w:?}"))?;
        let lhs = ce_coproduct(inst, &q);
        let rhs = ce_tensor_coderivation(inst, &ce_coproduct(inst, &x), DEFAULT_MAX_WORD).map_err(err)?;
        ensure(lhs == rhs, || format!("Q is not a coderivation on word {w:?}"))?;
    }
    Ok(())
}
