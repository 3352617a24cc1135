use hochlab::exactalg::rational::{int, rat};
use hochlab::obstruction::{
    build_coboundary_system, build_system_with, ce2_cocycle_defect, coboundary_of, poisson_bracket_raw,
    reproduce_contradiction, solve_or_certify, verify_certificate, vey_planar, vey_raw, CertificateJson,
    LinearMapTable, ObstructionBounds, ObstructionCertificate, PoissonFunctionClass,
};
use hochlab::sample;
use hochlab::starprod::{canonical_theta, commutator_expansion, moyal_weyl};
use hochlab::{MultiIndex, MultiPoly, Rational};
use proptest::prelude::*;
use rand::Rng;

fn monomials(max: u32) -> Vec<MultiPoly> {
    MultiIndex::all_in_degrees(2, 0, max)
        .into_iter()
        .map(|m| MultiPoly::monomial(m, int(1)))
        .collect()
}

fn deg(p: &MultiPoly) -> u32 {
    p.degree().unwrap_or(0)
}

fn bounds(d: u32, dp: u32) -> ObstructionBounds {
    ObstructionBounds { max_degree: d, max_pair_degree: dp }
}

#[test]
fn vey_is_antisymmetric_through_degree_nine() {
    let th = canonical_theta(2).unwrap();
    let ms = monomials(9);
    for a in &ms {
        for b in ms.iter().filter(|b| deg(a) + deg(b) <= 9) {
            let ab = vey_raw(&th, a, b).unwrap();
            let ba = vey_raw(&th, b, a).unwrap();
            assert_eq!(ab, ba.scale(&int(-1)), "V({a}, {b})");
        }
    }
}

#[test]
fn vey_is_a_ce_cocycle_through_degree_nine() {
    let th = canonical_theta(2).unwrap();
    let ms: Vec<PoissonFunctionClass> = monomials(9).into_iter().map(PoissonFunctionClass::new).collect();
    let d = |p: &PoissonFunctionClass| deg(p.rep());
    let mut checked = 0;
    // the defect is alternating, so ordered triples i ≤ j ≤ k suffice
    for i in 0..ms.len() {
        for j in i..ms.len() {
            for k in j..ms.len() {
                if d(&ms[i]) + d(&ms[j]) + d(&ms[k]) > 9 {
                    continue;
                }
                let def = ce2_cocycle_defect(&th, &ms[i], &ms[j], &ms[k]).unwrap();
                assert!(def.is_zero(), "({:?}, {:?}, {:?})", ms[i], ms[j], ms[k]);
                checked += 1;
            }
        }
    }
    // 960 unordered triples of monomials
    assert_eq!(checked, 960);
}

#[test]
fn general_and_planar_vey_agree_through_degree_eight() {
    let th = canonical_theta(2).unwrap();
    let ms = monomials(8);
    for a in &ms {
        for b in ms.iter().filter(|b| deg(a) + deg(b) <= 8) {
            assert_eq!(vey_raw(&th, a, b).unwrap(), vey_planar(a, b).unwrap(), "V({a}, {b})");
        }
    }
}

#[test]
fn moyal_commutator_is_bracket_plus_vey() {
    let th = canonical_theta(2).unwrap();
    let s = moyal_weyl(&th, 5).unwrap();
    let ms = monomials(8);
    for a in &ms {
        for b in ms.iter().filter(|b| deg(a) + deg(b) <= 8) {
            let c = commutator_expansion(&s, a, b).unwrap();
            assert!(c.coeff(0).is_zero() && c.coeff(2).is_zero() && c.coeff(4).is_zero());
            assert_eq!(*c.coeff(1), poisson_bracket_raw(&th, a, b).unwrap(), "{{{a}, {b}}}");
            assert_eq!(*c.coeff(3), vey_planar(a, b).unwrap(), "V({a}, {b})");
        }
    }
}

#[test]
fn low_degrees_are_unobstructed() {
    let th = canonical_theta(2).unwrap();
    for (d, dp) in [(3, 4), (4, 5), (4, 6)] {
        let sys = build_coboundary_system(&th, bounds(d, dp)).unwrap();
        assert!(!solve_or_certify(&sys).unwrap().is_infeasible(), "D={d} Dpairs={dp}");
    }
}

#[test]
fn obstruction_certificate_round_trips_and_embeds() {
    let th = canonical_theta(2).unwrap();
    let sys = build_coboundary_system(&th, bounds(5, 7)).unwrap();
    let cert = solve_or_certify(&sys).unwrap();
    assert!(cert.is_infeasible());
    assert!(verify_certificate(&sys, &cert, |a, b| vey_raw(&th, a, b)).unwrap());

    let text = serde_json::to_string(&cert.to_json(&sys)).unwrap();
    let back: CertificateJson = serde_json::from_str(&text).unwrap();
    back.reverify(&th).unwrap();

    // tampering with a weight breaks the witness
    let mut bad = back.clone();
    bad.witness.combination[0] = format!("{}", rat(7, 3));
    assert!(bad.reverify(&th).is_err());

    // the same rows refute the larger system
    let big = build_coboundary_system(&th, bounds(6, 8)).unwrap();
    let combo = cert.embed_into(&sys, &big).expect("witness rows reappear");
    let embedded = ObstructionCertificate::Infeasible { bounds: big.bounds, combination: combo };
    assert!(verify_certificate(&big, &embedded, |a, b| vey_raw(&th, a, b)).unwrap());
}

fn random_table(r: &mut sample::SampleRng, d: u32) -> LinearMapTable {
    let mut t = LinearMapTable::zero(2, d);
    for m in MultiIndex::all_in_degrees(2, 1, d) {
        if r.gen_bool(0.6) {
            let mut p = sample::poly(r, 2, d, 3).without_constant();
            p = MultiPoly::from_terms(2, p.terms().filter(|(n, _)| n.degree() >= 1).map(|(n, c)| (n.clone(), c.clone())));
            if !p.is_zero() {
                t.entries.insert(m, p);
            }
        }
    }
    t
}

#[test]
fn coboundaries_are_solvable() {
    let th = canonical_theta(2).unwrap();
    let mut r = sample::rng(2024);
    for _ in 0..5 {
        let p0 = random_table(&mut r, 5);
        let rhs = coboundary_of(&th, &p0);
        let sys = build_system_with(&th, bounds(5, 7), &rhs).unwrap();
        let cert = hochlab::linsolve::solve(sys.ncols(), &sys.linear_rows());
        let hochlab::linsolve::Outcome::Solved(x) = cert else { panic!("coboundary reported infeasible") };
        let p = sys.table_from(&x);
        let found = ObstructionCertificate::Solvable { bounds: sys.bounds, table: p.clone() };
        assert!(verify_certificate(&sys, &found, &rhs).unwrap());
        // P − P₀ lies in the kernel: it solves the homogeneous system
        let mut diff = p;
        for (m, v) in &p0.entries {
            let e = diff.entries.entry(m.clone()).or_insert_with(|| MultiPoly::zero(2));
            e.add_scaled(v, &int(-1));
        }
        let zero = |_: &MultiPoly, _: &MultiPoly| Ok(MultiPoly::zero(2));
        let homogeneous = build_system_with(&th, bounds(5, 7), zero).unwrap();
        let kernel = ObstructionCertificate::Solvable { bounds: sys.bounds, table: diff };
        assert!(verify_certificate(&homogeneous, &kernel, zero).unwrap());
    }
}

#[test]
fn elimination_replay() {
    let t = reproduce_contradiction().unwrap();
    assert_eq!((t.x_coefficient_from_first.as_str(), t.x_coefficient_from_second.as_str()), ("1/2", "-3/10"));
    assert!(t.contradiction);
    let json = serde_json::to_value(&t).unwrap();
    assert_eq!(json["steps"][0]["name"], "coordinates");
    let quartic = t.steps.iter().find(|s| s.name == "quartics").unwrap();
    assert!(quartic.constraints.contains(&"P(x1^2*x2^2) = (-2)*c0*x1^2*x2^2 mod constants".to_string()));
}

fn small_poly() -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(((0u32..4, 0u32..4), -4i64..5), 1..4).prop_map(|ts| {
        MultiPoly::from_terms(2, ts.into_iter().map(|((i, j), c)| (MultiIndex::new(vec![i, j]), Rational::from_integer(c.into()))))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn vey_is_bilinear_and_antisymmetric(a in small_poly(), b in small_poly(), c in small_poly()) {
        let th = canonical_theta(2).unwrap();
        let v = |p: &MultiPoly, q: &MultiPoly| vey_raw(&th, p, q).unwrap();
        prop_assert_eq!(v(&a, &b), v(&b, &a).scale(&int(-1)));
        let mut sum = v(&a, &c);
        sum.add_scaled(&v(&b, &c), &int(1));
        prop_assert_eq!(v(&(&a + &b), &c), sum);
    }

    #[test]
    fn ce2_defect_vanishes_on_polynomials(a in small_poly(), b in small_poly(), c in small_poly()) {
        let th = canonical_theta(2).unwrap();
        let cls = |p: &MultiPoly| PoissonFunctionClass::new(p.clone());
        prop_assert!(ce2_cocycle_defect(&th, &cls(&a), &cls(&b), &cls(&c)).unwrap().is_zero());
    }
}
