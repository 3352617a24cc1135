use hochlab::exactalg::rational::{int, sign};
use hochlab::hochschild::{coboundary_solve, Bounds, CoboundaryOutcome};
use hochlab::polyvec::{ExtForm, PolyVector};
use hochlab::sample::{self, SampleRng};

fn pv(r: &mut SampleRng, k: usize) -> PolyVector {
    sample::polyvector(r, 3, k, 2, 2)
}

/// `a + s·b`, treating a zero of a collapsed degree as absent.
fn combine(a: &PolyVector, b: &PolyVector, s: i64) -> PolyVector {
    match (a.is_zero(), b.is_zero()) {
        (_, true) => a.clone(),
        (true, false) => b.scale(&int(s)),
        _ => {
            let mut out = a.clone();
            out.add_assign_scaled(b, &int(s));
            out
        }
    }
}

fn combine_f(a: &ExtForm, b: &ExtForm, s: &hochlab::Rational) -> ExtForm {
    match (a.is_zero(), b.is_zero()) {
        (_, true) => a.clone(),
        (true, false) => b.scale(s),
        _ => {
            let mut out = a.clone();
            out.add_assign_scaled(b, s);
            out
        }
    }
}

fn same_f(a: &ExtForm, b: &ExtForm) -> bool {
    (a.is_zero() && b.is_zero()) || a == b
}

#[test]
fn wedge_is_graded_commutative_and_associative() {
    let mut r = sample::rng(31);
    for n in 0..40 {
        let (a, b, c) = (pv(&mut r, n % 3), pv(&mut r, (n / 3) % 3), pv(&mut r, 1));
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        assert_eq!(ab, ba.scale(&sign((a.degree() * b.degree()) as i64)));
        assert_eq!(ab.wedge(&c).unwrap(), a.wedge(&b.wedge(&c).unwrap()).unwrap());
    }
}

#[test]
fn schouten_antisymmetry_and_jacobi() {
    let mut r = sample::rng(32);
    for n in 0..40 {
        let (a, b, c) = (pv(&mut r, n % 3), pv(&mut r, (n / 3) % 3), pv(&mut r, (n / 9) % 3));
        let (la, lb) = (a.lie_degree(), b.lie_degree());
        let ab = a.schouten(&b).unwrap();
        let ba = b.schouten(&a).unwrap();
        assert_eq!(ab, ba.scale(&-sign(la * lb)), "{a} | {b}");
        // [a,[b,c]] = [[a,b],c] + (−1)^{|a||b|} [b,[a,c]]
        let lhs = a.schouten(&b.schouten(&c).unwrap()).unwrap();
        let r1 = ab.schouten(&c).unwrap();
        let r2 = b.schouten(&a.schouten(&c).unwrap()).unwrap();
        let rhs = combine(&r1, &r2, if (la * lb) % 2 == 0 { 1 } else { -1 });
        assert!(lhs == rhs || (lhs.is_zero() && rhs.is_zero()), "{a} | {b} | {c}");
    }
}

#[test]
fn schouten_is_a_biderivation_of_wedge() {
    let mut r = sample::rng(33);
    for n in 0..40 {
        let (g, g1, g2) = (pv(&mut r, n % 3), pv(&mut r, (n / 3) % 3), pv(&mut r, (n / 9) % 3));
        let lhs = g.schouten(&g1.wedge(&g2).unwrap()).unwrap();
        let t1 = g.schouten(&g1).unwrap().wedge(&g2).unwrap();
        let t2 = g1.wedge(&g.schouten(&g2).unwrap()).unwrap();
        let s = (g1.degree() as i64 * (g.degree() as i64 + 1)) % 2;
        let rhs = combine(&t1, &t2, if s == 0 { 1 } else { -1 });
        assert!(lhs == rhs || (lhs.is_zero() && rhs.is_zero()), "{g} | {g1} | {g2}");
    }
}

#[test]
fn calculus_axioms() {
    let mut r = sample::rng(34);
    for n in 0..40 {
        let a = pv(&mut r, n % 3);
        let b = pv(&mut r, (n / 3) % 3);
        let w = sample::form(&mut r, 3, n % 4, 2, 3);
        // here |·| is the polyvector degree, the grading of the precalculus
        let (ka, kb) = (a.degree() as i64, b.degree() as i64);

        // i_a l_b − (−1)^{|a|(|b|+1)} l_b i_a = i_{[a,b]}
        let x = w.lie_derivative(&b).unwrap().contraction(&a).unwrap();
        let y = w.contraction(&a).unwrap().lie_derivative(&b).unwrap();
        let lhs = combine_f(&x, &y, &-sign(ka * (kb + 1)));
        let rhs = w.contraction(&a.schouten(&b).unwrap()).unwrap();
        assert!(same_f(&lhs, &rhs), "i-l: a={a} b={b} w={w}\n{lhs}\nvs\n{rhs}");

        // l_{a∧b} = l_a i_b + (−1)^{|a|} i_a l_b
        let lhs = w.lie_derivative(&a.wedge(&b).unwrap()).unwrap();
        let x = w.contraction(&b).unwrap().lie_derivative(&a).unwrap();
        let y = w.lie_derivative(&b).unwrap().contraction(&a).unwrap();
        let rhs = combine_f(&x, &y, &sign(ka));
        assert!(same_f(&lhs, &rhs), "l-wedge: a={a} b={b} w={w}\n{lhs}\nvs\n{rhs}");

        // d i_a − (−1)^{|a|} i_a d = l_a
        let x = w.contraction(&a).unwrap().d();
        let y = w.d().contraction(&a).unwrap();
        let lhs = combine_f(&x, &y, &-sign(ka));
        assert!(same_f(&lhs, &w.lie_derivative(&a).unwrap()));
    }
}

#[test]
fn hkr_lands_in_cocycles() {
    let mut r = sample::rng(35);
    for k in 0..=3 {
        for _ in 0..5 {
            let g = pv(&mut r, k);
            assert!(g.hkr().hoch_differential().is_zero(), "{g}");
        }
    }
}

#[test]
fn hkr_intertwines_brackets_up_to_coboundary() {
    let mut r = sample::rng(36);
    for n in 0..8 {
        let g1 = sample::polyvector(&mut r, 2, 1 + n % 2, 2, 2);
        let g2 = sample::polyvector(&mut r, 2, 1 + (n / 2) % 2, 2, 2);
        let mut y = g1.schouten(&g2).unwrap().hkr();
        y.add_assign_scaled(&g1.hkr().gerstenhaber_bracket(&g2.hkr()).unwrap(), &int(-1));
        if y.is_zero() {
            continue;
        }
        match coboundary_solve(&y, Bounds::default()).unwrap() {
            CoboundaryOutcome::Solved(f2) => assert_eq!(f2.hoch_differential(), y),
            CoboundaryOutcome::Infeasible(_) => panic!("not exact: {g1} | {g2}"),
        }
    }
}
