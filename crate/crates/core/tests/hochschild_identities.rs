use hochlab::exactalg::rational::{int, sign};
use hochlab::hochschild::{
    chain_boundary_solve, coboundary_solve, Bounds, CoboundaryOutcome, CyclicChain, HochChain,
    MixedChain, PolyDiffCochain,
};
use hochlab::sample;

fn lie_bracket_action(q1: &PolyDiffCochain, q2: &PolyDiffCochain, c: &HochChain) -> (HochChain, HochChain) {
    let a = c.lie_derivative(q2).unwrap().lie_derivative(q1).unwrap();
    let b = c.lie_derivative(q1).unwrap().lie_derivative(q2).unwrap();
    let s = sign((q1.arity() as i64 + 1) * (q2.arity() as i64 + 1));
    let lhs = if a.arity() == b.arity() {
        a.try_sub(&b.scale(&s)).unwrap()
    } else {
        // one side is the zero chain of a collapsed arity
        assert!(a.is_zero() || b.is_zero());
        if a.is_zero() { b.scale(&-s) } else { a }
    };
    let rhs = c.lie_derivative(&q1.gerstenhaber_bracket(q2).unwrap()).unwrap();
    (lhs, rhs)
}

fn same(a: &HochChain, b: &HochChain) -> bool {
    (a.is_zero() && b.is_zero()) || a == b
}

#[test]
fn differential_squares_to_zero() {
    let mut r = sample::rng(11);
    for n in 0..60 {
        let p = sample::cochain(&mut r, 2, n % 4, 3, 3, 3);
        assert!(p.hoch_differential().hoch_differential().is_zero(), "{p}");
    }
}

#[test]
fn differential_is_bracket_with_mu() {
    let mut r = sample::rng(12);
    let mu = PolyDiffCochain::mu(2);
    for n in 0..40 {
        let k = n % 4;
        let p = sample::cochain(&mut r, 2, k, 2, 3, 3);
        let br = mu.gerstenhaber_bracket(&p).unwrap();
        assert_eq!(p.hoch_differential(), br.scale(&sign(k as i64 + 1)), "arity {k}");
    }
}

#[test]
fn boundary_and_connes_relations() {
    let mut r = sample::rng(13);
    for n in 0..40 {
        let m = n % 5;
        let c = sample::chain(&mut r, 2, m, 3, 3);
        assert!(c.chain_boundary().chain_boundary().is_zero());
        let b = c.connes_b();
        assert!(b.connes_b().is_zero());
        let mut anti = b.chain_boundary();
        if m >= 1 {
            anti.add_assign_scaled(&c.chain_boundary().connes_b(), &int(1));
        }
        assert!(anti.is_zero(), "bB + Bb at arity {m}");
    }
}

#[test]
fn cyclic_differential_squares_to_zero() {
    let mut r = sample::rng(14);
    for _ in 0..20 {
        let mut coeffs = Vec::new();
        for _ in 0..4 {
            let mut mc = MixedChain::zero(2);
            for m in 0..3 {
                mc.add_chain(&sample::chain(&mut r, 2, m, 2, 2), &int(1));
            }
            coeffs.push(mc);
        }
        let c = CyclicChain::from_coeffs(coeffs);
        assert!(c.cyclic_differential().cyclic_differential().is_zero());
    }
}

#[test]
fn lie_derivative_is_a_module_action() {
    let mut r = sample::rng(15);
    for n in 0..40 {
        let q1 = sample::cochain(&mut r, 2, 1 + n % 3, 2, 2, 2);
        let q2 = sample::cochain(&mut r, 2, 1 + (n / 3) % 3, 2, 2, 2);
        let c = sample::chain(&mut r, 2, 1 + n % 4, 2, 2);
        let (lhs, rhs) = lie_bracket_action(&q1, &q2, &c);
        assert!(same(&lhs, &rhs), "Q1={q1} Q2={q2} c={c}\n{lhs}\nvs\n{rhs}");
    }
}

#[test]
fn connes_commutes_with_lie_derivative() {
    // exact for normalized cochains; a zero-order word sees the inserted units
    let mut r = sample::rng(16);
    for n in 0..40 {
        let p = sample::normalized_cochain(&mut r, 2, 1 + n % 3, 2, 2, 2);
        let c = sample::chain(&mut r, 2, n % 4, 2, 2);
        let bl = c.lie_derivative(&p).unwrap().connes_b();
        let lb = c.connes_b().lie_derivative(&p).unwrap();
        let s = sign(p.arity() as i64 + 1);
        let ok = if bl.arity() == lb.arity() {
            bl.try_sub(&lb.scale(&s)).unwrap().is_zero()
        } else {
            bl.is_zero() && lb.is_zero()
        };
        assert!(ok, "P={p} c={c}");
    }
}

#[test]
fn contraction_of_cocycle_with_cycle_is_cycle() {
    let mut r = sample::rng(17);
    for n in 0..30 {
        let k = 1 + n % 2;
        let x = sample::cochain(&mut r, 2, k - 1, 2, 2, 2);
        // cocycles: a coboundary plus a cup product of derivations
        let mut p = x.hoch_differential();
        let mut der = PolyDiffCochain::partial(2, n % 2);
        for _ in 1..k {
            der = der.cup(&PolyDiffCochain::partial(2, (n + 1) % 2)).unwrap();
        }
        p.add_assign_scaled(&der, &int(1));
        assert!(p.hoch_differential().is_zero());
        let c = sample::cycle(&mut r, 2, k + n % 2, 2);
        assert!(c.contraction_i(&p).unwrap().chain_boundary().is_zero(), "P={p} c={c}");
    }
}

#[test]
fn cartan_formula_up_to_homotopy() {
    let mut r = sample::rng(18);
    for n in 0..12 {
        let k = 1 + n % 2;
        let mut p = PolyDiffCochain::partial(2, n % 2).mul_function(&sample::monomial(&mut r, 2, 1));
        if k == 2 {
            p = PolyDiffCochain::partial(2, 0).cup(&PolyDiffCochain::partial(2, 1)).unwrap();
        }
        assert!(p.hoch_differential().is_zero());
        let c = sample::cycle(&mut r, 2, k + n % 2, 1);
        let bi = c.contraction_i(&p).unwrap().connes_b();
        let ib = c.connes_b().contraction_i(&p).unwrap();
        let l = c.lie_derivative(&p).unwrap();
        let mut v = bi;
        v.add_assign_scaled(&ib, &-sign(p.arity() as i64));
        v.add_assign_scaled(&l, &int(-1));
        let z = chain_boundary_solve(&v).unwrap_or_else(|| panic!("not a boundary: P={p} c={c}"));
        assert_eq!(z.chain_boundary(), v);
    }
}

#[test]
fn leibniz_up_to_homotopy() {
    // constant-coefficient cocycles of arity ≤ 2
    let w = |a: u32, b: u32| hochlab::MultiIndex::new(vec![a, b]);
    let dx = PolyDiffCochain::partial(2, 0);
    let dy = PolyDiffCochain::partial(2, 1);
    let dxdy = PolyDiffCochain::words(2, vec![w(1, 0), w(0, 1)]);
    let cands = [dx.clone(), dy.clone(), dxdy.clone(), dx.cup(&dx).unwrap()];
    for p in &cands {
        for q1 in &cands {
            for q2 in &cands[..2] {
                let lhs = p.gerstenhaber_bracket(&q1.cup(q2).unwrap()).unwrap();
                let t1 = p.gerstenhaber_bracket(q1).unwrap().cup(q2).unwrap();
                let t2 = q1.cup(&p.gerstenhaber_bracket(q2).unwrap()).unwrap();
                let s = sign(p.lie_degree() * q1.arity() as i64);
                let mut y = lhs;
                y.add_assign_scaled(&t1, &int(-1));
                y.add_assign_scaled(&t2, &-s);
                if y.is_zero() {
                    continue;
                }
                match coboundary_solve(&y, Bounds::default()).unwrap() {
                    CoboundaryOutcome::Solved(x) => assert_eq!(x.hoch_differential(), y),
                    CoboundaryOutcome::Infeasible(_) => panic!("not exact: {p} {q1} {q2}"),
                }
            }
        }
    }
}

#[test]
fn connes_and_lie_derivative_need_normalized_cochains() {
    let id = PolyDiffCochain::identity(2);
    let c = HochChain::from_tuple(&[
        hochlab::MultiPoly::parse("x1", 2).unwrap(),
        hochlab::MultiPoly::parse("x2", 2).unwrap(),
    ])
    .unwrap();
    let bl = c.lie_derivative(&id).unwrap().connes_b();
    let lb = c.connes_b().lie_derivative(&id).unwrap();
    assert_ne!(bl, lb);
}
