//! Seeded generators of small random algebraic objects, shared by the CLI
//! suites and the test-suite. Pools are bounded so failures replay exactly.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

use crate::exactalg::rational::rat;
use crate::exactalg::{MultiIndex, MultiPoly, Rational};
use crate::hochschild::{HochChain, PolyDiffCochain};
use crate::polyvec::{ExtForm, PolyVector};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small nonzero rational `p/q` with `|p| ≤ 5`, `q ≤ 3`.
pub fn coefficient(rng: &mut SampleRng) -> Rational {
    loop {
        let p = rng.gen_range(-5i64..=5);
        if p != 0 {
            return rat(p, rng.gen_range(1i64..=3));
        }
    }
}

/// A random multi-index of total degree at most `max_deg`.
pub fn multi_index(rng: &mut SampleRng, dim: usize, max_deg: u32) -> MultiIndex {
    let deg = rng.gen_range(0..=max_deg);
    let mut e = vec![0u32; dim];
    for _ in 0..deg {
        e[rng.gen_range(0..dim)] += 1;
    }
    MultiIndex::new(e)
}

/// A random polynomial with up to `max_terms` terms of degree ≤ `max_deg`.
pub fn poly(rng: &mut SampleRng, dim: usize, max_deg: u32, max_terms: usize) -> MultiPoly {
    let n = rng.gen_range(1..=max_terms);
    MultiPoly::from_terms(
        dim,
        (0..n).map(|_| (multi_index(rng, dim, max_deg), coefficient(rng))),
    )
}

/// A random monomial `x^α` (coefficient one) with `deg ≤ max_deg`.
pub fn monomial(rng: &mut SampleRng, dim: usize, max_deg: u32) -> MultiPoly {
    MultiPoly::monomial(multi_index(rng, dim, max_deg), Rational::from_integer(1.into()))
}

/// A random polydifferential cochain of the given arity.
pub fn cochain(
    rng: &mut SampleRng,
    dim: usize,
    arity: usize,
    coeff_deg: u32,
    deriv_order: u32,
    max_terms: usize,
) -> PolyDiffCochain {
    let mut out = PolyDiffCochain::zero(dim, arity);
    let n = rng.gen_range(1..=max_terms);
    for _ in 0..n {
        let words = (0..arity)
            .map(|_| multi_index(rng, dim, deriv_order))
            .collect();
        let c = poly(rng, dim, coeff_deg, 2);
        out.add_term(words, c).expect("shape");
    }
    out
}

/// Like [`cochain`] but normalized: every derivative word is nonzero, so the
/// cochain vanishes as soon as one argument is a constant.
pub fn normalized_cochain(
    rng: &mut SampleRng,
    dim: usize,
    arity: usize,
    coeff_deg: u32,
    deriv_order: u32,
    max_terms: usize,
) -> PolyDiffCochain {
    let mut out = PolyDiffCochain::zero(dim, arity);
    let n = rng.gen_range(1..=max_terms);
    for _ in 0..n {
        let words = (0..arity)
            .map(|_| {
                let mut w = multi_index(rng, dim, deriv_order.max(1));
                if w.is_zero() {
                    w = MultiIndex::unit(dim, rng.gen_range(0..dim));
                }
                w
            })
            .collect();
        out.add_term(words, poly(rng, dim, coeff_deg, 2)).expect("shape");
    }
    out
}

/// A random chain of the given arity built from up to `max_terms` tuples.
pub fn chain(rng: &mut SampleRng, dim: usize, arity: usize, max_deg: u32, max_terms: usize) -> HochChain {
    let mut out = HochChain::zero(dim, arity);
    let n = rng.gen_range(1..=max_terms);
    for _ in 0..n {
        let entries: Vec<MultiPoly> = (0..=arity).map(|_| poly(rng, dim, max_deg, 2)).collect();
        let t = HochChain::from_tuple(&entries).expect("shape");
        out.add_assign_scaled(&t, &coefficient(rng));
    }
    out
}

/// A random Hochschild cycle of the given arity: an antisymmetrized tuple
/// `Σ_σ sgn σ (a_0, a_σ1, …, a_σm)`, plus a boundary.
pub fn cycle(rng: &mut SampleRng, dim: usize, arity: usize, max_deg: u32) -> HochChain {
    let a0 = poly(rng, dim, max_deg, 2);
    let rest: Vec<MultiPoly> = (0..arity).map(|_| monomial(rng, dim, max_deg.max(1))).collect();
    let mut out = HochChain::zero(dim, arity);
    for (perm, s) in permutations(arity) {
        let mut entries = vec![a0.clone()];
        entries.extend(perm.iter().map(|&i| rest[i].clone()));
        out.add_assign_scaled(&HochChain::from_tuple(&entries).unwrap(), &Rational::from_integer(s.into()));
    }
    let z = chain(rng, dim, arity + 1, max_deg.min(2), 1);
    out.add_assign_scaled(&z.chain_boundary(), &Rational::from_integer(1.into()));
    out
}

/// All permutations of `0..n` with their signs, in lexicographic order.
pub fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(prefix: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, i64)>) {
        if left.is_empty() {
            let mut inv = 0;
            for i in 0..prefix.len() {
                for j in i + 1..prefix.len() {
                    if prefix[i] > prefix[j] {
                        inv += 1;
                    }
                }
            }
            out.push((prefix.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for k in 0..left.len() {
            let v = left.remove(k);
            prefix.push(v);
            rec(prefix, left, out);
            prefix.pop();
            left.insert(k, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (0..n).collect(), &mut out);
    out
}

/// A random degree-`k` polyvector with up to `max_terms` axis words.
pub fn polyvector(rng: &mut SampleRng, dim: usize, k: usize, max_deg: u32, max_terms: usize) -> PolyVector {
    let mut out = PolyVector::zero(dim, k);
    for _ in 0..rng.gen_range(1..=max_terms) {
        let axes = subset(rng, dim, k.min(dim));
        if axes.len() == k {
            let t = PolyVector::term(poly(rng, dim, max_deg, 2), axes).expect("shape");
            out.add_assign_scaled(&t, &Rational::from_integer(1.into()));
        }
    }
    out
}

/// A random degree-`p` form with up to `max_terms` axis words.
pub fn form(rng: &mut SampleRng, dim: usize, p: usize, max_deg: u32, max_terms: usize) -> ExtForm {
    let mut out = ExtForm::zero(dim, p);
    for _ in 0..rng.gen_range(1..=max_terms) {
        let axes = subset(rng, dim, p.min(dim));
        if axes.len() == p {
            let t = ExtForm::term(poly(rng, dim, max_deg, 2), axes).expect("shape");
            out.add_assign_scaled(&t, &Rational::from_integer(1.into()));
        }
    }
    out
}

/// A random strictly increasing `k`-subset of `0..dim`.
pub fn subset(rng: &mut SampleRng, dim: usize, k: usize) -> Vec<usize> {
    let mut all: Vec<usize> = (0..dim).collect();
    all.shuffle(rng);
    let mut s: Vec<usize> = all.into_iter().take(k).collect();
    s.sort_unstable();
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_generation_is_reproducible() {
        let a = cochain(&mut rng(7), 2, 2, 3, 3, 4);
        let b = cochain(&mut rng(7), 2, 2, 3, 3, 4);
        assert_eq!(a, b);
    }

    #[test]
    fn permutation_signs() {
        let p = permutations(3);
        assert_eq!(p.len(), 6);
        assert_eq!(p.iter().map(|(_, s)| s).sum::<i64>(), 0);
        assert_eq!(p[1], (vec![0, 2, 1], -1));
    }

    #[test]
    fn cycles_are_closed() {
        let mut r = rng(3);
        for m in 0..4 {
            assert!(cycle(&mut r, 2, m, 2).chain_boundary().is_zero());
        }
    }
}
