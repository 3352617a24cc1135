//! Exact solvers for `∂X = Y` on bounded cochain spaces and `b z = v` on chains.
//!
//! `∂` keeps both the coefficient monomial of a term and the sum of its
//! derivative words, so the cochain problem splits into independent blocks
//! keyed by that pair. The chain boundary keeps the total multidegree of a
//! tuple, which splits the chain problem the same way.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::chain::HochChain;
use super::cochain::PolyDiffCochain;
use crate::error::{AlgError, Result};
use crate::exactalg::rational::parse_rational;
use crate::exactalg::{leibniz_split, MultiIndex, MultiPoly, Rational};
use crate::linsolve::{Echelon, Insert, LinearRow};

/// Search space for the unknown `X` of [`coboundary_solve`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// Largest total degree of a coefficient monomial.
    pub coeff_degree: u32,
    /// Largest order of each derivative word.
    pub deriv_order: u32,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            coeff_degree: 4,
            deriv_order: 4,
        }
    }
}

/// A linear functional `φ(Y) = Σ weight · [coefficient of x^monomial in Y(words)]`
/// that vanishes on `∂` of every cochain within the bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoboundaryWitness {
    pub dim: usize,
    pub arity: usize,
    pub entries: Vec<(MultiIndex, Vec<MultiIndex>, Rational)>,
}

impl CoboundaryWitness {
    pub fn evaluate(&self, y: &PolyDiffCochain) -> Rational {
        let mut acc = Rational::zero();
        for (m, words, w) in &self.entries {
            acc += y.coeff(words).coeff(m) * w;
        }
        acc
    }

    /// Re-checks the witness: nonzero on `y`, zero on the image of every
    /// basis cochain of the relevant blocks.
    pub fn verify(&self, y: &PolyDiffCochain, bounds: Bounds) -> bool {
        if self.evaluate(y).is_zero() || y.arity() != self.arity || self.arity == 0 {
            return false;
        }
        let mut blocks = std::collections::BTreeSet::new();
        for (m, words, _) in &self.entries {
            let sigma = words.iter().fold(MultiIndex::zero(self.dim), |s, w| s.add(w));
            blocks.insert((m.clone(), sigma));
        }
        blocks.iter().all(|(m, sigma)| {
            block_unknowns(m, sigma, self.arity - 1, bounds)
                .iter()
                .all(|words| self.evaluate(&basis_image(m, words)).is_zero())
        })
    }

    pub fn to_json(&self) -> WitnessJson {
        WitnessJson {
            dim: self.dim,
            arity: self.arity,
            entries: self
                .entries
                .iter()
                .map(|(m, words, w)| WitnessEntryJson {
                    monomial: m.exponents().to_vec(),
                    words: words.iter().map(|x| x.exponents().to_vec()).collect(),
                    weight: w.to_string(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &WitnessJson) -> Result<Self> {
        let idx = |e: &Vec<u32>| {
            if e.len() != j.dim {
                Err(AlgError::DimensionMismatch {
                    left: j.dim,
                    right: e.len(),
                })
            } else {
                Ok(MultiIndex::new(e.clone()))
            }
        };
        let mut entries = Vec::with_capacity(j.entries.len());
        for e in &j.entries {
            let words = e.words.iter().map(idx).collect::<Result<Vec<_>>>()?;
            if words.len() != j.arity {
                return Err(AlgError::ArityMismatch {
                    expected: j.arity,
                    got: words.len(),
                });
            }
            entries.push((idx(&e.monomial)?, words, parse_rational(&e.weight)?));
        }
        Ok(CoboundaryWitness {
            dim: j.dim,
            arity: j.arity,
            entries,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub dim: usize,
    pub arity: usize,
    pub entries: Vec<WitnessEntryJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessEntryJson {
    pub monomial: Vec<u32>,
    pub words: Vec<Vec<u32>>,
    pub weight: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoboundaryOutcome {
    Solved(PolyDiffCochain),
    Infeasible(CoboundaryWitness),
}

fn basis_image(m: &MultiIndex, words: &[MultiIndex]) -> PolyDiffCochain {
    PolyDiffCochain::term(MultiPoly::monomial(m.clone(), Rational::one()), words.to_vec())
        .expect("well-formed basis cochain")
        .hoch_differential()
}

/// Word tuples of length `arity` summing to `sigma`, each of order ≤ the bound.
fn block_unknowns(m: &MultiIndex, sigma: &MultiIndex, arity: usize, bounds: Bounds) -> Vec<Vec<MultiIndex>> {
    if m.degree() > bounds.coeff_degree {
        return Vec::new();
    }
    if arity == 0 {
        return if sigma.is_zero() { vec![vec![]] } else { Vec::new() };
    }
    leibniz_split(sigma, arity)
        .into_iter()
        .map(|(_, w)| w)
        .filter(|w| w.iter().all(|x| x.degree() <= bounds.deriv_order))
        .collect()
}

/// Finds `X` with `∂X = Y` inside `bounds`, or a functional proving there is none.
pub fn coboundary_solve(y: &PolyDiffCochain, bounds: Bounds) -> Result<CoboundaryOutcome> {
    if y.arity() == 0 {
        return Err(AlgError::Grading("arity-0 cochains are never coboundaries".into()));
    }
    if !y.hoch_differential().is_zero() {
        return Err(AlgError::NotACocycle);
    }
    let (dim, k) = (y.dim(), y.arity() - 1);
    let mut x = PolyDiffCochain::zero(dim, k);
    for ((m, sigma), entries) in y.blocks() {
        let unknowns = block_unknowns(&m, &sigma, k, bounds);
        let images: Vec<PolyDiffCochain> = unknowns.iter().map(|w| basis_image(&m, w)).collect();

        let mut keys: BTreeMap<Vec<MultiIndex>, usize> = BTreeMap::new();
        for (words, _) in &entries {
            let n = keys.len();
            keys.entry(words.clone()).or_insert(n);
        }
        let mut cols: Vec<Vec<(usize, Rational)>> = Vec::new();
        for img in &images {
            let mut col = Vec::new();
            for (words, c) in img.terms() {
                let r = c.coeff(&m);
                if r.is_zero() {
                    continue;
                }
                let n = keys.len();
                let row = *keys.entry(words.clone()).or_insert(n);
                col.push((row, r));
            }
            cols.push(col);
        }
        let mut rows: Vec<LinearRow> = vec![LinearRow::new(Vec::new(), Rational::zero()); keys.len()];
        for (j, col) in cols.into_iter().enumerate() {
            for (r, v) in col {
                rows[r].coeffs.push((j, v));
            }
        }
        for (words, v) in &entries {
            rows[keys[words]].rhs = v.clone();
        }
        // deterministic row order: by key
        let ordered: Vec<(&Vec<MultiIndex>, usize)> = keys.iter().map(|(k, v)| (k, *v)).collect();
        let mut ech = Echelon::new(unknowns.len());
        let mut inserted_keys = Vec::with_capacity(ordered.len());
        let mut failed = false;
        for (key, r) in &ordered {
            inserted_keys.push((*key).clone());
            if ech.insert(&rows[*r]) == Insert::Contradiction {
                failed = true;
                break;
            }
        }
        if failed {
            let combo = ech.contradiction().unwrap();
            let entries = combo
                .iter()
                .map(|(i, w)| (m.clone(), inserted_keys[*i].clone(), w.clone()))
                .collect();
            return Ok(CoboundaryOutcome::Infeasible(CoboundaryWitness {
                dim,
                arity: k + 1,
                entries,
            }));
        }
        let sol = ech.particular_solution().unwrap();
        for (words, v) in unknowns.into_iter().zip(sol) {
            if !v.is_zero() {
                x.add_term(words, MultiPoly::monomial(m.clone(), v))?;
            }
        }
    }
    Ok(CoboundaryOutcome::Solved(x))
}

/// Finds `z` with `b z = v`, searching all chains of the same multidegrees.
pub fn chain_boundary_solve(v: &HochChain) -> Option<HochChain> {
    let (dim, m) = (v.dim(), v.arity());
    let mut blocks: BTreeMap<MultiIndex, Vec<(Vec<MultiIndex>, Rational)>> = BTreeMap::new();
    for (t, w) in v.terms() {
        blocks
            .entry(HochChain::multidegree(t))
            .or_default()
            .push((t.clone(), w.clone()));
    }
    let mut z = HochChain::zero(dim, m + 1);
    for (delta, entries) in blocks {
        let unknowns: Vec<Vec<MultiIndex>> =
            leibniz_split(&delta, m + 2).into_iter().map(|(_, t)| t).collect();
        let mut keys: BTreeMap<Vec<MultiIndex>, usize> = BTreeMap::new();
        let mut rows: Vec<LinearRow> = Vec::new();
        let row_of = |t: &Vec<MultiIndex>, keys: &mut BTreeMap<Vec<MultiIndex>, usize>, rows: &mut Vec<LinearRow>| {
            *keys.entry(t.clone()).or_insert_with(|| {
                rows.push(LinearRow::new(Vec::new(), Rational::zero()));
                rows.len() - 1
            })
        };
        for (t, w) in &entries {
            let r = row_of(t, &mut keys, &mut rows);
            rows[r].rhs = w.clone();
        }
        for (j, u) in unknowns.iter().enumerate() {
            let img = HochChain::basis(u.clone(), Rational::one()).chain_boundary();
            for (t, c) in img.terms() {
                let r = row_of(t, &mut keys, &mut rows);
                rows[r].coeffs.push((j, c.clone()));
            }
        }
        let mut ech = Echelon::new(unknowns.len());
        for r in keys.values() {
            if ech.insert(&rows[*r]) == Insert::Contradiction {
                return None;
            }
        }
        let sol = ech.particular_solution()?;
        for (u, c) in unknowns.into_iter().zip(sol) {
            z.add_basis(u, &c);
        }
    }
    Some(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::int;

    fn w(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    #[test]
    fn solves_second_derivative_example() {
        let y = PolyDiffCochain::words(2, vec![w(&[1, 0]), w(&[1, 0])]).scale(&int(-2));
        match coboundary_solve(&y, Bounds::default()).unwrap() {
            CoboundaryOutcome::Solved(x) => {
                assert_eq!(x.hoch_differential(), y);
                // differs from ∂_x² by a cocycle
                let d2 = PolyDiffCochain::words(2, vec![w(&[2, 0])]);
                assert!(x.try_sub(&d2).unwrap().hoch_differential().is_zero());
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn antisymmetric_bivector_is_not_exact() {
        let a = PolyDiffCochain::words(2, vec![w(&[1, 0]), w(&[0, 1])]);
        let b = PolyDiffCochain::words(2, vec![w(&[0, 1]), w(&[1, 0])]);
        let y = a.try_sub(&b).unwrap();
        for bounds in [Bounds::default(), Bounds { coeff_degree: 1, deriv_order: 2 }] {
            match coboundary_solve(&y, bounds).unwrap() {
                CoboundaryOutcome::Infeasible(wit) => assert!(wit.verify(&y, bounds)),
                o => panic!("{o:?}"),
            }
        }
    }

    #[test]
    fn zero_and_non_cocycle() {
        let z = PolyDiffCochain::zero(2, 2);
        assert_eq!(
            coboundary_solve(&z, Bounds::default()).unwrap(),
            CoboundaryOutcome::Solved(PolyDiffCochain::zero(2, 1))
        );
        let not_closed = PolyDiffCochain::words(2, vec![w(&[2, 0])]);
        assert_eq!(
            coboundary_solve(&not_closed, Bounds::default()),
            Err(AlgError::NotACocycle)
        );
    }

    #[test]
    fn witness_json_round_trip() {
        let a = PolyDiffCochain::words(2, vec![w(&[1, 0]), w(&[0, 1])]);
        let y = a.try_sub(&PolyDiffCochain::words(2, vec![w(&[0, 1]), w(&[1, 0])])).unwrap();
        let CoboundaryOutcome::Infeasible(wit) = coboundary_solve(&y, Bounds::default()).unwrap() else {
            panic!()
        };
        let s = serde_json::to_string(&wit.to_json()).unwrap();
        let back = CoboundaryWitness::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(back, wit);
    }

    #[test]
    fn boundaries_are_solved() {
        let mono = |s: &str| MultiPoly::parse(s, 2).unwrap();
        let c = HochChain::from_tuple(&[mono("x1"), mono("x2^2 + x1"), mono("x1*x2")]).unwrap();
        let v = c.chain_boundary();
        let z = chain_boundary_solve(&v).unwrap();
        assert_eq!(z.chain_boundary(), v);
        // (1, x) ↦ b = 0 but (x, y) − (y, x) is a cycle, not a boundary
        let cyc = HochChain::from_tuple(&[mono("1"), mono("x1"), mono("x2")])
            .unwrap()
            .try_sub(&HochChain::from_tuple(&[mono("1"), mono("x2"), mono("x1")]).unwrap())
            .unwrap();
        assert!(cyc.chain_boundary().is_zero());
        assert!(chain_boundary_solve(&cyc).is_none());
    }
}
