//! The Chevalley–Eilenberg coalgebra `C(𝓛) = ⊕_{k≥1} S^k(s⁻¹𝓛)` and the
//! coderivation `Q` built from `p∘Q(v) = −∂v`, `p∘Q(v₁,v₂) = (−1)^{|v₁|+1}[v₁,v₂]`.
//!
//! Elements are expanded into basis atoms so symmetric words have a canonical
//! sorted form. The shifted degree of `s⁻¹v` is `|v| − 1`; all Koszul signs
//! use it.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_traits::{One, Zero};

use super::Dgla;
use crate::error::{AlgError, Result};
use crate::exactalg::rational::sign;
use crate::exactalg::Rational;

pub const DEFAULT_MAX_WORD: usize = 4;

/// An instance whose elements decompose over an ordered basis of homogeneous atoms.
pub trait CeBasis: Dgla {
    type Atom: Ord + Clone + Debug;

    fn atoms(&self, x: &Self::Elem) -> Vec<(Self::Atom, Rational)>;
    fn atom_elem(&self, a: &Self::Atom) -> Self::Elem;
    /// Lie degree of the atom.
    fn atom_degree(&self, a: &Self::Atom) -> i64;
}

/// A word `(v₁, …, v_n)` of homogeneous elements, read as `s⁻¹v₁ ⊙ … ⊙ s⁻¹v_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct CeWord<E> {
    pub factors: Vec<E>,
}

/// Formal sum of canonical (sorted) atom words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CeSum<A: Ord> {
    terms: BTreeMap<Vec<A>, Rational>,
}

impl<A: Ord + Clone> CeSum<A> {
    pub fn zero() -> Self {
        CeSum { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<A>, &Rational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    fn add(&mut self, w: Vec<A>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&w);
        }
    }
}

/// `Σ c · L ⊗ R` over pairs of canonical words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CeTensor<A: Ord> {
    terms: BTreeMap<(Vec<A>, Vec<A>), Rational>,
}

impl<A: Ord + Clone> CeTensor<A> {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&mut self, l: Vec<A>, r: Vec<A>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (l, r);
        let e = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }
}

fn shifted<I: CeBasis>(inst: &I, a: &I::Atom) -> i64 {
    inst.atom_degree(a) - 1
}

/// Sorts with Koszul signs; `None` when an odd atom repeats.
fn canonical<I: CeBasis>(inst: &I, mut w: Vec<I::Atom>) -> Option<(Vec<I::Atom>, Rational)> {
    let mut neg = false;
    for i in 1..w.len() {
        let mut j = i;
        while j > 0 && w[j - 1] > w[j] {
            if (shifted(inst, &w[j - 1]) * shifted(inst, &w[j])) % 2 != 0 {
                neg = !neg;
            }
            w.swap(j - 1, j);
            j -= 1;
        }
    }
    if w.windows(2).any(|p| p[0] == p[1] && shifted(inst, &p[0]) % 2 != 0) {
        return None;
    }
    Some((w, if neg { -Rational::one() } else { Rational::one() }))
}

/// Multilinear expansion of a word of elements into canonical atom words.
pub fn ce_word<I: CeBasis>(inst: &I, word: &CeWord<I::Elem>) -> Result<CeSum<I::Atom>> {
    if word.factors.is_empty() {
        return Err(AlgError::Grading("CE words have length ≥ 1".into()));
    }
    let mut partial: Vec<(Vec<I::Atom>, Rational)> = vec![(vec![], Rational::one())];
    for f in &word.factors {
        let atoms = inst.atoms(f);
        let mut next = Vec::new();
        for (w, c) in &partial {
            for (a, r) in &atoms {
                let mut w2 = w.clone();
                w2.push(a.clone());
                next.push((w2, c * r));
            }
        }
        partial = next;
    }
    let mut out = CeSum::zero();
    for (w, c) in partial {
        if let Some((w, s)) = canonical(inst, w) {
            out.add(w, c * s);
        }
    }
    Ok(out)
}

fn q_word<I: CeBasis>(inst: &I, w: &[I::Atom], out: &mut CeSum<I::Atom>, c: &Rational) -> Result<()> {
    let deg: Vec<i64> = w.iter().map(|a| shifted(inst, a)).collect();
    // unary part: (−1)^{Σ_{k<i}|v_k|'} (…, −∂v_i, …)
    let mut before = 0;
    for i in 0..w.len() {
        let dv = inst.differential(&inst.atom_elem(&w[i]))?;
        for (b, r) in inst.atoms(&dv) {
            let mut w2 = w.to_vec();
            w2[i] = b;
            if let Some((w2, s)) = canonical(inst, w2) {
                out.add(w2, -(c * r * s * sign(before)));
            }
        }
        before += deg[i];
    }
    // binary part: move v_i, v_j to the front, then (−1)^{|v_i|+1}[v_i, v_j]
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            let pre_i: i64 = deg[..i].iter().sum();
            let pre_j: i64 = deg[..j].iter().sum::<i64>() - deg[i];
            let eps = sign(deg[i] * pre_i + deg[j] * pre_j);
            let (vi, vj) = (inst.atom_elem(&w[i]), inst.atom_elem(&w[j]));
            let br = inst.bracket(&vi, &vj)?;
            let coef = c * eps * sign(inst.atom_degree(&w[i]) + 1);
            let rest: Vec<I::Atom> = w
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i && k != j)
                .map(|(_, a)| a.clone())
                .collect();
            for (b, r) in inst.atoms(&br) {
                let mut w2 = vec![b];
                w2.extend(rest.iter().cloned());
                if let Some((w2, s)) = canonical(inst, w2) {
                    out.add(w2, &coef * r * s);
                }
            }
        }
    }
    Ok(())
}

/// The coderivation `Q` on words of length at most `max_len`.
pub fn ce_coderivation<I: CeBasis>(inst: &I, x: &CeSum<I::Atom>, max_len: usize) -> Result<CeSum<I::Atom>> {
    if x.max_len() > max_len {
        return Err(AlgError::WordTooLong { len: x.max_len(), max: max_len });
    }
    let mut out = CeSum::zero();
    for (w, c) in x.terms() {
        q_word(inst, w, &mut out, c)?;
    }
    Ok(out)
}

/// `Δ(v₁,…,v_n) = Σ_{k=1}^{n−1} Σ_{Sh(k,n−k)} ± (v_σ(1..k)) ⊗ (v_σ(k+1..n))`, `Δ(v) = 0`.
pub fn ce_coproduct<I: CeBasis>(inst: &I, x: &CeSum<I::Atom>) -> CeTensor<I::Atom> {
    let mut out = CeTensor { terms: BTreeMap::new() };
    for (w, c) in x.terms() {
        let n = w.len();
        let deg: Vec<i64> = w.iter().map(|a| shifted(inst, a)).collect();
        for mask in 1u32..(1 << n) - 1 {
            let mut s = 0i64;
            let (mut l, mut r) = (Vec::new(), Vec::new());
            let mut passed = 0i64;
            for k in 0..n {
                if mask & (1 << k) != 0 {
                    s += deg[k] * passed;
                    l.push(w[k].clone());
                } else {
                    passed += deg[k];
                    r.push(w[k].clone());
                }
            }
            out.add(l, r, c * sign(s));
        }
    }
    out
}

/// `(Q ⊗ 1 + 1 ⊗ Q)` on a tensor, with `(1 ⊗ Q)(L ⊗ R) = (−1)^{|L|'} L ⊗ Q R`.
pub fn ce_tensor_coderivation<I: CeBasis>(inst: &I, t: &CeTensor<I::Atom>, max_len: usize) -> Result<CeTensor<I::Atom>> {
    let mut out = CeTensor { terms: BTreeMap::new() };
    for ((l, r), c) in &t.terms {
        let mut ls = CeSum::zero();
        ls.add(l.clone(), Rational::one());
        let mut rs = CeSum::zero();
        rs.add(r.clone(), Rational::one());
        for (ql, qc) in ce_coderivation(inst, &ls, max_len)?.terms() {
            out.add(ql.clone(), r.clone(), c * qc);
        }
        let sl: i64 = l.iter().map(|a| shifted(inst, a)).sum();
        for (qr, qc) in ce_coderivation(inst, &rs, max_len)?.terms() {
            out.add(l.clone(), qr.clone(), c * qc * sign(sl));
        }
    }
    Ok(out)
}
