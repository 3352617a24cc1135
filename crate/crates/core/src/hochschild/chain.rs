//! Hochschild chains `A^{⊗(m+1)}` and the operations acting on them.
//!
//! Chains are stored fully expanded: a weighted sum of tuples of monomials.
//! Multilinearity makes that representation canonical.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::cochain::PolyDiffCochain;
use crate::error::{AlgError, Result};
use crate::exactalg::rational::{parse_rational, sign};
use crate::exactalg::{MultiIndex, MultiPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HochChain {
    dim: usize,
    arity: usize,
    terms: BTreeMap<Vec<MultiIndex>, Rational>,
}

impl HochChain {
    pub fn zero(dim: usize, arity: usize) -> Self {
        HochChain {
            dim,
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// `(a_0, …, a_m)` expanded multilinearly. Needs at least one entry.
    pub fn from_tuple(entries: &[MultiPoly]) -> Result<Self> {
        let Some(first) = entries.first() else {
            return Err(AlgError::ArityMismatch {
                expected: 1,
                got: 0,
            });
        };
        let dim = first.dim();
        if let Some(e) = entries.iter().find(|e| e.dim() != dim) {
            return Err(AlgError::DimensionMismatch {
                left: dim,
                right: e.dim(),
            });
        }
        let mut out = Self::zero(dim, entries.len() - 1);
        let mut partial: Vec<(Vec<MultiIndex>, Rational)> = vec![(Vec::new(), Rational::one())];
        for e in entries {
            let mut next = Vec::with_capacity(partial.len() * e.len());
            for (tuple, w) in &partial {
                for (m, c) in e.terms() {
                    let mut t = tuple.clone();
                    t.push(m.clone());
                    next.push((t, w * c));
                }
            }
            partial = next;
        }
        for (t, w) in partial {
            out.add_basis(t, &w);
        }
        Ok(out)
    }

    /// A single tuple of monomials with weight `w`.
    pub fn basis(monomials: Vec<MultiIndex>, w: Rational) -> Self {
        assert!(!monomials.is_empty());
        let mut out = Self::zero(monomials[0].dim(), monomials.len() - 1);
        out.add_basis(monomials, &w);
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Degree in the reversed grading.
    pub fn degree(&self) -> i64 {
        -(self.arity as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<MultiIndex>, &Rational)> {
        self.terms.iter()
    }

    pub fn weight(&self, tuple: &[MultiIndex]) -> Rational {
        self.terms.get(tuple).cloned().unwrap_or_else(Rational::zero)
    }

    pub(crate) fn add_basis(&mut self, tuple: Vec<MultiIndex>, w: &Rational) {
        debug_assert_eq!(tuple.len(), self.arity + 1);
        if w.is_zero() {
            return;
        }
        match self.terms.get_mut(&tuple) {
            Some(v) => {
                *v += w;
                if v.is_zero() {
                    self.terms.remove(&tuple);
                }
            }
            None => {
                self.terms.insert(tuple, w.clone());
            }
        }
    }

    /// Adds `w · (f ⊗ rest)` where `f` is expanded into monomials.
    fn add_with_head(&mut self, f: &MultiPoly, rest: &[MultiIndex], w: &Rational) {
        for (m, c) in f.terms() {
            let mut t = Vec::with_capacity(rest.len() + 1);
            t.push(m.clone());
            t.extend(rest.iter().cloned());
            self.add_basis(t, &(w * c));
        }
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(AlgError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        if self.arity != other.arity {
            return Err(AlgError::ArityMismatch {
                expected: self.arity,
                got: other.arity,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        out.add_assign_scaled(other, &Rational::one());
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = self.clone();
        out.add_assign_scaled(other, &-Rational::one());
        Ok(out)
    }

    pub fn add_assign_scaled(&mut self, other: &Self, c: &Rational) {
        assert_eq!((self.dim, self.arity), (other.dim, other.arity), "chain shape");
        for (t, w) in &other.terms {
            self.add_basis(t.clone(), &(w * c));
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.dim, self.arity);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(t, w)| (t.clone(), w * c)).collect();
        }
        out
    }

    /// Sum of all exponents across the tuple; preserved by `b`, `B`.
    pub(crate) fn multidegree(tuple: &[MultiIndex]) -> MultiIndex {
        let dim = tuple[0].dim();
        tuple.iter().fold(MultiIndex::zero(dim), |s, m| s.add(m))
    }

    /// The Hochschild boundary
    /// `Σ_{i<m} (-1)^i (…, a_i a_{i+1}, …) + (-1)^m (a_m a_0, a_1, …, a_{m-1})`.
    /// Zero on arity-0 chains.
    pub fn chain_boundary(&self) -> Self {
        let m = self.arity;
        if m == 0 {
            return Self::zero(self.dim, 0);
        }
        let mut out = Self::zero(self.dim, m - 1);
        for (t, w) in &self.terms {
            for i in 0..m {
                let mut nt = Vec::with_capacity(m);
                nt.extend(t[..i].iter().cloned());
                nt.push(t[i].add(&t[i + 1]));
                nt.extend(t[i + 2..].iter().cloned());
                out.add_basis(nt, &(w * sign(i as i64)));
            }
            let mut nt = Vec::with_capacity(m);
            nt.push(t[m].add(&t[0]));
            nt.extend(t[1..m].iter().cloned());
            out.add_basis(nt, &(w * sign(m as i64)));
        }
        out
    }

    /// `I_P(a_0, …, a_m) = (a_0 P(a_1..a_k), a_{k+1}, …, a_m)` for `m ≥ k`, else 0.
    pub fn contraction_i(&self, p: &PolyDiffCochain) -> Result<Self> {
        self.check_dim(p.dim())?;
        let (k, m) = (p.arity(), self.arity);
        if m < k {
            return Ok(Self::zero(self.dim, 0));
        }
        let mut out = Self::zero(self.dim, m - k);
        for (t, w) in &self.terms {
            let args: Vec<MultiPoly> = t[1..=k]
                .iter()
                .map(|e| MultiPoly::monomial(e.clone(), Rational::one()))
                .collect();
            let val = p.apply(&args)?.mul_monomial(&t[0], &Rational::one());
            out.add_with_head(&val, &t[k + 1..], w);
        }
        Ok(out)
    }

    /// `L_Q` for `Q ∈ C^{k+1}(A)`: the straight insertions
    /// `Σ_{i=0}^{m-k} (-1)^{ki} (…, Q(a_i..a_{i+k}), …)` plus the wrapped ones
    /// `Σ_{j=m-k}^{m-1} (-1)^{m(j+1)} (Q(a_{j+1}..a_m, a_0..a_{k+j-m}), a_{k+j+1-m}, …, a_j)`.
    pub fn lie_derivative(&self, q: &PolyDiffCochain) -> Result<Self> {
        self.check_dim(q.dim())?;
        let m = self.arity as i64;
        let k = q.lie_degree();
        if m < k {
            return Ok(Self::zero(self.dim, 0));
        }
        let out_arity = (m - k) as usize;
        let mut out = Self::zero(self.dim, out_arity);
        let mono = |e: &MultiIndex| MultiPoly::monomial(e.clone(), Rational::one());
        let n = (k + 1) as usize; // arity of Q
        for (t, w) in &self.terms {
            for i in 0..=(m - k) {
                let iu = i as usize;
                let args: Vec<MultiPoly> = t[iu..iu + n].iter().map(mono).collect();
                let val = q.apply(&args)?;
                let s = w * sign(k * i);
                for (mm, c) in val.terms() {
                    let mut nt = Vec::with_capacity(out_arity + 1);
                    nt.extend(t[..iu].iter().cloned());
                    nt.push(mm.clone());
                    nt.extend(t[iu + n..].iter().cloned());
                    out.add_basis(nt, &(&s * c));
                }
            }
            for j in (m - k).max(0)..m {
                let ju = j as usize;
                let wrap_end = (k + j - m) as usize; // inclusive index into a_0..
                let mut args: Vec<MultiPoly> = t[ju + 1..].iter().map(mono).collect();
                args.extend(t[..=wrap_end].iter().map(mono));
                let val = q.apply(&args)?;
                let s = w * sign(m * (j + 1));
                out.add_with_head(&val, &t[wrap_end + 1..=ju], &s);
            }
        }
        Ok(out)
    }

    /// Connes' operator:
    /// `Σ_i (-1)^{mi} [(1, a_i, …, a_m, a_0, …, a_{i-1}) + (a_i, 1, a_{i+1}, …, a_{i-1})]`.
    pub fn connes_b(&self) -> Self {
        let m = self.arity;
        let one = MultiIndex::zero(self.dim);
        let mut out = Self::zero(self.dim, m + 1);
        for (t, w) in &self.terms {
            for i in 0..=m {
                let s = w * sign((m * i) as i64);
                let rotated: Vec<MultiIndex> =
                    t[i..].iter().chain(t[..i].iter()).cloned().collect();
                let mut a = Vec::with_capacity(m + 2);
                a.push(one.clone());
                a.extend(rotated.iter().cloned());
                out.add_basis(a, &s);
                let mut b = Vec::with_capacity(m + 2);
                b.push(rotated[0].clone());
                b.push(one.clone());
                b.extend(rotated[1..].iter().cloned());
                out.add_basis(b, &s);
            }
        }
        out
    }

    fn check_dim(&self, d: usize) -> Result<()> {
        if self.dim != d {
            return Err(AlgError::DimensionMismatch {
                left: self.dim,
                right: d,
            });
        }
        Ok(())
    }

    pub fn to_json(&self) -> ChainJson {
        ChainJson {
            dim: self.dim,
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(t, w)| ChainTermJson {
                    coeff: w.to_string(),
                    tuple: t.iter().map(|m| m.exponents().to_vec()).collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &ChainJson) -> Result<Self> {
        let mut out = Self::zero(j.dim, j.arity);
        for t in &j.terms {
            if t.tuple.len() != j.arity + 1 {
                return Err(AlgError::ArityMismatch {
                    expected: j.arity + 1,
                    got: t.tuple.len(),
                });
            }
            if let Some(e) = t.tuple.iter().find(|e| e.len() != j.dim) {
                return Err(AlgError::DimensionMismatch {
                    left: j.dim,
                    right: e.len(),
                });
            }
            let tuple = t.tuple.iter().map(|e| MultiIndex::new(e.clone())).collect();
            out.add_basis(tuple, &parse_rational(&t.coeff)?);
        }
        Ok(out)
    }
}

impl crate::exactalg::Linear for HochChain {
    fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("chain shape mismatch")
    }
    fn scale(&self, c: &Rational) -> Self {
        HochChain::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for HochChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (t, w)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{w}·(")?;
            for (j, m) in t.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{m}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainJson {
    pub dim: usize,
    pub arity: usize,
    pub terms: Vec<ChainTermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainTermJson {
    pub coeff: String,
    pub tuple: Vec<Vec<u32>>,
}

/// A chain of possibly mixed arities, stored per arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedChain {
    dim: usize,
    parts: BTreeMap<usize, HochChain>,
}

impl MixedChain {
    pub fn zero(dim: usize) -> Self {
        MixedChain {
            dim,
            parts: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn parts(&self) -> impl Iterator<Item = &HochChain> {
        self.parts.values()
    }

    pub fn part(&self, arity: usize) -> HochChain {
        self.parts
            .get(&arity)
            .cloned()
            .unwrap_or_else(|| HochChain::zero(self.dim, arity))
    }

    pub fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn add_chain(&mut self, c: &HochChain, w: &Rational) {
        assert_eq!(c.dim(), self.dim, "chain dimension");
        if c.is_zero() || w.is_zero() {
            return;
        }
        let e = self
            .parts
            .entry(c.arity())
            .or_insert_with(|| HochChain::zero(c.dim(), c.arity()));
        e.add_assign_scaled(c, w);
        if e.is_zero() {
            self.parts.remove(&c.arity());
        }
    }

    pub fn map(&self, f: impl Fn(&HochChain) -> HochChain) -> Self {
        let mut out = Self::zero(self.dim);
        for c in self.parts.values() {
            out.add_chain(&f(c), &Rational::one());
        }
        out
    }
}

impl From<HochChain> for MixedChain {
    fn from(c: HochChain) -> Self {
        let mut out = MixedChain::zero(c.dim());
        out.add_chain(&c, &Rational::one());
        out
    }
}

impl crate::exactalg::Linear for MixedChain {
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for c in other.parts.values() {
            out.add_chain(c, &Rational::one());
        }
        out
    }
    fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.dim);
        for p in self.parts.values() {
            out.add_chain(p, c);
        }
        out
    }
    fn is_zero(&self) -> bool {
        self.parts.is_empty()
    }
}

/// Element of the negative cyclic complex `C_•(A)[[u]]`, truncated at `u^{u_order}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicChain {
    coeffs: Vec<MixedChain>,
}

impl CyclicChain {
    pub fn zero(dim: usize, u_order: usize) -> Self {
        CyclicChain {
            coeffs: vec![MixedChain::zero(dim); u_order + 1],
        }
    }

    /// `c · u^0`.
    pub fn constant(c: HochChain, u_order: usize) -> Self {
        let mut out = Self::zero(c.dim(), u_order);
        out.coeffs[0] = c.into();
        out
    }

    pub fn from_coeffs(coeffs: Vec<MixedChain>) -> Self {
        assert!(!coeffs.is_empty());
        CyclicChain { coeffs }
    }

    pub fn u_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &MixedChain {
        &self.coeffs[k]
    }

    pub fn coeff_mut(&mut self, k: usize) -> &mut MixedChain {
        &mut self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(MixedChain::is_zero)
    }

    /// `∂^{Hoch} + uB`, dropping powers of `u` past the truncation.
    pub fn cyclic_differential(&self) -> Self {
        let dim = self.coeffs[0].dim();
        let n = self.u_order();
        let mut out = Self::zero(dim, n);
        let one = Rational::one();
        for (k, c) in self.coeffs.iter().enumerate() {
            for part in c.parts() {
                out.coeffs[k].add_chain(&part.chain_boundary(), &one);
                if k < n {
                    out.coeffs[k + 1].add_chain(&part.connes_b(), &one);
                }
            }
        }
        out
    }
}
