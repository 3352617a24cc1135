//! Polydifferential Hochschild cochains.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{AlgError, Result};
use crate::exactalg::rational::sign;
use crate::exactalg::{leibniz_split, MultiIndex, MultiPoly, Rational};

/// `(a_1, …, a_k) ↦ Σ c(x) · ∏_j ∂^{α_j} a_j`, keyed by the word tuple `(α_1, …, α_k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyDiffCochain {
    dim: usize,
    arity: usize,
    terms: BTreeMap<Vec<MultiIndex>, MultiPoly>,
}

impl PolyDiffCochain {
    pub fn zero(dim: usize, arity: usize) -> Self {
        PolyDiffCochain {
            dim,
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// The arity-0 cochain returning `f`.
    pub fn function(f: MultiPoly) -> Self {
        let dim = f.dim();
        Self::term(f, vec![]).unwrap_or_else(|_| Self::zero(dim, 0))
    }

    /// `c(x) · ∏ ∂^{words[j]} a_j`.
    pub fn term(coeff: MultiPoly, words: Vec<MultiIndex>) -> Result<Self> {
        let dim = coeff.dim();
        let mut p = Self::zero(dim, words.len());
        p.add_term(words, coeff)?;
        Ok(p)
    }

    /// The product `μ(a, b) = ab`.
    pub fn mu(dim: usize) -> Self {
        let z = MultiIndex::zero(dim);
        Self::term(MultiPoly::one(dim), vec![z.clone(), z]).unwrap()
    }

    pub fn identity(dim: usize) -> Self {
        Self::term(MultiPoly::one(dim), vec![MultiIndex::zero(dim)]).unwrap()
    }

    /// The derivation `∂_{axis}` (0-based axis).
    pub fn partial(dim: usize, axis: usize) -> Self {
        Self::term(MultiPoly::one(dim), vec![MultiIndex::unit(dim, axis)]).unwrap()
    }

    /// Constant-coefficient operator `∂^{w_1} ⊗ … ⊗ ∂^{w_k}`.
    pub fn words(dim: usize, words: Vec<MultiIndex>) -> Self {
        Self::term(MultiPoly::one(dim), words).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Degree in the shifted Lie algebra `C^{•+1}(A)`.
    pub fn lie_degree(&self) -> i64 {
        self.arity as i64 - 1
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<MultiIndex>, &MultiPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, words: &[MultiIndex]) -> MultiPoly {
        self.terms
            .get(words)
            .cloned()
            .unwrap_or_else(|| MultiPoly::zero(self.dim))
    }

    /// Largest total degree among coefficients.
    pub fn max_coeff_degree(&self) -> u32 {
        self.terms.values().filter_map(MultiPoly::degree).max().unwrap_or(0)
    }

    /// Largest order of a single derivative word.
    pub fn max_word_order(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|w| w.iter().map(MultiIndex::degree))
            .max()
            .unwrap_or(0)
    }

    pub fn add_term(&mut self, words: Vec<MultiIndex>, coeff: MultiPoly) -> Result<()> {
        if words.len() != self.arity {
            return Err(AlgError::ArityMismatch {
                expected: self.arity,
                got: words.len(),
            });
        }
        if coeff.dim() != self.dim {
            return Err(AlgError::DimensionMismatch {
                left: self.dim,
                right: coeff.dim(),
            });
        }
        if let Some(w) = words.iter().find(|w| w.dim() != self.dim) {
            return Err(AlgError::DimensionMismatch {
                left: self.dim,
                right: w.dim(),
            });
        }
        self.add_term_unchecked(words, &coeff, &Rational::one());
        Ok(())
    }

    fn add_term_unchecked(&mut self, words: Vec<MultiIndex>, coeff: &MultiPoly, c: &Rational) {
        if coeff.is_zero() || c.is_zero() {
            return;
        }
        match self.terms.get_mut(&words) {
            Some(v) => {
                v.add_scaled(coeff, c);
                if v.is_zero() {
                    self.terms.remove(&words);
                }
            }
            None => {
                self.terms.insert(words, coeff.scale(c));
            }
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

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(AlgError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
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

    /// `self += c · other` (shapes must agree).
    pub fn add_assign_scaled(&mut self, other: &Self, c: &Rational) {
        assert_eq!((self.dim, self.arity), (other.dim, other.arity), "cochain shape");
        for (w, f) in &other.terms {
            self.add_term_unchecked(w.clone(), f, c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.dim, self.arity);
        if !c.is_zero() {
            for (w, f) in &self.terms {
                out.terms.insert(w.clone(), f.scale(c));
            }
        }
        out
    }

    /// `f · P`, multiplying every coefficient by the function `f`.
    pub fn mul_function(&self, f: &MultiPoly) -> Self {
        let mut out = Self::zero(self.dim, self.arity);
        for (w, c) in &self.terms {
            out.add_term_unchecked(w.clone(), &(c * f), &Rational::one());
        }
        out
    }

    /// Evaluates on polynomial arguments.
    pub fn apply(&self, args: &[MultiPoly]) -> Result<MultiPoly> {
        if args.len() != self.arity {
            return Err(AlgError::ArityMismatch {
                expected: self.arity,
                got: args.len(),
            });
        }
        if let Some(a) = args.iter().find(|a| a.dim() != self.dim) {
            return Err(AlgError::DimensionMismatch {
                left: self.dim,
                right: a.dim(),
            });
        }
        let mut out = MultiPoly::zero(self.dim);
        for (words, c) in &self.terms {
            let mut prod = c.clone();
            for (w, a) in words.iter().zip(args) {
                if prod.is_zero() {
                    break;
                }
                prod = &prod * &a.derive(w);
            }
            out.add_scaled(&prod, &Rational::one());
        }
        Ok(out)
    }

    /// The Hochschild coboundary
    /// `a_0 P(a_1..a_k) + Σ_{i<k} (-1)^{i+1} P(.., a_i a_{i+1}, ..) + (-1)^{k+1} P(a_0..a_{k-1}) a_k`.
    pub fn hoch_differential(&self) -> Self {
        let k = self.arity;
        let zero = MultiIndex::zero(self.dim);
        let one = Rational::one();
        let mut out = Self::zero(self.dim, k + 1);
        for (words, c) in &self.terms {
            let mut first = Vec::with_capacity(k + 1);
            first.push(zero.clone());
            first.extend(words.iter().cloned());
            out.add_term_unchecked(first, c, &one);

            for i in 0..k {
                let s = sign(i as i64 + 1);
                for (m, parts) in leibniz_split(&words[i], 2) {
                    let mut w = Vec::with_capacity(k + 1);
                    w.extend(words[..i].iter().cloned());
                    w.extend(parts);
                    w.extend(words[i + 1..].iter().cloned());
                    out.add_term_unchecked(w, c, &(&m * &s));
                }
            }

            let mut last = words.clone();
            last.push(zero.clone());
            out.add_term_unchecked(last, c, &sign(k as i64 + 1));
        }
        out
    }

    /// `(P_1 ∪ P_2)(a_1..a_{k_1+k_2}) = P_1(a_1..a_{k_1}) · P_2(a_{k_1+1}..)`.
    pub fn cup(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.dim, self.arity + other.arity);
        let one = Rational::one();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend(w2.iter().cloned());
                out.add_term_unchecked(w, &(c1 * c2), &one);
            }
        }
        Ok(out)
    }

    /// `self ∘_i other`: `other` fed into argument slot `i` (0-based) of `self`.
    pub fn insert(&self, i: usize, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        if i >= self.arity {
            return Err(AlgError::ArityMismatch {
                expected: self.arity,
                got: i + 1,
            });
        }
        let n2 = other.arity;
        let mut out = Self::zero(self.dim, self.arity + n2 - 1);
        // constant coefficients absorb no derivatives, so skip those splits
        let constant = n2 > 0 && other.terms.values().all(|c| c.degree().unwrap_or(0) == 0);
        for (w1, c1) in &self.terms {
            let splits = if constant {
                let zero = MultiIndex::zero(self.dim);
                leibniz_split(&w1[i], n2)
                    .into_iter()
                    .map(|(m, mut parts)| {
                        parts.insert(0, zero.clone());
                        (m, parts)
                    })
                    .collect()
            } else {
                leibniz_split(&w1[i], n2 + 1)
            };
            for (w2, c2) in &other.terms {
                for (m, parts) in &splits {
                    let dc2 = c2.derive(&parts[0]);
                    if dc2.is_zero() {
                        continue;
                    }
                    let mut w = Vec::with_capacity(out.arity);
                    w.extend(w1[..i].iter().cloned());
                    w.extend(w2.iter().zip(&parts[1..]).map(|(b, g)| b.add(g)));
                    w.extend(w1[i + 1..].iter().cloned());
                    out.add_term_unchecked(w, &(c1 * &dc2), m);
                }
            }
        }
        Ok(out)
    }

    /// `Σ_i (-1)^{i k_2} Q_1 ∘_i Q_2`, with `k_j` the Lie degrees.
    pub fn pre_lie(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let k2 = other.lie_degree();
        let arity = (self.arity + other.arity).checked_sub(1);
        let Some(arity) = arity else {
            return Err(AlgError::Grading("bracket of two arity-0 cochains".into()));
        };
        let mut out = Self::zero(self.dim, arity);
        for i in 0..self.arity {
            out.add_assign_scaled(&self.insert(i, other)?, &sign(i as i64 * k2));
        }
        Ok(out)
    }

    /// `[Q_1, Q_2]_G = Q_1 ∘ Q_2 − (-1)^{k_1 k_2} Q_2 ∘ Q_1`.
    pub fn gerstenhaber_bracket(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        if self.arity + other.arity == 0 {
            return Err(AlgError::Grading("bracket of two arity-0 cochains".into()));
        }
        let (k1, k2) = (self.lie_degree(), other.lie_degree());
        let mut out = self.pre_lie(other)?;
        out.add_assign_scaled(&other.pre_lie(self)?, &-sign(k1 * k2));
        Ok(out)
    }

    /// Splits `self` into blocks keyed by (coefficient monomial, total word).
    pub(crate) fn blocks(&self) -> BTreeMap<(MultiIndex, MultiIndex), Vec<(Vec<MultiIndex>, Rational)>> {
        let mut out: BTreeMap<_, Vec<_>> = BTreeMap::new();
        for (words, c) in &self.terms {
            let sigma = words
                .iter()
                .fold(MultiIndex::zero(self.dim), |s, w| s.add(w));
            for (m, r) in c.terms() {
                out.entry((m.clone(), sigma.clone()))
                    .or_default()
                    .push((words.clone(), r.clone()));
            }
        }
        out
    }

    pub fn to_json(&self) -> CochainJson {
        CochainJson {
            dim: self.dim,
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| CochainTermJson {
                    coeff: c.to_string(),
                    words: w.iter().map(|m| m.exponents().to_vec()).collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &CochainJson) -> Result<Self> {
        let mut p = Self::zero(j.dim, j.arity);
        for t in &j.terms {
            let coeff = MultiPoly::parse(&t.coeff, j.dim)?;
            let words = t
                .words
                .iter()
                .map(|e| {
                    if e.len() != j.dim {
                        Err(AlgError::DimensionMismatch {
                            left: j.dim,
                            right: e.len(),
                        })
                    } else {
                        Ok(MultiIndex::new(e.clone()))
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            p.add_term(words, coeff)?;
        }
        Ok(p)
    }
}

impl crate::exactalg::Linear for PolyDiffCochain {
    fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("cochain shape mismatch")
    }
    fn scale(&self, c: &Rational) -> Self {
        PolyDiffCochain::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainJson {
    pub dim: usize,
    pub arity: usize,
    pub terms: Vec<CochainTermJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CochainTermJson {
    pub coeff: String,
    pub words: Vec<Vec<u32>>,
}

fn fmt_word(w: &MultiIndex, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if w.is_zero() {
        return f.write_str("1");
    }
    let mut first = true;
    for (axis, &e) in w.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        write!(f, "d{}", axis + 1)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for PolyDiffCochain {
    /// `(x1)·d1 ⊗ d2^2 + …`; `0` for the zero cochain.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (words, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            for (j, w) in words.iter().enumerate() {
                f.write_str(if j == 0 { "·" } else { " ⊗ " })?;
                fmt_word(w, f)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::int;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s, 2).unwrap()
    }

    fn w(e: &[u32]) -> MultiIndex {
        MultiIndex::new(e.to_vec())
    }

    #[test]
    fn apply_examples() {
        let dxdy = PolyDiffCochain::words(2, vec![w(&[1, 0]), w(&[0, 1])]);
        assert_eq!(dxdy.apply(&[p("x1^2"), p("x2^3")]).unwrap(), p("6*x1*x2^2"));
        let mu = PolyDiffCochain::mu(2);
        assert_eq!(mu.apply(&[p("x1"), p("x2")]).unwrap(), p("x1*x2"));
        let xdx = PolyDiffCochain::term(p("x1"), vec![w(&[1, 0])]).unwrap();
        assert_eq!(xdx.apply(&[p("x1^2")]).unwrap(), p("2*x1^2"));
        assert!(matches!(
            mu.apply(&[p("x1")]),
            Err(AlgError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn differential_examples() {
        assert!(PolyDiffCochain::function(p("x1")).hoch_differential().is_zero());
        assert!(PolyDiffCochain::partial(2, 0).hoch_differential().is_zero());
        let dxx = PolyDiffCochain::words(2, vec![w(&[2, 0])]);
        let expected = PolyDiffCochain::words(2, vec![w(&[1, 0]), w(&[1, 0])]).scale(&int(-2));
        assert_eq!(dxx.hoch_differential(), expected);
    }

    #[test]
    fn differential_matches_pointwise_formula() {
        // ∂P evaluated against the defining formula on concrete arguments
        let pc = PolyDiffCochain::term(p("x1*x2 + 3"), vec![w(&[1, 1]), w(&[0, 2])]).unwrap();
        let args = [p("x1^2*x2 + x2"), p("x1*x2^2"), p("x2^3 + x1")];
        let lhs = pc.hoch_differential().apply(&args).unwrap();
        let a = &args;
        let rhs = &(&(&(&a[0] * &pc.apply(&a[1..]).unwrap())
            - &pc.apply(&[&a[0] * &a[1], a[2].clone()]).unwrap())
            + &pc.apply(&[a[0].clone(), &a[1] * &a[2]]).unwrap())
            - &(&pc.apply(&a[..2]).unwrap() * &a[2]);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn cup_examples() {
        let dx = PolyDiffCochain::partial(2, 0);
        let dy = PolyDiffCochain::partial(2, 1);
        assert_eq!(
            dx.cup(&dy).unwrap(),
            PolyDiffCochain::words(2, vec![w(&[1, 0]), w(&[0, 1])])
        );
        let a = PolyDiffCochain::function(p("x1 + 1"));
        let b = PolyDiffCochain::function(p("x2"));
        assert_eq!(a.cup(&b).unwrap(), PolyDiffCochain::function(p("x1*x2 + x2")));
        let xdx = PolyDiffCochain::term(p("x1"), vec![w(&[1, 0])]).unwrap();
        let c = xdx.cup(&dy).unwrap();
        assert_eq!(
            c.apply(&[p("x1^3"), p("x2^2")]).unwrap(),
            p("6*x1^3*x2")
        );
    }

    #[test]
    fn bracket_examples() {
        let dx = PolyDiffCochain::partial(2, 0);
        let dy = PolyDiffCochain::partial(2, 1);
        assert!(dx.gerstenhaber_bracket(&dy).unwrap().is_zero());
        let xdx = PolyDiffCochain::term(p("x1"), vec![w(&[1, 0])]).unwrap();
        assert_eq!(xdx.gerstenhaber_bracket(&dx).unwrap(), dx.scale(&int(-1)));
        let mu = PolyDiffCochain::mu(2);
        assert!(mu.gerstenhaber_bracket(&mu).unwrap().is_zero());
    }

    #[test]
    fn insertion_matches_evaluation() {
        let q1 = PolyDiffCochain::term(p("x2"), vec![w(&[2, 1]), w(&[0, 1])]).unwrap();
        let q2 = PolyDiffCochain::term(p("x1^2 + x2"), vec![w(&[1, 0]), w(&[0, 0])]).unwrap();
        let a = [p("x1^3*x2"), p("x1*x2^2 + x2"), p("x1^2*x2^2")];
        let ins = q1.insert(0, &q2).unwrap().apply(&a).unwrap();
        let inner = q2.apply(&a[..2]).unwrap();
        assert_eq!(ins, q1.apply(&[inner, a[2].clone()]).unwrap());
        let ins1 = q1.insert(1, &q2).unwrap().apply(&a).unwrap();
        let inner1 = q2.apply(&a[1..]).unwrap();
        assert_eq!(ins1, q1.apply(&[a[0].clone(), inner1]).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let q = PolyDiffCochain::term(p("1/2*x1^2 - x2"), vec![w(&[2, 1]), w(&[0, 1])]).unwrap();
        let j = serde_json::to_string(&q.to_json()).unwrap();
        let back: CochainJson = serde_json::from_str(&j).unwrap();
        assert_eq!(PolyDiffCochain::from_json(&back).unwrap(), q);
    }
}
