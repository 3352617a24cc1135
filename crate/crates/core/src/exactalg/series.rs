//! Truncated formal power series `c_0 + c_1 ħ + … + c_N ħ^N`.

use num_traits::{One, Zero};

use super::poly::MultiPoly;
use super::rational::{factorial, Rational};
use crate::error::{AlgError, Result};

/// Values that form a ℚ-vector space.
pub trait Linear: Clone {
    fn add(&self, other: &Self) -> Self;
    fn scale(&self, c: &Rational) -> Self;
    fn is_zero(&self) -> bool;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// A zero of the same shape (dimension, arity, …) as `self`.
    fn zero_like(&self) -> Self {
        self.scale(&Rational::zero())
    }
}

/// Commutative unital rings over ℚ, used for scalar-valued series.
pub trait SeriesRing: Linear {
    fn mul(&self, other: &Self) -> Self;
    fn one_like(&self) -> Self;
}

impl Linear for Rational {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn scale(&self, c: &Rational) -> Self {
        self * c
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}

impl SeriesRing for Rational {
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
}

impl Linear for MultiPoly {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn scale(&self, c: &Rational) -> Self {
        MultiPoly::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
}

impl SeriesRing for MultiPoly {
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn one_like(&self) -> Self {
        MultiPoly::one(self.dim())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HbarSeries<V> {
    coeffs: Vec<V>,
}

impl<V> HbarSeries<V> {
    /// A series of order `coeffs.len() - 1`. Panics on an empty vector.
    pub fn new(coeffs: Vec<V>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least the ħ^0 term");
        HbarSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &V {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[V] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<V> {
        self.coeffs
    }

    pub fn map<W>(&self, f: impl FnMut(&V) -> W) -> HbarSeries<W> {
        HbarSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    fn check_order<W>(&self, other: &HbarSeries<W>) -> Result<()> {
        if self.order() != other.order() {
            return Err(AlgError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    /// Truncated Cauchy product with an arbitrary bilinear pairing:
    /// `(a·b)_n = Σ_{i+j=n} f(a_i, b_j)`, starting from `zero`.
    pub fn convolve<W, U: Linear>(
        &self,
        other: &HbarSeries<W>,
        zero: U,
        mut f: impl FnMut(&V, &W) -> U,
    ) -> Result<HbarSeries<U>> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = vec![zero; n + 1];
        for i in 0..=n {
            for j in 0..=(n - i) {
                let t = f(&self.coeffs[i], &other.coeffs[j]);
                if !t.is_zero() {
                    out[i + j] = out[i + j].add(&t);
                }
            }
        }
        Ok(HbarSeries { coeffs: out })
    }
}

impl<V: Clone> HbarSeries<V> {
    /// Keeps the terms up to `ħ^n` (`n` ≤ current order).
    pub fn truncate(&self, n: usize) -> Self {
        assert!(n <= self.order());
        HbarSeries {
            coeffs: self.coeffs[..=n].to_vec(),
        }
    }
}

impl<V: Linear> HbarSeries<V> {
    /// The constant series `c` at order `n`.
    pub fn constant(c: V, n: usize) -> Self {
        let z = c.zero_like();
        let mut coeffs = vec![z; n + 1];
        coeffs[0] = c;
        HbarSeries { coeffs }
    }

    /// `c ħ^k` at order `n` (zero if `k > n`).
    pub fn monomial(c: V, k: usize, n: usize) -> Self {
        let z = c.zero_like();
        let mut coeffs = vec![z; n + 1];
        if k <= n {
            coeffs[k] = c;
        }
        HbarSeries { coeffs }
    }

    /// Re-expresses the series at order `n`, padding with zeros or truncating.
    pub fn with_order(&self, n: usize) -> Self {
        let z = self.coeffs[0].zero_like();
        let mut coeffs: Vec<V> = self.coeffs.iter().take(n + 1).cloned().collect();
        coeffs.resize(n + 1, z);
        HbarSeries { coeffs }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(HbarSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        Ok(HbarSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map(|v| v.scale(c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Linear::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Multiplies by `ħ^k`, dropping what falls past the order.
    pub fn shift(&self, k: usize) -> Self {
        let z = self.coeffs[0].zero_like();
        let n = self.order();
        let mut coeffs = vec![z; n + 1];
        for i in 0..=n {
            if i + k <= n {
                coeffs[i + k] = self.coeffs[i].clone();
            }
        }
        HbarSeries { coeffs }
    }
}

impl<V: Linear> Linear for HbarSeries<V> {
    fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("order mismatch")
    }
    fn scale(&self, c: &Rational) -> Self {
        HbarSeries::scale(self, c)
    }
    fn is_zero(&self) -> bool {
        HbarSeries::is_zero(self)
    }
}

impl<V: SeriesRing> HbarSeries<V> {
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let zero = self.coeffs[0].zero_like();
        self.convolve(other, zero, |a, b| a.mul(b))
    }

    /// `exp(self)` truncated; the argument must have zero constant term.
    pub fn compose_exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(AlgError::NonzeroConstantTerm);
        }
        let n = self.order();
        let one = HbarSeries::constant(self.coeffs[0].one_like(), n);
        let mut acc = one.clone();
        let mut power = one;
        for k in 1..=n {
            power = power.try_mul(self)?;
            if power.is_zero() {
                break;
            }
            acc = acc.try_add(&power.scale(&(Rational::one() / factorial(k as u32))))?;
        }
        Ok(acc)
    }
}

/// Arithmetic selector for [`series_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Mul,
    /// `exp(a)`; the second operand is ignored.
    ComposeExp,
}

pub fn series_arith<V: SeriesRing>(
    op: SeriesOp,
    a: &HbarSeries<V>,
    b: &HbarSeries<V>,
) -> Result<HbarSeries<V>> {
    match op {
        SeriesOp::Add => a.try_add(b),
        SeriesOp::Mul => a.try_mul(b),
        SeriesOp::ComposeExp => a.compose_exp(),
    }
}

/// Taylor coefficients `1/k!` of `exp(x)` for `k = 0..=n`.
pub fn exp_coefficients(n: usize) -> Vec<Rational> {
    (0..=n)
        .map(|k| Rational::one() / factorial(k as u32))
        .collect()
}

/// Taylor coefficients `1/(k+1)!` of `f(x) = (e^x - 1)/x` for `k = 0..=n`.
pub fn f_series_coefficients(n: usize) -> Vec<Rational> {
    (0..=n)
        .map(|k| Rational::one() / factorial(k as u32 + 1))
        .collect()
}

/// The series of `(e^x - 1)/x` as an [`HbarSeries`] in the formal variable.
pub fn f_series(n: usize) -> HbarSeries<Rational> {
    HbarSeries::new(f_series_coefficients(n))
}
