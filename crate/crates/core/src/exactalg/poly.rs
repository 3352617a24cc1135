//! Sparse multivariate polynomials over ℚ in the variables `x1 … xd`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::monomial::MultiIndex;
use super::rational::{parse_rational, Rational};
use crate::error::{AlgError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    dim: usize,
    terms: BTreeMap<MultiIndex, Rational>,
}

impl MultiPoly {
    pub fn zero(dim: usize) -> Self {
        MultiPoly {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Rational::one())
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        Self::monomial(MultiIndex::zero(dim), c)
    }

    /// The coordinate function `x_{axis+1}`.
    pub fn var(dim: usize, axis: usize) -> Self {
        Self::monomial(MultiIndex::unit(dim, axis), Rational::one())
    }

    pub fn monomial(exponents: MultiIndex, c: Rational) -> Self {
        let dim = exponents.dim();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exponents, c);
        }
        MultiPoly { dim, terms }
    }

    /// Builds a polynomial from possibly repeated, possibly zero terms.
    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (MultiIndex, Rational)>) -> Self {
        let mut p = Self::zero(dim);
        for (m, c) in terms {
            assert_eq!(m.dim(), dim, "monomial dimension");
            p.add_term(m, c);
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
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

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&MultiIndex, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &MultiIndex) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(MultiIndex::degree).max()
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&MultiIndex::zero(self.dim))
    }

    /// The same polynomial with its constant term removed.
    pub fn without_constant(&self) -> Self {
        let mut p = self.clone();
        p.terms.remove(&MultiIndex::zero(self.dim));
        p
    }

    pub fn add_term(&mut self, m: MultiIndex, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &MultiPoly, c: &Rational) {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    fn check_dim(&self, other: &MultiPoly) -> Result<()> {
        if self.dim != other.dim {
            return Err(AlgError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_dim(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_dim(other)?;
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_dim(other)?;
        let mut out = MultiPoly::zero(self.dim);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.add(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.dim);
        }
        MultiPoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by the monomial `c * x^m`.
    pub fn mul_monomial(&self, m: &MultiIndex, c: &Rational) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.dim);
        }
        MultiPoly {
            dim: self.dim,
            terms: self.terms.iter().map(|(k, a)| (k.add(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.dim);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact partial derivative along `axis` (0-based).
    pub fn partial(&self, axis: usize) -> Result<MultiPoly> {
        if axis >= self.dim {
            return Err(AlgError::AxisOutOfRange {
                axis,
                dim: self.dim,
            });
        }
        Ok(self.derive(&MultiIndex::unit(self.dim, axis)))
    }

    /// `∂^alpha self`.
    pub fn derive(&self, alpha: &MultiIndex) -> MultiPoly {
        debug_assert_eq!(alpha.dim(), self.dim);
        if alpha.is_zero() {
            return self.clone();
        }
        let mut out = MultiPoly::zero(self.dim);
        for (m, c) in &self.terms {
            if let Some((f, rest)) = alpha.falling_factor(m) {
                out.add_term(rest, c * Rational::from_integer(f));
            }
        }
        out
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.dim);
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += t;
        }
        acc
    }

    /// Parses text such as `3*x1^2*x2 - 1/2*x2^3` in dimension `dim`.
    pub fn parse(text: &str, dim: usize) -> Result<MultiPoly> {
        let mut p = Parser {
            src: text.as_bytes(),
            pos: 0,
            dim,
        };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(AlgError::Parse(format!(
                "unexpected input at byte {} in `{text}`",
                p.pos
            )));
        }
        Ok(out)
    }
}

impl fmt::Display for MultiPoly {
    /// Highest graded-lex term first; parses back with [`MultiPoly::parse`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_zero() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("dimension mismatch")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("dimension mismatch")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("dimension mismatch")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-Rational::one())
    }
}

/// Arithmetic selector for [`poly_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    Scale,
}

/// Right operand of [`poly_arith`].
#[derive(Debug, Clone)]
pub enum Operand {
    Poly(MultiPoly),
    Scalar(Rational),
}

/// Checked polynomial arithmetic; `Scale` takes a scalar, the rest a polynomial
/// (a scalar right operand is promoted to a constant polynomial).
pub fn poly_arith(op: PolyOp, lhs: &MultiPoly, rhs: &Operand) -> Result<MultiPoly> {
    let as_poly = |r: &Operand| match r {
        Operand::Poly(p) => p.clone(),
        Operand::Scalar(c) => MultiPoly::constant(lhs.dim(), c.clone()),
    };
    match op {
        PolyOp::Add => lhs.checked_add(&as_poly(rhs)),
        PolyOp::Sub => lhs.checked_sub(&as_poly(rhs)),
        PolyOp::Mul => lhs.checked_mul(&as_poly(rhs)),
        PolyOp::Scale => match rhs {
            Operand::Scalar(c) => Ok(lhs.scale(c)),
            Operand::Poly(p) => {
                if p.degree().unwrap_or(0) == 0 {
                    Ok(lhs.scale(&p.constant_term()))
                } else {
                    Err(AlgError::Parse("scale expects a scalar".into()))
                }
            }
        },
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    dim: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> AlgError {
        AlgError::Parse(format!(
            "{msg} at byte {} in `{}`",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn digits(&mut self) -> Result<&str> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = MultiPoly::zero(self.dim);
        let mut sign = Rational::one();
        match self.peek() {
            Some(b'-') => {
                sign = -sign;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc.add_scaled(&t, &sign);
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = Rational::one();
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -Rational::one();
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.digits()?
                .parse()
                .map_err(|_| self.err("bad exponent"))
        } else {
            Ok(1)
        }
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                let e = self.exponent()?;
                Ok(inner.pow(e))
            }
            Some(b'x') => {
                self.pos += 1;
                let idx: usize = self.digits()?.parse().map_err(|_| self.err("bad index"))?;
                if idx == 0 || idx > self.dim {
                    return Err(AlgError::AxisOutOfRange {
                        axis: idx,
                        dim: self.dim,
                    });
                }
                let e = self.exponent()?;
                let mut m = MultiIndex::zero(self.dim);
                m = m.with_axis(idx - 1, e);
                Ok(MultiPoly::monomial(m, Rational::one()))
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.digits()?.to_string();
                let text = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let d = self.digits()?;
                    format!("{n}/{d}")
                } else {
                    n
                };
                Ok(MultiPoly::constant(self.dim, parse_rational(&text)?))
            }
            _ => Err(self.err("expected a factor")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s, 2).unwrap()
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(&p("x1 + x2") * &p("x1 - x2"), p("x1^2 - x2^2"));
    }

    #[test]
    fn additive_identity() {
        let q = p("3*x1^2*x2 - 1/2*x2^3");
        assert_eq!(&q + &MultiPoly::zero(2), q);
    }

    #[test]
    fn monomial_product() {
        assert_eq!(&p("x1^2*x2") * &p("3*x1*x2^2"), p("3*x1^3*x2^3"));
    }

    #[test]
    fn partials() {
        assert_eq!(p("x1^3*x2").partial(0).unwrap(), p("3*x1^2*x2"));
        assert_eq!(p("x1^3").partial(1).unwrap(), MultiPoly::zero(2));
        let q = p("x1^2*x2^2");
        assert_eq!(q.partial(0).unwrap().partial(1).unwrap(), p("4*x1*x2"));
        assert!(matches!(
            q.partial(2),
            Err(AlgError::AxisOutOfRange { axis: 2, dim: 2 })
        ));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = MultiPoly::var(2, 0);
        let b = MultiPoly::var(3, 0);
        assert!(matches!(
            a.checked_add(&b),
            Err(AlgError::DimensionMismatch { left: 2, right: 3 })
        ));
        assert!(poly_arith(PolyOp::Mul, &a, &Operand::Poly(b)).is_err());
    }

    #[test]
    fn poly_arith_scale() {
        let q = p("x1 - 2*x2");
        let r = poly_arith(PolyOp::Scale, &q, &Operand::Scalar(rat(1, 2))).unwrap();
        assert_eq!(r, p("1/2*x1 - x2"));
    }

    #[test]
    fn display_round_trips() {
        let q = p("3*x1^2*x2 - 1/2*x2^3 + 7 - x1");
        assert_eq!(q.to_string(), "3*x1^2*x2 - 1/2*x2^3 - x1 + 7");
        assert_eq!(p(&q.to_string()), q);
        assert_eq!(MultiPoly::zero(2).to_string(), "0");
    }

    #[test]
    fn parse_parentheses_and_errors() {
        assert_eq!(p("(x1+1)^2"), p("x1^2 + 2*x1 + 1"));
        assert!(MultiPoly::parse("x3", 2).is_err());
        assert!(MultiPoly::parse("x1 +", 2).is_err());
        assert!(MultiPoly::parse("2 x1", 2).is_err());
    }

    #[test]
    fn eval_point() {
        assert_eq!(p("x1^2*x2 + 1").eval(&[int(2), rat(1, 2)]), int(3));
    }
}
