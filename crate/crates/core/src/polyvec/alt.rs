//! Shared storage for polyvectors and forms: polynomial coefficients on
//! strictly increasing axis sets.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{AlgError, Result};
use crate::exactalg::{MultiPoly, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Alternating {
    pub dim: usize,
    pub degree: usize,
    pub terms: BTreeMap<Vec<usize>, MultiPoly>,
}

/// Sorts `axes` in place and returns the permutation sign, or `None` if an
/// axis repeats.
pub(crate) fn sort_sign(axes: &mut [usize]) -> Option<Rational> {
    let mut neg = false;
    for i in 1..axes.len() {
        let mut j = i;
        while j > 0 && axes[j - 1] > axes[j] {
            axes.swap(j - 1, j);
            neg = !neg;
            j -= 1;
        }
    }
    if axes.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(if neg { -Rational::one() } else { Rational::one() })
}

impl Alternating {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Alternating {
            dim,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Adds `c · f · e_{axes}` for an arbitrary (unsorted) axis list.
    pub fn add_term(&mut self, mut axes: Vec<usize>, f: &MultiPoly, c: &Rational) -> Result<()> {
        if axes.len() != self.degree {
            return Err(AlgError::ArityMismatch {
                expected: self.degree,
                got: axes.len(),
            });
        }
        if f.dim() != self.dim {
            return Err(AlgError::DimensionMismatch {
                left: self.dim,
                right: f.dim(),
            });
        }
        if let Some(&a) = axes.iter().find(|&&a| a >= self.dim) {
            return Err(AlgError::AxisOutOfRange {
                axis: a + 1,
                dim: self.dim,
            });
        }
        if let Some(s) = sort_sign(&mut axes) {
            self.add_sorted(axes, f, &(c * s));
        }
        Ok(())
    }

    pub fn add_sorted(&mut self, axes: Vec<usize>, f: &MultiPoly, c: &Rational) {
        if f.is_zero() || c.is_zero() {
            return;
        }
        match self.terms.get_mut(&axes) {
            Some(v) => {
                v.add_scaled(f, c);
                if v.is_zero() {
                    self.terms.remove(&axes);
                }
            }
            None => {
                self.terms.insert(axes, f.scale(c));
            }
        }
    }

    pub fn check_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(AlgError::DimensionMismatch {
                left: self.dim,
                right: other.dim,
            });
        }
        Ok(())
    }

    pub fn check_shape(&self, other: &Self) -> Result<()> {
        self.check_dim(other)?;
        if self.degree != other.degree {
            return Err(AlgError::Grading(format!(
                "degree {} vs {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn add_assign_scaled(&mut self, other: &Self, c: &Rational) {
        assert_eq!((self.dim, self.degree), (other.dim, other.degree), "shape");
        for (a, f) in &other.terms {
            self.add_sorted(a.clone(), f, c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(self.dim, self.degree);
        if !c.is_zero() {
            for (a, f) in &self.terms {
                out.terms.insert(a.clone(), f.scale(c));
            }
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = Self::zero(self.dim, self.degree + other.degree);
        for (a1, f1) in &self.terms {
            for (a2, f2) in &other.terms {
                let mut axes = a1.clone();
                axes.extend(a2.iter().copied());
                if let Some(s) = sort_sign(&mut axes) {
                    out.add_sorted(axes, &(f1 * f2), &s);
                }
            }
        }
        Ok(out)
    }

    /// Renders terms as `coeff*p1^p2` with the given axis prefix.
    pub fn fmt_with(&self, f: &mut fmt::Formatter<'_>, prefix: &str) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (axes, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            if axes.is_empty() {
                write!(f, "({c})")?;
                continue;
            }
            if *c != MultiPoly::one(self.dim) {
                write!(f, "({c})*")?;
            }
            for (j, a) in axes.iter().enumerate() {
                if j > 0 {
                    f.write_str("^")?;
                }
                write!(f, "{prefix}{}", a + 1)?;
            }
        }
        Ok(())
    }

    /// Parses `coeff*p1^p3 + (x1 - 2)*p2 + …` where `p` is the axis prefix.
    pub fn parse(text: &str, dim: usize, prefix: &str) -> Result<Self> {
        let terms = split_terms(text)?;
        let mut out: Option<Self> = None;
        for (neg, body) in terms {
            let (coeff_text, axes) = split_axes(&body, prefix, dim)?;
            let coeff = if coeff_text.trim().is_empty() {
                MultiPoly::one(dim)
            } else {
                MultiPoly::parse(&coeff_text, dim)?
            };
            let acc = out.get_or_insert_with(|| Self::zero(dim, axes.len()));
            if acc.degree != axes.len() {
                return Err(AlgError::Parse(format!(
                    "mixed degrees in `{text}`: {} and {}",
                    acc.degree,
                    axes.len()
                )));
            }
            let c = if neg { -Rational::one() } else { Rational::one() };
            acc.add_term(axes, &coeff, &c)?;
        }
        out.ok_or_else(|| AlgError::Parse("empty input".into()))
    }
}

/// Splits on `+`/`-` at parenthesis depth 0, ignoring signs right after `^`.
fn split_terms(text: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    let mut prev = ' ';
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(AlgError::Parse(format!("unbalanced `)` in `{text}`")));
                }
            }
            _ => {}
        }
        if depth == 0 && (ch == '+' || ch == '-') && prev != '^' && prev != '*' && prev != '/' {
            if !cur.trim().is_empty() {
                out.push((neg, std::mem::take(&mut cur)));
            } else if ch == '-' {
                // leading sign
                neg = !neg;
                prev = ch;
                continue;
            }
            cur.clear();
            neg = ch == '-';
            prev = ch;
            continue;
        }
        if !ch.is_whitespace() {
            prev = ch;
        }
        cur.push(ch);
    }
    if depth != 0 {
        return Err(AlgError::Parse(format!("unbalanced `(` in `{text}`")));
    }
    if !cur.trim().is_empty() {
        out.push((neg, cur));
    }
    if out.is_empty() {
        return Err(AlgError::Parse("empty input".into()));
    }
    Ok(out)
}

/// Separates `coeff*p1^p2` into the coefficient text and 0-based axes.
fn split_axes(body: &str, prefix: &str, dim: usize) -> Result<(String, Vec<usize>)> {
    let b = body.trim();
    // the wedge part is the trailing run of `prefix<digits>` joined by `^`
    let mut depth = 0i32;
    let mut start = None;
    let bytes: Vec<char> = b.chars().collect();
    for i in 0..bytes.len() {
        match bytes[i] {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth == 0 && (i == 0 || bytes[i - 1] == '*') {
            let rest: String = bytes[i..].iter().collect();
            if is_wedge(&rest, prefix) {
                start = Some(i);
                break;
            }
        }
    }
    let Some(i) = start else {
        return Ok((b.to_string(), vec![]));
    };
    let coeff: String = bytes[..i].iter().collect();
    let coeff = coeff.trim_end().trim_end_matches('*').to_string();
    let wedge: String = bytes[i..].iter().collect();
    let mut axes = Vec::new();
    for tok in wedge.split('^') {
        let n: usize = tok.trim()[prefix.len()..]
            .parse()
            .map_err(|_| AlgError::Parse(format!("bad axis `{tok}`")))?;
        if n == 0 || n > dim {
            return Err(AlgError::AxisOutOfRange { axis: n, dim });
        }
        axes.push(n - 1);
    }
    Ok((coeff, axes))
}

fn is_wedge(s: &str, prefix: &str) -> bool {
    s.split('^').all(|tok| {
        let t = tok.trim();
        t.starts_with(prefix)
            && t.len() > prefix.len()
            && t[prefix.len()..].chars().all(|c| c.is_ascii_digit())
    })
}
