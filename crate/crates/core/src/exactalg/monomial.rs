use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use super::rational::Rational;

/// Exponent vector of a monomial (or order vector of a derivative word).
///
/// Ordered graded-lexicographically: total degree first, then exponents
/// compared from the first axis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    pub fn new(exponents: Vec<u32>) -> Self {
        MultiIndex(exponents)
    }

    /// The unit index `e_axis`.
    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut e = vec![0; dim];
        e[axis] = 1;
        MultiIndex(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, axis: usize) -> u32 {
        self.0[axis]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.dim(), other.dim());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other` if componentwise nonnegative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        debug_assert_eq!(self.dim(), other.dim());
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(MultiIndex(out))
    }

    pub fn with_axis(&self, axis: usize, value: u32) -> MultiIndex {
        let mut e = self.0.clone();
        e[axis] = value;
        MultiIndex(e)
    }

    /// `∏ α_i!`.
    pub fn factorial(&self) -> BigInt {
        let mut acc = BigInt::one();
        for &e in &self.0 {
            for k in 2..=e {
                acc *= k;
            }
        }
        acc
    }

    /// Coefficient picked up by `∂^self` acting on the monomial `x^mono`:
    /// `∏ mono_i! / (mono_i - self_i)!`, or `None` if it kills the monomial.
    pub fn falling_factor(&self, mono: &MultiIndex) -> Option<(BigInt, MultiIndex)> {
        let rest = mono.checked_sub(self)?;
        let mut acc = BigInt::one();
        for (&m, &a) in mono.0.iter().zip(&self.0) {
            for k in (m - a + 1)..=m {
                acc *= k;
            }
        }
        Some((acc, rest))
    }

    /// All multi-indices of dimension `dim` with total degree exactly `deg`,
    /// in ascending graded-lex order.
    pub fn all_of_degree(dim: usize, deg: u32) -> Vec<MultiIndex> {
        fn rec(dim: usize, deg: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
            if prefix.len() + 1 == dim {
                prefix.push(deg);
                out.push(MultiIndex(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in 0..=deg {
                prefix.push(e);
                rec(dim, deg - e, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if dim == 0 {
            if deg == 0 {
                out.push(MultiIndex(vec![]));
            }
            return out;
        }
        rec(dim, deg, &mut Vec::with_capacity(dim), &mut out);
        out.sort();
        out
    }

    /// All multi-indices with `lo <= degree <= hi`, ascending.
    pub fn all_in_degrees(dim: usize, lo: u32, hi: u32) -> Vec<MultiIndex> {
        (lo..=hi).flat_map(|d| Self::all_of_degree(dim, d)).collect()
    }

    /// All `γ ≤ self` componentwise.
    pub fn divisors(&self) -> Vec<MultiIndex> {
        let mut out = vec![Vec::with_capacity(self.dim())];
        for &e in &self.0 {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for p in &out {
                for k in 0..=e {
                    let mut q = p.clone();
                    q.push(k);
                    next.push(q);
                }
            }
            out = next;
        }
        out.into_iter().map(MultiIndex).collect()
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    /// Renders as a monomial in `x1 … xd`, `1` for the zero index.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Splits `∂^alpha` acting on a product of `parts` factors by the
/// multinomial Leibniz rule: returns `(coefficient, [γ_0, …, γ_{parts-1}])`
/// with `Σ γ_j = alpha` and coefficient `alpha! / ∏ γ_j!`.
pub fn leibniz_split(alpha: &MultiIndex, parts: usize) -> Vec<(Rational, Vec<MultiIndex>)> {
    assert!(parts >= 1);
    let dim = alpha.dim();
    // per axis: list of (multinomial, composition of alpha_i into `parts`)
    let mut per_axis: Vec<Vec<(BigInt, Vec<u32>)>> = Vec::with_capacity(dim);
    for axis in 0..dim {
        let total = alpha.get(axis);
        let mut comps = Vec::new();
        compositions(total, parts, &mut Vec::with_capacity(parts), &mut comps);
        let tf = fact(total);
        per_axis.push(
            comps
                .into_iter()
                .map(|c| {
                    let denom: BigInt = c.iter().map(|&k| fact(k)).product();
                    (&tf / denom, c)
                })
                .collect(),
        );
    }
    let mut out: Vec<(BigInt, Vec<Vec<u32>>)> = vec![(BigInt::one(), vec![Vec::with_capacity(dim); parts])];
    for axis_choices in &per_axis {
        let mut next = Vec::with_capacity(out.len() * axis_choices.len());
        for (coef, idx) in &out {
            for (m, comp) in axis_choices {
                let mut idx2 = idx.clone();
                for (j, &k) in comp.iter().enumerate() {
                    idx2[j].push(k);
                }
                next.push((coef * m, idx2));
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|(c, idx)| {
            (
                Rational::from_integer(c),
                idx.into_iter().map(MultiIndex).collect(),
            )
        })
        .collect()
}

fn fact(n: u32) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn compositions(total: u32, parts: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if parts == 1 {
        prefix.push(total);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for k in 0..=total {
        prefix.push(k);
        compositions(total - k, parts - 1, prefix, out);
        prefix.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::int;

    #[test]
    fn graded_lex_order() {
        let a = MultiIndex::new(vec![2, 0]);
        let b = MultiIndex::new(vec![1, 1]);
        let c = MultiIndex::new(vec![0, 3]);
        assert!(b < a);
        assert!(a < c);
        assert_eq!(MultiIndex::all_of_degree(2, 2).len(), 3);
        assert_eq!(MultiIndex::all_in_degrees(2, 1, 5).len(), 20);
    }

    #[test]
    fn leibniz_two_parts() {
        // ∂_x^2 (fg) = f''g + 2f'g' + fg''
        let split = leibniz_split(&MultiIndex::new(vec![2]), 2);
        let coeffs: Vec<_> = split.iter().map(|(c, _)| c.clone()).collect();
        assert_eq!(coeffs, vec![int(1), int(2), int(1)]);
        let total: Rational = leibniz_split(&MultiIndex::new(vec![2, 1]), 3)
            .into_iter()
            .map(|(c, _)| c)
            .sum();
        // 3^3 terms-worth of weight: 3^(|alpha|)
        assert_eq!(total, int(27));
    }

    #[test]
    fn falling_factor_matches_derivative() {
        let d = MultiIndex::new(vec![2, 1]);
        let m = MultiIndex::new(vec![3, 2]);
        let (c, rest) = d.falling_factor(&m).unwrap();
        assert_eq!(c, BigInt::from(12));
        assert_eq!(rest, MultiIndex::new(vec![1, 1]));
        assert!(MultiIndex::new(vec![0, 3]).falling_factor(&m).is_none());
    }
}
