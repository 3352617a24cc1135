//! Exact sparse linear systems over ℚ.
//!
//! Rows are cleared of denominators and reduced fraction-free over ℤ
//! (`row ← p·row − r·pivot`, then divided by the content). Every stored row
//! remembers the rational combination of input rows it came from, so an
//! inconsistent system yields a witness `y` with `yᵀA = 0` and `yᵀb ≠ 0`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactalg::Rational;

/// One equation `Σ coeffs[j].1 · x_{coeffs[j].0} = rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRow {
    pub coeffs: Vec<(usize, Rational)>,
    pub rhs: Rational,
}

impl LinearRow {
    pub fn new(coeffs: Vec<(usize, Rational)>, rhs: Rational) -> Self {
        LinearRow { coeffs, rhs }
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .map(|(j, a)| a * &x[*j])
            .fold(Rational::zero(), |s, t| s + t)
    }
}

/// Result of [`solve`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// A particular solution (free variables set to zero).
    Solved(Vec<Rational>),
    /// Sparse combination `(row index, weight)` of the input rows whose
    /// left-hand sides cancel while the right-hand sides do not.
    Infeasible(Vec<(usize, Rational)>),
}

#[derive(Debug, Clone)]
struct IntRow {
    coeffs: Vec<(usize, BigInt)>,
    rhs: BigInt,
    combo: BTreeMap<usize, Rational>,
}

impl IntRow {
    fn from_rational(row: &LinearRow, index: usize) -> IntRow {
        let mut l = row.rhs.denom().clone();
        for (_, a) in &row.coeffs {
            l = l.lcm(a.denom());
        }
        let lr = Rational::from_integer(l.clone());
        let mut coeffs: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (j, a) in &row.coeffs {
            let v = (a * &lr).to_integer();
            let e = coeffs.entry(*j).or_insert_with(BigInt::zero);
            *e += v;
        }
        let coeffs = coeffs.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        let mut combo = BTreeMap::new();
        combo.insert(index, lr.clone());
        IntRow {
            coeffs,
            rhs: (&row.rhs * &lr).to_integer(),
            combo,
        }
    }

    /// `p·self − r·other`.
    fn combine(&self, p: &BigInt, other: &IntRow, r: &BigInt) -> IntRow {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + other.coeffs.len());
        let (mut i, mut j) = (0, 0);
        while i < self.coeffs.len() || j < other.coeffs.len() {
            let ci = self.coeffs.get(i).map(|t| t.0);
            let cj = other.coeffs.get(j).map(|t| t.0);
            match (ci, cj) {
                (Some(a), Some(b)) if a == b => {
                    let v = p * &self.coeffs[i].1 - r * &other.coeffs[j].1;
                    if !v.is_zero() {
                        coeffs.push((a, v));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(a), Some(b)) if a < b => {
                    coeffs.push((a, p * &self.coeffs[i].1));
                    i += 1;
                }
                (Some(_), Some(b)) => {
                    coeffs.push((b, -(r * &other.coeffs[j].1)));
                    j += 1;
                }
                (Some(a), None) => {
                    coeffs.push((a, p * &self.coeffs[i].1));
                    i += 1;
                }
                (None, Some(b)) => {
                    coeffs.push((b, -(r * &other.coeffs[j].1)));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        let pr = Rational::from_integer(p.clone());
        let rr = Rational::from_integer(r.clone());
        let mut combo: BTreeMap<usize, Rational> =
            self.combo.iter().map(|(k, v)| (*k, v * &pr)).collect();
        for (k, v) in &other.combo {
            let e = combo.entry(*k).or_insert_with(Rational::zero);
            *e -= v * &rr;
        }
        combo.retain(|_, v| !v.is_zero());
        IntRow {
            coeffs,
            rhs: p * &self.rhs - r * &other.rhs,
            combo,
        }
    }

    fn normalize(&mut self) {
        let mut g = self.rhs.abs();
        for (_, v) in &self.coeffs {
            g = g.gcd(v);
            if g.is_one() {
                break;
            }
        }
        if let Some((_, lead)) = self.coeffs.first() {
            if lead.is_negative() {
                g = -g;
            }
        }
        if g.is_zero() || g.is_one() {
            return;
        }
        for (_, v) in self.coeffs.iter_mut() {
            *v /= &g;
        }
        self.rhs /= &g;
        let gr = Rational::from_integer(g);
        for v in self.combo.values_mut() {
            *v /= &gr;
        }
    }
}

/// Incrementally built row-echelon form. Each stored row's smallest column is
/// its pivot column.
#[derive(Debug, Clone)]
pub struct Echelon {
    ncols: usize,
    pivots: BTreeMap<usize, IntRow>,
    inserted: usize,
    contradiction: Option<Vec<(usize, Rational)>>,
}

/// What happened to an inserted row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Insert {
    NewPivot(usize),
    Redundant,
    Contradiction,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            pivots: BTreeMap::new(),
            inserted: 0,
            contradiction: None,
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn rows_inserted(&self) -> usize {
        self.inserted
    }

    pub fn is_consistent(&self) -> bool {
        self.contradiction.is_none()
    }

    /// First contradiction found, as a combination of inserted rows.
    pub fn contradiction(&self) -> Option<&[(usize, Rational)]> {
        self.contradiction.as_deref()
    }

    fn reduce(&self, mut row: IntRow) -> IntRow {
        while let Some((c, v)) = row.coeffs.first().cloned() {
            let Some(piv) = self.pivots.get(&c) else {
                break;
            };
            let p = &piv.coeffs[0].1;
            let g = p.gcd(&v);
            let (pm, rm) = (p / &g, &v / &g);
            row = row.combine(&pm, piv, &rm);
            row.normalize();
        }
        row
    }

    /// Inserts the next row; its index is the number of rows inserted before it.
    pub fn insert(&mut self, row: &LinearRow) -> Insert {
        let index = self.inserted;
        self.inserted += 1;
        for (j, _) in &row.coeffs {
            assert!(*j < self.ncols, "column {j} out of range");
        }
        let mut r = IntRow::from_rational(row, index);
        r.normalize();
        let r = self.reduce(r);
        match r.coeffs.first() {
            Some((c, _)) => {
                let c = *c;
                self.pivots.insert(c, r);
                Insert::NewPivot(c)
            }
            None if r.rhs.is_zero() => Insert::Redundant,
            None => {
                if self.contradiction.is_none() {
                    self.contradiction = Some(r.combo.into_iter().collect());
                }
                Insert::Contradiction
            }
        }
    }

    /// Whether `row` (with its right-hand side) is a consequence of the rows
    /// inserted so far, i.e. lies in the affine row space.
    pub fn implies(&self, row: &LinearRow) -> bool {
        let mut r = IntRow::from_rational(row, usize::MAX);
        r.normalize();
        let r = self.reduce(r);
        r.coeffs.is_empty() && r.rhs.is_zero()
    }

    /// Whether the left-hand side of `row` lies in the span of the inserted
    /// left-hand sides (ignoring right-hand sides).
    pub fn spans(&self, coeffs: &[(usize, Rational)]) -> bool {
        let row = LinearRow::new(coeffs.to_vec(), Rational::zero());
        let mut r = IntRow::from_rational(&row, usize::MAX);
        r.normalize();
        self.reduce(r).coeffs.is_empty()
    }

    /// The value every solution assigns to `col`, if the system pins it.
    pub fn determined_value(&self, col: usize) -> Option<Rational> {
        let row = LinearRow::new(vec![(col, Rational::one())], Rational::zero());
        let mut r = IntRow::from_rational(&row, usize::MAX);
        r.normalize();
        // r = s·e_col − Σ μ_i P_i with zero left side ⇒ x_col = −rhs / s
        let scale = r.combo.get(&usize::MAX).cloned().unwrap_or_else(Rational::one);
        let reduced = self.reduce(r);
        if !reduced.coeffs.is_empty() {
            return None;
        }
        let s = reduced.combo.get(&usize::MAX).cloned().unwrap_or(scale);
        Some(-Rational::from_integer(reduced.rhs) / s)
    }

    /// Back substitution with free variables set to zero. `None` if inconsistent.
    pub fn particular_solution(&self) -> Option<Vec<Rational>> {
        if !self.is_consistent() {
            return None;
        }
        let mut x = vec![Rational::zero(); self.ncols];
        for (c, row) in self.pivots.iter().rev() {
            let mut acc = Rational::from_integer(row.rhs.clone());
            for (j, a) in row.coeffs.iter().skip(1) {
                if !x[*j].is_zero() {
                    acc -= Rational::from_integer(a.clone()) * &x[*j];
                }
            }
            x[*c] = acc / Rational::from_integer(row.coeffs[0].1.clone());
        }
        Some(x)
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }
}

/// Solves `rows` exactly, returning a solution or an infeasibility witness.
pub fn solve(ncols: usize, rows: &[LinearRow]) -> Outcome {
    let mut e = Echelon::new(ncols);
    for r in rows {
        if e.insert(r) == Insert::Contradiction {
            return Outcome::Infeasible(e.contradiction().unwrap().to_vec());
        }
    }
    Outcome::Solved(e.particular_solution().unwrap())
}

/// Checks that `combo` cancels every left-hand side and leaves a nonzero
/// right-hand side.
pub fn verify_infeasibility(ncols: usize, rows: &[LinearRow], combo: &[(usize, Rational)]) -> bool {
    let mut lhs: BTreeMap<usize, Rational> = BTreeMap::new();
    let mut rhs = Rational::zero();
    for (i, w) in combo {
        let Some(row) = rows.get(*i) else {
            return false;
        };
        for (j, a) in &row.coeffs {
            if *j >= ncols {
                return false;
            }
            *lhs.entry(*j).or_insert_with(Rational::zero) += a * w;
        }
        rhs += &row.rhs * w;
    }
    lhs.values().all(Zero::is_zero) && !rhs.is_zero()
}

/// Checks that `x` satisfies every row.
pub fn verify_solution(rows: &[LinearRow], x: &[Rational]) -> bool {
    rows.iter().all(|r| r.eval(x) == r.rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rational::{int, rat};
    use proptest::prelude::*;

    fn row(c: &[(usize, i64)], rhs: i64) -> LinearRow {
        LinearRow::new(c.iter().map(|(j, v)| (*j, int(*v))).collect(), int(rhs))
    }

    #[test]
    fn solves_small_system() {
        // x + y = 3, x − y = 1
        let rows = vec![row(&[(0, 1), (1, 1)], 3), row(&[(0, 1), (1, -1)], 1)];
        match solve(2, &rows) {
            Outcome::Solved(x) => assert_eq!(x, vec![int(2), int(1)]),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn certifies_inconsistency() {
        // 12p = 6 and 5p = −3/2
        let rows = vec![
            row(&[(0, 12)], 6),
            LinearRow::new(vec![(0, int(5))], rat(-3, 2)),
        ];
        match solve(1, &rows) {
            Outcome::Infeasible(c) => assert!(verify_infeasibility(1, &rows, &c)),
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn empty_system_is_solvable() {
        assert_eq!(solve(3, &[]), Outcome::Solved(vec![int(0), int(0), int(0)]));
    }

    #[test]
    fn determined_values_and_implication() {
        let mut e = Echelon::new(3);
        e.insert(&row(&[(0, 2), (1, 4)], 2));
        e.insert(&row(&[(1, 3)], 9));
        assert_eq!(e.determined_value(1), Some(int(3)));
        assert_eq!(e.determined_value(0), Some(int(-5)));
        assert_eq!(e.determined_value(2), None);
        assert!(e.implies(&row(&[(0, 1), (1, 1)], -2)));
        assert!(!e.implies(&row(&[(0, 1), (1, 1)], 0)));
        assert!(e.spans(&[(0, int(1)), (1, int(1))]));
        assert!(!e.spans(&[(2, int(1))]));
    }

    proptest! {
        #[test]
        fn random_systems_solve_or_certify(
            entries in prop::collection::vec(
                (prop::collection::vec((0usize..5, -4i64..5), 1..4), -5i64..6),
                0..9,
            )
        ) {
            let rows: Vec<LinearRow> = entries.iter().map(|(c, r)| row(c, *r)).collect();
            match solve(5, &rows) {
                Outcome::Solved(x) => prop_assert!(verify_solution(&rows, &x)),
                Outcome::Infeasible(c) => prop_assert!(verify_infeasibility(5, &rows, &c)),
            }
        }
    }
}
