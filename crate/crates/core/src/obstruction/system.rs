//! The coboundary equation `V(a,b) = P({a,b}) − {P(a),b} − {a,P(b)}` as an
//! exact linear system over a graded truncation, and its certificates.
//!
//! Unknowns are the coefficients `p[m][n]` of the monomial `n` in `P(m)` with
//! `1 ≤ deg m, deg n ≤ D`. Pairs `a < b` of monomials with
//! `deg a + deg b ≤ Dpairs` give one row per nonconstant target monomial `t`.
//! The bracket lowers degree by two, so the row for `(a, b, t)` touches
//! `p[{a,b}][t]`, `p[a][n]` with `deg n = deg t − deg b + 2` and `p[b][n]`
//! with `deg n = deg t − deg a + 2`. A row is kept only when all of those fit
//! the truncation; kept rows are then equations of the untruncated problem,
//! so infeasibility of the kept rows refutes every `P`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{poisson_bracket_raw, vey_raw};
use crate::error::{AlgError, Result};
use crate::exactalg::rational::parse_rational;
use crate::exactalg::{MultiIndex, MultiPoly, Rational};
use crate::linsolve::{self, LinearRow, Outcome};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionBounds {
    #[serde(rename = "D")]
    pub max_degree: u32,
    #[serde(rename = "Dpairs")]
    pub max_pair_degree: u32,
}

impl Default for ObstructionBounds {
    fn default() -> Self {
        ObstructionBounds { max_degree: 5, max_pair_degree: 7 }
    }
}

impl ObstructionBounds {
    pub fn validate(&self) -> Result<()> {
        if self.max_degree < 3 {
            return Err(AlgError::InconsistentBounds("D must be at least 3".into()));
        }
        if self.max_pair_degree > self.max_degree + 2 {
            return Err(AlgError::InconsistentBounds(format!(
                "brackets of pairs up to degree {} reach degree {}, beyond D = {}",
                self.max_pair_degree,
                self.max_pair_degree - 2,
                self.max_degree
            )));
        }
        Ok(())
    }
}

/// `P` on the monomial basis of degrees `1..=D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearMapTable {
    pub dim: usize,
    pub max_degree: u32,
    pub entries: BTreeMap<MultiIndex, MultiPoly>,
}

impl LinearMapTable {
    pub fn zero(dim: usize, max_degree: u32) -> Self {
        LinearMapTable { dim, max_degree, entries: BTreeMap::new() }
    }

    /// `{monomial: polynomial}` in text form.
    pub fn to_text(&self) -> BTreeMap<String, String> {
        self.entries.iter().map(|(m, v)| (mono(m).to_string(), v.to_string())).collect()
    }

    pub fn from_text(dim: usize, max_degree: u32, map: &BTreeMap<String, String>) -> Result<Self> {
        let mut t = Self::zero(dim, max_degree);
        for (k, v) in map {
            let m = parse_monomial(k, dim)?;
            if m.is_zero() || m.degree() > max_degree {
                return Err(AlgError::InconsistentBounds(format!("P({k}) is outside degrees 1..={max_degree}")));
            }
            let p = MultiPoly::parse(v, dim)?;
            if !p.is_zero() {
                t.entries.insert(m, p);
            }
        }
        Ok(t)
    }

    /// `P(f)` by linearity; the constant term of `f` is ignored.
    pub fn apply(&self, f: &MultiPoly) -> Result<MultiPoly> {
        let mut out = MultiPoly::zero(self.dim);
        for (m, c) in f.terms() {
            if m.is_zero() {
                continue;
            }
            if m.degree() > self.max_degree {
                return Err(AlgError::InconsistentBounds(format!("P({m}) is outside the table")));
            }
            if let Some(v) = self.entries.get(m) {
                out.add_scaled(v, c);
            }
        }
        Ok(out)
    }
}

/// One equation with its provenance: the pair `(a, b)` and the target monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemRow {
    pub pair: (MultiIndex, MultiIndex),
    pub target: MultiIndex,
    pub row: LinearRow,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearSystem {
    pub dim: usize,
    pub theta: Vec<Vec<Rational>>,
    pub bounds: ObstructionBounds,
    pub basis: Vec<MultiIndex>,
    pub rows: Vec<SystemRow>,
}

impl LinearSystem {
    pub fn ncols(&self) -> usize {
        self.basis.len() * self.basis.len()
    }

    /// Column of `p[m][n]`.
    pub fn column(&self, m: &MultiIndex, n: &MultiIndex) -> Option<usize> {
        let i = self.basis.binary_search(m).ok()?;
        let j = self.basis.binary_search(n).ok()?;
        Some(i * self.basis.len() + j)
    }

    pub fn unknown(&self, col: usize) -> (&MultiIndex, &MultiIndex) {
        let k = self.basis.len();
        (&self.basis[col / k], &self.basis[col % k])
    }

    pub fn linear_rows(&self) -> Vec<LinearRow> {
        self.rows.iter().map(|r| r.row.clone()).collect()
    }

    pub fn find_row(&self, pair: &(MultiIndex, MultiIndex), target: &MultiIndex) -> Option<usize> {
        self.rows.iter().position(|r| &r.pair == pair && &r.target == target)
    }

    pub fn rows_of_pair(&self, a: &MultiIndex, b: &MultiIndex) -> Vec<(usize, &SystemRow)> {
        let key = if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        self.rows.iter().enumerate().filter(|(_, r)| r.pair == key).collect()
    }

    pub fn table_from(&self, x: &[Rational]) -> LinearMapTable {
        let mut t = LinearMapTable::zero(self.dim, self.bounds.max_degree);
        for (col, v) in x.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let (m, n) = self.unknown(col);
            t.entries
                .entry(m.clone())
                .or_insert_with(|| MultiPoly::zero(self.dim))
                .add_scaled(&MultiPoly::monomial(n.clone(), Rational::one()), v);
        }
        t.entries.retain(|_, v| !v.is_zero());
        t
    }
}

fn mono(m: &MultiIndex) -> MultiPoly {
    MultiPoly::monomial(m.clone(), Rational::one())
}

/// Whether every unknown of the untruncated row `(a, b, t)` is a column.
fn row_complete(a: &MultiIndex, b: &MultiIndex, t: &MultiIndex, d: u32) -> bool {
    let low = a.degree().min(b.degree());
    t.degree() <= d && t.degree() + 2 <= d + low
}

/// Rows of one pair for the right-hand side `rhs(a, b)`.
fn pair_rows(
    theta: &[Vec<Rational>],
    basis: &[MultiIndex],
    d: u32,
    a: &MultiIndex,
    b: &MultiIndex,
    rhs: &MultiPoly,
) -> Result<Vec<SystemRow>> {
    let k = basis.len();
    let col = |m: &MultiIndex, n: usize| basis.binary_search(m).expect("basis monomial") * k + n;
    let (pa, pb) = (mono(a), mono(b));
    let mut acc: BTreeMap<MultiIndex, (BTreeMap<usize, Rational>, Rational)> = BTreeMap::new();
    let mut add = |t: &MultiIndex, c: usize, v: Rational| {
        let e = acc.entry(t.clone()).or_insert_with(|| (BTreeMap::new(), Rational::zero()));
        *e.0.entry(c).or_insert_with(Rational::zero) += v;
    };
    // P({a,b})
    for (m, c) in poisson_bracket_raw(theta, &pa, &pb)?.terms() {
        if m.is_zero() {
            continue;
        }
        for (j, n) in basis.iter().enumerate() {
            add(n, col(m, j), c.clone());
        }
    }
    // −{P(a), b} − {a, P(b)}
    for (j, n) in basis.iter().enumerate() {
        let pn = mono(n);
        for (t, c) in poisson_bracket_raw(theta, &pn, &pb)?.terms() {
            add(t, col(a, j), -c.clone());
        }
        for (t, c) in poisson_bracket_raw(theta, &pa, &pn)?.terms() {
            add(t, col(b, j), -c.clone());
        }
    }
    for (t, c) in rhs.terms() {
        acc.entry(t.clone()).or_insert_with(|| (BTreeMap::new(), Rational::zero())).1 += c;
    }
    let mut out = Vec::new();
    for (t, (coeffs, r)) in acc {
        if t.is_zero() || !row_complete(a, b, &t, d) {
            continue;
        }
        let coeffs: Vec<(usize, Rational)> = coeffs.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        if coeffs.is_empty() && r.is_zero() {
            continue;
        }
        out.push(SystemRow { pair: (a.clone(), b.clone()), target: t, row: LinearRow::new(coeffs, r) });
    }
    Ok(out)
}

/// The system for an arbitrary right-hand side `rhs(a, b)`; pairs are
/// processed in parallel and concatenated in a fixed order.
pub fn build_system_with<F>(theta: &[Vec<Rational>], bounds: ObstructionBounds, rhs: F) -> Result<LinearSystem>
where
    F: Fn(&MultiPoly, &MultiPoly) -> Result<MultiPoly> + Sync,
{
    crate::polyvec::PolyVector::constant_bivector(theta)?;
    bounds.validate()?;
    let dim = theta.len();
    let d = bounds.max_degree;
    let basis = MultiIndex::all_in_degrees(dim, 1, d);
    let mut pairs = Vec::new();
    for (i, a) in basis.iter().enumerate() {
        for b in &basis[i + 1..] {
            if a.degree() + b.degree() <= bounds.max_pair_degree {
                pairs.push((a.clone(), b.clone()));
            }
        }
    }
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(8);
    let chunk = pairs.len().div_ceil(workers).max(1);
    let results: Vec<Result<Vec<SystemRow>>> = std::thread::scope(|s| {
        let handles: Vec<_> = pairs
            .chunks(chunk)
            .map(|part| {
                let (basis, rhs) = (&basis, &rhs);
                s.spawn(move || {
                    let mut rows = Vec::new();
                    for (a, b) in part {
                        let r = rhs(&mono(a), &mono(b))?;
                        rows.extend(pair_rows(theta, basis, d, a, b, &r)?);
                    }
                    Ok(rows)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("row worker panicked")).collect()
    });
    let mut rows = Vec::new();
    for r in results {
        rows.extend(r?);
    }
    Ok(LinearSystem { dim, theta: theta.to_vec(), bounds, basis, rows })
}

/// The system of the coboundary equation for the Vey cocycle.
pub fn build_coboundary_system(theta: &[Vec<Rational>], bounds: ObstructionBounds) -> Result<LinearSystem> {
    build_system_with(theta, bounds, |a, b| vey_raw(theta, a, b))
}

/// `δP₀(a, b) = P₀({a,b}) − {P₀(a),b} − {a,P₀(b)}`, usable as a right-hand side.
pub fn coboundary_of<'a>(
    theta: &'a [Vec<Rational>],
    p0: &'a LinearMapTable,
) -> impl Fn(&MultiPoly, &MultiPoly) -> Result<MultiPoly> + Sync + 'a {
    move |a, b| {
        let mut out = p0.apply(&poisson_bracket_raw(theta, a, b)?)?;
        out.add_scaled(&poisson_bracket_raw(theta, &p0.apply(a)?, b)?, &-Rational::one());
        out.add_scaled(&poisson_bracket_raw(theta, a, &p0.apply(b)?)?, &-Rational::one());
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ObstructionCertificate {
    Solvable { bounds: ObstructionBounds, table: LinearMapTable },
    /// `Σ w_i · row_i` has zero left-hand side and nonzero right-hand side.
    Infeasible { bounds: ObstructionBounds, combination: Vec<(usize, Rational)> },
}

impl ObstructionCertificate {
    pub fn is_infeasible(&self) -> bool {
        matches!(self, ObstructionCertificate::Infeasible { .. })
    }

    pub fn status(&self) -> &'static str {
        if self.is_infeasible() {
            "infeasible"
        } else {
            "solvable"
        }
    }

    pub fn to_json(&self, sys: &LinearSystem) -> CertificateJson {
        match self {
            ObstructionCertificate::Solvable { bounds, table } => CertificateJson {
                status: self.status().into(),
                bounds: *bounds,
                witness: WitnessJson {
                    rows: vec![],
                    combination: vec![],
                    table: table.to_text(),
                },
            },
            ObstructionCertificate::Infeasible { bounds, combination } => CertificateJson {
                status: self.status().into(),
                bounds: *bounds,
                witness: WitnessJson {
                    rows: combination.iter().map(|(i, _)| row_json(sys, &sys.rows[*i])).collect(),
                    combination: combination.iter().map(|(_, w)| w.to_string()).collect(),
                    table: BTreeMap::new(),
                },
            },
        }
    }

    /// The same refutation inside a system with larger bounds, when every
    /// witness row reappears there.
    pub fn embed_into(&self, from: &LinearSystem, to: &LinearSystem) -> Option<Vec<(usize, Rational)>> {
        let ObstructionCertificate::Infeasible { combination, .. } = self else {
            return None;
        };
        combination
            .iter()
            .map(|(i, w)| {
                let r = &from.rows[*i];
                to.find_row(&r.pair, &r.target).map(|j| (j, w.clone()))
            })
            .collect()
    }
}

fn row_json(sys: &LinearSystem, r: &SystemRow) -> WitnessRowJson {
    WitnessRowJson {
        pair: [mono(&r.pair.0).to_string(), mono(&r.pair.1).to_string()],
        target_monomial: mono(&r.target).to_string(),
        coeffs: r
            .row
            .coeffs
            .iter()
            .map(|(c, v)| {
                let (m, n) = sys.unknown(*c);
                WitnessCoeffJson { input: mono(m).to_string(), output: mono(n).to_string(), value: v.to_string() }
            })
            .collect(),
        rhs: r.row.rhs.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub status: String,
    pub bounds: ObstructionBounds,
    pub witness: WitnessJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessJson {
    pub rows: Vec<WitnessRowJson>,
    pub combination: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub table: BTreeMap<String, String>,
}

/// A row: `Σ value · P(input)[output] = rhs`, generated by `pair` at `target_monomial`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRowJson {
    pub pair: [String; 2],
    pub target_monomial: String,
    pub coeffs: Vec<WitnessCoeffJson>,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCoeffJson {
    pub input: String,
    pub output: String,
    pub value: String,
}

/// Elimination, then an independent re-check of the result before returning:
/// a refutation is summed row by row; a solution is substituted back into
/// the coboundary equation pair by pair, recomputed from brackets.
pub fn solve_or_certify(sys: &LinearSystem) -> Result<ObstructionCertificate> {
    let rows = sys.linear_rows();
    let cert = match linsolve::solve(sys.ncols(), &rows) {
        Outcome::Solved(x) => ObstructionCertificate::Solvable { bounds: sys.bounds, table: sys.table_from(&x) },
        Outcome::Infeasible(c) => ObstructionCertificate::Infeasible { bounds: sys.bounds, combination: c },
    };
    if !verify_certificate(sys, &cert, |a, b| vey_raw(&sys.theta, a, b))? {
        return Err(AlgError::ReplayMismatch {
            step: "certificate".into(),
            detail: "elimination result failed re-verification".into(),
        });
    }
    Ok(cert)
}

/// Re-verifies a certificate against `sys`; `rhs` is the cocycle the system
/// was built from (needed to re-check solutions pair by pair).
pub fn verify_certificate<F>(sys: &LinearSystem, cert: &ObstructionCertificate, rhs: F) -> Result<bool>
where
    F: Fn(&MultiPoly, &MultiPoly) -> Result<MultiPoly>,
{
    match cert {
        ObstructionCertificate::Infeasible { combination, .. } => {
            Ok(linsolve::verify_infeasibility(sys.ncols(), &sys.linear_rows(), combination))
        }
        ObstructionCertificate::Solvable { table, .. } => {
            let dp = coboundary_of(&sys.theta, table);
            let d = sys.bounds.max_degree;
            let mut pairs: Vec<&(MultiIndex, MultiIndex)> = sys.rows.iter().map(|r| &r.pair).collect();
            pairs.dedup();
            for (a, b) in pairs {
                let (pa, pb) = (mono(a), mono(b));
                let mut residual = rhs(&pa, &pb)?;
                residual.add_scaled(&dp(&pa, &pb)?, &-Rational::one());
                for (t, c) in residual.terms() {
                    if !t.is_zero() && !c.is_zero() && row_complete(a, b, t, d) {
                        return Ok(false);
                    }
                }
            }
            Ok(linsolve::verify_solution(&sys.linear_rows(), &table_vector(sys, table)))
        }
    }
}

fn table_vector(sys: &LinearSystem, table: &LinearMapTable) -> Vec<Rational> {
    let mut x = vec![Rational::zero(); sys.ncols()];
    for (m, v) in &table.entries {
        for (n, c) in v.terms() {
            if let Some(col) = sys.column(m, n) {
                x[col] = c.clone();
            }
        }
    }
    x
}

/// Parses a monomial written as polynomial text (`x1^3*x2^2`).
pub(crate) fn parse_monomial(text: &str, dim: usize) -> Result<MultiIndex> {
    let p = MultiPoly::parse(text, dim)?;
    let mut terms = p.terms();
    match (terms.next(), terms.next()) {
        (Some((m, c)), None) if c.is_one() => Ok(m.clone()),
        _ => Err(AlgError::Parse(format!("`{text}` is not a monomial"))),
    }
}

impl CertificateJson {
    /// Rebuilds the system from `theta` and the recorded bounds, then checks
    /// the claim: for a refutation every witness row is re-derived from its
    /// pair and target and the combination re-summed; for a solution the
    /// table is substituted back. Returns a description of the first failure.
    pub fn reverify(&self, theta: &[Vec<Rational>]) -> std::result::Result<(), String> {
        let sys = build_coboundary_system(theta, self.bounds).map_err(|e| e.to_string())?;
        let dim = theta.len();
        match self.status.as_str() {
            "infeasible" => {}
            "solvable" => {
                let table = LinearMapTable::from_text(dim, self.bounds.max_degree, &self.witness.table)
                    .map_err(|e| e.to_string())?;
                let cert = ObstructionCertificate::Solvable { bounds: self.bounds, table };
                return match verify_certificate(&sys, &cert, |a, b| vey_raw(theta, a, b)) {
                    Ok(true) => Ok(()),
                    Ok(false) => Err("table does not solve the system".into()),
                    Err(e) => Err(e.to_string()),
                };
            }
            other => return Err(format!("unknown status `{other}`")),
        }
        if self.witness.rows.len() != self.witness.combination.len() {
            return Err("rows and combination differ in length".into());
        }
        let mut combo = Vec::new();
        for (r, w) in self.witness.rows.iter().zip(&self.witness.combination) {
            let a = parse_monomial(&r.pair[0], dim).map_err(|e| e.to_string())?;
            let b = parse_monomial(&r.pair[1], dim).map_err(|e| e.to_string())?;
            let t = parse_monomial(&r.target_monomial, dim).map_err(|e| e.to_string())?;
            let i = sys
                .find_row(&(a, b), &t)
                .ok_or_else(|| format!("no row for pair ({}, {}) at {}", r.pair[0], r.pair[1], r.target_monomial))?;
            if row_json(&sys, &sys.rows[i]) != *r {
                return Err(format!("row ({}, {}) at {} does not match", r.pair[0], r.pair[1], r.target_monomial));
            }
            combo.push((i, parse_rational(w).map_err(|e| e.to_string())?));
        }
        if linsolve::verify_infeasibility(sys.ncols(), &sys.linear_rows(), &combo) {
            Ok(())
        } else {
            Err("combination does not produce 0 = nonzero".into())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::starprod::canonical_theta;

    fn m(a: u32, b: u32) -> MultiIndex {
        MultiIndex::new(vec![a, b])
    }

    #[test]
    fn bounds_are_validated() {
        let th = canonical_theta(2).unwrap();
        let bad = ObstructionBounds { max_degree: 3, max_pair_degree: 6 };
        assert!(matches!(build_coboundary_system(&th, bad), Err(AlgError::InconsistentBounds(_))));
    }

    #[test]
    fn linear_pair_constrains_the_divergence() {
        // (x, y): −∂_x P(x) − ∂_y P(y) has no nonconstant part
        let th = canonical_theta(2).unwrap();
        let sys = build_coboundary_system(&th, ObstructionBounds { max_degree: 3, max_pair_degree: 4 }).unwrap();
        let rows = sys.rows_of_pair(&m(1, 0), &m(0, 1));
        assert!(!rows.is_empty());
        for (_, r) in rows {
            assert!(r.row.rhs.is_zero());
            // the pair is stored in basis order; swapping it negates the row
            let s = if r.pair.0 == m(1, 0) { -Rational::one() } else { Rational::one() };
            for (c, v) in &r.row.coeffs {
                let (input, output) = sys.unknown(*c);
                let axis = if *input == m(1, 0) { 0 } else { 1 };
                // ∓∂_axis of the output monomial lands on the target
                let d = mono(output).partial(axis).unwrap();
                assert_eq!(d.coeff(&r.target) * &s, v.clone());
            }
        }
    }

    #[test]
    fn small_bounds_are_solvable() {
        let th = canonical_theta(2).unwrap();
        let sys = build_coboundary_system(&th, ObstructionBounds { max_degree: 3, max_pair_degree: 4 }).unwrap();
        assert!(!solve_or_certify(&sys).unwrap().is_infeasible());
    }

    #[test]
    fn empty_system_is_solved_by_zero() {
        let th = canonical_theta(2).unwrap();
        let mut sys = build_coboundary_system(&th, ObstructionBounds { max_degree: 3, max_pair_degree: 2 }).unwrap();
        // only the coordinate pair (x1, x2) fits
        assert!(sys.rows.iter().all(|r| r.pair == (m(0, 1), m(1, 0))));
        sys.rows.clear();
        match solve_or_certify(&sys).unwrap() {
            ObstructionCertificate::Solvable { table, .. } => assert!(table.entries.is_empty()),
            _ => panic!("expected a solution"),
        }
    }
}
