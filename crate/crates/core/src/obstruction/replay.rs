//! Step-by-step elimination for the canonical plane, cross-checked against
//! the generic system: every claimed constraint must lie in the affine row
//! space of the rows used so far (plus the gauge choice), otherwise the
//! replay stops with `ReplayMismatch`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::system::{build_coboundary_system, solve_or_certify, LinearSystem, ObstructionBounds};
use crate::error::{AlgError, Result};
use crate::exactalg::rational::{int, rat};
use crate::exactalg::{MultiIndex, MultiPoly, Rational};
use crate::linsolve::{Echelon, LinearRow};
use crate::starprod::canonical_theta;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayStep {
    pub name: String,
    pub pairs: Vec<[String; 2]>,
    pub constraints: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub steps: Vec<ReplayStep>,
    /// Coefficient of `x1` in `P(x1^3*x2^2)` forced by each of the two pairs.
    pub x_coefficient_from_first: String,
    pub x_coefficient_from_second: String,
    pub contradiction: bool,
    pub solver_status: String,
}

impl Transcript {
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, s) in self.steps.iter().enumerate() {
            out.push_str(&format!("{}. {}\n", i + 1, s.name));
            if !s.pairs.is_empty() {
                let shown: Vec<String> = s.pairs.iter().take(6).map(|[a, b]| format!("({a}, {b})")).collect();
                let more = s.pairs.len().saturating_sub(6);
                out.push_str(&format!(
                    "   pairs: {}{}\n",
                    shown.join(" "),
                    if more > 0 { format!(" … and {more} more") } else { String::new() }
                ));
            }
            for c in &s.constraints {
                out.push_str(&format!("   {c}\n"));
            }
        }
        out.push_str(&format!(
            "coefficient of x1 in P(x1^3*x2^2): {} vs {} — {}\n",
            self.x_coefficient_from_first,
            self.x_coefficient_from_second,
            if self.contradiction { "contradiction" } else { "consistent" }
        ));
        out.push_str(&format!("generic solver on the full system: {}\n", self.solver_status));
        out
    }
}

fn mi(a: u32, b: u32) -> MultiIndex {
    MultiIndex::new(vec![a, b])
}

fn mono(m: &MultiIndex) -> MultiPoly {
    MultiPoly::monomial(m.clone(), Rational::one())
}

struct Replay {
    sys: LinearSystem,
    ech: Echelon,
    c0: usize,
    steps: Vec<ReplayStep>,
}

impl Replay {
    fn col(&self, m: &MultiIndex, n: &MultiIndex) -> usize {
        self.sys.column(m, n).expect("unknown in basis")
    }

    fn insert_pairs(&mut self, pairs: &[(MultiIndex, MultiIndex)]) -> Vec<[String; 2]> {
        let mut names = Vec::new();
        for (a, b) in pairs {
            for (_, r) in self.sys.rows_of_pair(a, b) {
                self.ech.insert(&r.row);
            }
            names.push([mono(a).to_string(), mono(b).to_string()]);
        }
        names
    }

    fn require(&self, step: &str, text: &str, rows: &[LinearRow]) -> Result<()> {
        if !self.ech.is_consistent() {
            return Err(AlgError::ReplayMismatch { step: step.into(), detail: "rows became inconsistent".into() });
        }
        if let Some(r) = rows.iter().find(|r| !self.ech.implies(r)) {
            return Err(AlgError::ReplayMismatch {
                step: step.into(),
                detail: format!("`{text}` is not implied (row {:?})", r.coeffs),
            });
        }
        Ok(())
    }

    /// Rows of `P(m) = λ·c0·m` modulo constants.
    fn scaling_rows(&self, m: &MultiIndex, lambda: &Rational) -> Vec<LinearRow> {
        self.sys
            .basis
            .iter()
            .map(|n| {
                let mut coeffs = vec![(self.col(m, n), Rational::one())];
                if n == m && !lambda.is_zero() {
                    coeffs.push((self.c0, -lambda.clone()));
                }
                LinearRow::new(coeffs, Rational::zero())
            })
            .collect()
    }

    fn scaling_text(m: &MultiIndex, lambda: &Rational) -> String {
        let rhs = if lambda.is_zero() {
            "0".to_string()
        } else if lambda.is_one() {
            format!("c0*{}", mono(m))
        } else {
            format!("({lambda})*c0*{}", mono(m))
        };
        format!("P({}) = {rhs} mod constants", mono(m))
    }

    fn scaling_step(
        &mut self,
        name: &str,
        pairs: &[(MultiIndex, MultiIndex)],
        degree: u32,
        gauge: Vec<(LinearRow, String)>,
    ) -> Result<()> {
        let names = self.insert_pairs(pairs);
        let mut constraints = Vec::new();
        for (g, text) in gauge {
            self.ech.insert(&g);
            constraints.push(text);
        }
        let lambda = int(2 - degree as i64);
        for m in MultiIndex::all_of_degree(2, degree) {
            let text = Self::scaling_text(&m, &lambda);
            self.require(name, &text, &self.scaling_rows(&m, &lambda))?;
            constraints.push(text);
        }
        self.steps.push(ReplayStep { name: name.into(), pairs: names, constraints });
        Ok(())
    }

    /// `k·P(x1^3*x2^2) + (rest) ∈ 𝕂`, given as the polynomial `rest` and factor `k`,
    /// where `rest` may mention `c0` only on the monomial `x1^3*x2^2` with factor `c`.
    fn target_rows(&self, k: &Rational, c: &Rational, rest: &MultiPoly) -> Vec<LinearRow> {
        let m = mi(3, 2);
        self.sys
            .basis
            .iter()
            .map(|t| {
                let mut coeffs = vec![(self.col(&m, t), k.clone())];
                if *t == m {
                    coeffs.push((self.c0, c.clone()));
                }
                LinearRow::new(coeffs, -rest.coeff(t))
            })
            .collect()
    }
}

fn pairs_of_degrees(da: u32, db: u32) -> Vec<(MultiIndex, MultiIndex)> {
    let mut out = Vec::new();
    for a in MultiIndex::all_of_degree(2, da) {
        for b in MultiIndex::all_of_degree(2, db) {
            if a < b && (da != db || a != b) {
                out.push((a.clone(), b));
            }
        }
    }
    out
}

/// Replays the elimination on the canonical plane with `D = 5`, `Dpairs = 7`.
pub fn reproduce_contradiction() -> Result<Transcript> {
    let theta = canonical_theta(2)?;
    let sys = build_coboundary_system(&theta, ObstructionBounds { max_degree: 5, max_pair_degree: 7 })?;
    let c0 = sys.column(&mi(1, 0), &mi(1, 0)).expect("linear unknown");
    let mut rp = Replay { ech: Echelon::new(sys.ncols()), sys, c0, steps: Vec::new() };
    let (x, y) = (mi(1, 0), mi(0, 1));

    // 1. the pair of coordinates: −∂_x P(x) − ∂_y P(y) has no nonconstant part
    let names = rp.insert_pairs(&[(y.clone(), x.clone())]);
    let div_rows: Vec<LinearRow> = MultiIndex::all_in_degrees(2, 1, 4)
        .into_iter()
        .map(|t| {
            let (tx, ty) = (t.add(&x), t.add(&y));
            let coeffs = vec![
                (rp.col(&x, &tx), Rational::from_integer((tx.get(0)).into())),
                (rp.col(&y, &ty), Rational::from_integer((ty.get(1)).into())),
            ];
            LinearRow::new(coeffs, Rational::zero())
        })
        .collect();
    let text = "d/dx1 P(x1) + d/dx2 P(x2) = constant (through degree 4)";
    rp.require("linear pair", text, &div_rows)?;
    rp.steps.push(ReplayStep { name: "coordinates".into(), pairs: names, constraints: vec![text.into()] });

    // 2. gauge: a Hamiltonian shift P ↦ P + {h, ·} makes P diagonal on coordinates
    let mut gauge = Vec::new();
    for n in &rp.sys.basis {
        if *n != x {
            gauge.push(LinearRow::new(vec![(rp.col(&x, n), Rational::one())], Rational::zero()));
        }
        if *n != y {
            gauge.push(LinearRow::new(vec![(rp.col(&y, n), Rational::one())], Rational::zero()));
        }
    }
    gauge.push(LinearRow::new(
        vec![(rp.col(&x, &x), Rational::one()), (rp.col(&y, &y), -Rational::one())],
        Rational::zero(),
    ));
    for g in &gauge {
        rp.ech.insert(g);
    }
    let texts = vec!["P(x1) = c0*x1".to_string(), "P(x2) = c0*x2".to_string()];
    rp.require("gauge", "P(x1) = c0*x1", &gauge)?;
    rp.steps.push(ReplayStep { name: "Hamiltonian gauge on coordinates".into(), pairs: vec![], constraints: texts });

    // 3–5. quadratics vanish, cubics scale by −c0, quartics by −2c0
    let mut quad = pairs_of_degrees(1, 2);
    quad.extend(pairs_of_degrees(2, 2));
    // {a·x1 + b·x2, ·} only moves P(x1), P(x2) by constants; it clears two linear terms
    let gauge = vec![
        (LinearRow::new(vec![(rp.col(&mi(2, 0), &x), Rational::one())], Rational::zero()), "gauge: P(x1^2) has no x1 term".to_string()),
        (LinearRow::new(vec![(rp.col(&mi(0, 2), &y), Rational::one())], Rational::zero()), "gauge: P(x2^2) has no x2 term".to_string()),
    ];
    rp.scaling_step("quadratics", &quad, 2, gauge)?;
    let mut cubic = pairs_of_degrees(1, 3);
    cubic.extend(pairs_of_degrees(2, 3));
    rp.scaling_step("cubics", &cubic, 3, vec![])?;
    rp.scaling_step("quartics", &pairs_of_degrees(3, 3), 4, vec![])?;

    // 6–7. the two pairs that both reach x1^3*x2^2
    let before = rp.ech.clone();
    let col = rp.col(&mi(3, 2), &x);
    let pair_step = |rp: &mut Replay, name: &str, a: MultiIndex, b: MultiIndex, k: i64, c: i64, rest: MultiPoly| {
        let names = rp.insert_pairs(&[(a, b)]);
        let rows = rp.target_rows(&int(k), &int(c), &rest);
        let text = format!("{k}*P(x1^3*x2^2) + ({rest}) + {c}*c0*x1^3*x2^2 = constant");
        rp.require(name, &text, &rows)?;
        let v = rp.ech.determined_value(col).ok_or_else(|| AlgError::ReplayMismatch {
            step: name.into(),
            detail: "coefficient of x1 not determined".into(),
        })?;
        let coeff_text = format!("coefficient of x1 in P(x1^3*x2^2) = {v}");
        rp.steps.push(ReplayStep { name: name.into(), pairs: names, constraints: vec![text, coeff_text] });
        Ok::<Rational, AlgError>(v)
    };
    let v1 = pair_step(&mut rp, "pair (x1^4, x2^3)", mi(0, 3), mi(4, 0), 12, 36, MultiPoly::var(2, 0).scale(&int(-6)))?;
    rp.ech = before;
    let v2 = pair_step(&mut rp, "pair (x1^3*x2, x1*x2^2)", mi(1, 2), mi(3, 1), 5, 15, MultiPoly::var(2, 0).scale(&rat(3, 2)))?;
    if v1 != rat(1, 2) || v2 != rat(-3, 10) {
        return Err(AlgError::ReplayMismatch {
            step: "coefficients".into(),
            detail: format!("expected 1/2 and -3/10, derived {v1} and {v2}"),
        });
    }

    // 8. the two x1-rows alone, without any gauge choice, are incompatible
    let mut raw = Echelon::new(rp.sys.ncols());
    let mut used = Vec::new();
    // each row reads c·P(x1^3*x2^2)[x1] = r; dividing by c isolates the unknown
    let mut isolated = Vec::new();
    for (a, b) in [(mi(0, 3), mi(4, 0)), (mi(1, 2), mi(3, 1))] {
        let i = rp.sys.find_row(&(a, b), &x).expect("x1 row present");
        let r = &rp.sys.rows[i];
        raw.insert(&r.row);
        used.push(format!("{} = {}", row_text(&rp.sys, &r.row), r.row.rhs));
        if let [(_, c)] = r.row.coeffs.as_slice() {
            isolated.push((c.clone(), &r.row.rhs / c));
        }
    }
    let contradiction = !raw.is_consistent();
    let certificate = solve_or_certify(&rp.sys)?;
    if !contradiction || !certificate.is_infeasible() {
        return Err(AlgError::ReplayMismatch {
            step: "contradiction".into(),
            detail: "the two coefficient rows or the full system are consistent".into(),
        });
    }
    if let [(c1, v1), (c2, v2)] = isolated.as_slice() {
        let (w1, w2) = (Rational::one() / c1, Rational::one() / c2);
        used.push(format!("({w1})·first − ({w2})·second: 0 = {}", v1 - v2));
    }
    rp.steps.push(ReplayStep { name: "contradiction".into(), pairs: vec![], constraints: used });

    Ok(Transcript {
        steps: rp.steps,
        x_coefficient_from_first: v1.to_string(),
        x_coefficient_from_second: v2.to_string(),
        contradiction,
        solver_status: certificate.status().into(),
    })
}

fn row_text(sys: &LinearSystem, row: &LinearRow) -> String {
    let parts: Vec<String> = row
        .coeffs
        .iter()
        .map(|(c, v)| {
            let (m, n) = sys.unknown(*c);
            format!("{v}*P({})[{}]", mono(m), mono(n))
        })
        .collect();
    parts.join(" + ")
}
