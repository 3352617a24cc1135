//! Seeded instance generators for every check, and the runner that turns
//! them into report entries.

use std::time::Instant;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::checks::{cyclic_json, evaluate, hkr_f2, pv_series_json, series_json, Case, CHECKS};
use super::config::{theta_to_text, RunConfig, Suite};
use crate::exactalg::rational::int;
use crate::exactalg::{HbarSeries, MultiIndex, MultiPoly, Rational};
use crate::hochschild::{CyclicChain, MixedChain, PolyDiffCochain};
use crate::linsolve::{solve, Outcome};
use crate::obstruction::{
    build_coboundary_system, build_system_with, coboundary_of, reproduce_contradiction, solve_or_certify,
    CertificateJson, LinearMapTable, ObstructionBounds, Transcript,
};
use crate::polyvec::PolyVector;
use crate::sample::{self, SampleRng};
use crate::starprod::{canonical_theta, moyal_weyl};

pub const CERTIFICATE_CHECK: &str = "coboundary_system_certificate";
pub const REPLAY_CHECK: &str = "contradiction_replay";

pub fn checks_of(suite: Suite) -> Vec<&'static str> {
    let names: &[&str] = match suite {
        Suite::Identities => &CHECKS[0..7],
        Suite::Calculus => &CHECKS[7..15],
        Suite::Dgla => &CHECKS[15..20],
        Suite::Star => &CHECKS[20..24],
        Suite::Obstruction => &[
            "vey_antisymmetry",
            "vey_ce2_cocycle",
            "vey_general_matches_planar",
            CERTIFICATE_CHECK,
            REPLAY_CHECK,
            "coboundary_negative_control",
        ],
        Suite::All => return Suite::EACH.iter().flat_map(|s| checks_of(*s)).collect(),
    };
    names.to_vec()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Witness {
    Cases { cases: Vec<Case> },
    Certificate { certificate: CertificateJson },
    Transcript { transcript: Transcript },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub case: Case,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: String,
    pub instances: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
    #[serde(skip_serializing_if = "String::is_empty", default)]
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Counterexample>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    fn new(name: &str, ok: bool, instances: usize, detail: String) -> Self {
        CheckResult {
            name: name.to_string(),
            status: if ok { "pass" } else { "fail" }.to_string(),
            instances,
            elapsed_ms: None,
            detail,
            witness: None,
            counterexample: None,
        }
    }
}

/// Independent stream per check, so adding a check never shifts another's instances.
fn check_rng(cfg: &RunConfig, name: &str) -> SampleRng {
    let salt = name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3));
    sample::rng(cfg.seed ^ salt)
}

fn theta(cfg: &RunConfig) -> Vec<Vec<Rational>> {
    cfg.theta_matrix().expect("validated configuration")
}

fn theta_text(cfg: &RunConfig) -> Option<Vec<Vec<String>>> {
    Some(theta_to_text(&theta(cfg)))
}

fn plane_text() -> Option<Vec<Vec<String>>> {
    Some(theta_to_text(&canonical_theta(2).expect("even dimension")))
}

pub fn random_theta(r: &mut SampleRng, d: usize) -> Vec<Vec<Rational>> {
    let mut t = vec![vec![int(0); d]; d];
    for i in 0..d {
        for j in i + 1..d {
            let mut c = sample::coefficient(r);
            if c == int(0) {
                c = int(1);
            }
            t[i][j] = c.clone();
            t[j][i] = -c;
        }
    }
    t
}

fn monomials(dim: usize, max: u32) -> Vec<MultiPoly> {
    MultiIndex::all_in_degrees(dim, 0, max).into_iter().map(|m| MultiPoly::monomial(m, int(1))).collect()
}

fn deg(p: &MultiPoly) -> u32 {
    p.degree().unwrap_or(0)
}

fn monomial_pairs(dim: usize, max: u32) -> Vec<(MultiPoly, MultiPoly)> {
    let ms = monomials(dim, max);
    let mut out = Vec::new();
    for a in &ms {
        for b in ms.iter().filter(|b| deg(a) + deg(b) <= max) {
            out.push((a.clone(), b.clone()));
        }
    }
    out
}

fn gauge_series(r: &mut SampleRng, dim: usize, order: usize) -> HbarSeries<PolyDiffCochain> {
    let mut c = vec![PolyDiffCochain::zero(dim, 1)];
    for _ in 0..order {
        c.push(sample::normalized_cochain(r, dim, 1, 1, 2, 2));
    }
    HbarSeries::new(c)
}

pub fn random_table(r: &mut SampleRng, dim: usize, d: u32) -> LinearMapTable {
    let mut t = LinearMapTable::zero(dim, d);
    for m in MultiIndex::all_in_degrees(dim, 1, d) {
        if r.gen_bool(0.5) {
            let p = sample::poly(r, dim, d, 3);
            let p = MultiPoly::from_terms(dim, p.terms().filter(|(n, _)| n.degree() >= 1).map(|(n, c)| (n.clone(), c.clone())));
            if !p.is_zero() {
                t.entries.insert(m, p);
            }
        }
    }
    t
}

/// Cases of a case-based check, and whether they are kept as a witness.
fn cases(name: &str, cfg: &RunConfig) -> Result<(Vec<Case>, bool), String> {
    let mut r = check_rng(cfg, name);
    let r = &mut r;
    let n = &cfg.counts;
    let dim = cfg.dim;
    let (cd, dord) = (cfg.coeff_degree, cfg.deriv_order);
    let plain = |dim| Case { dim: Some(dim), ..Default::default() };
    let mut out = Vec::new();
    let mut keep = false;
    match name {
        "hochschild_differential_squares_to_zero" => {
            for i in 0..n.complex {
                out.push(Case { cochains: vec![sample::cochain(r, dim, i % 4, cd, dord, 3).to_json()], ..plain(dim) });
            }
        }
        "chain_boundary_squares_to_zero" | "connes_b_squares_to_zero" | "boundary_anticommutes_with_connes_b" => {
            for i in 0..n.complex {
                let c = sample::chain(r, dim, i % (cfg.chain_arity + 1), cfg.chain_degree, 3);
                out.push(Case { chains: vec![c.to_json()], ..plain(dim) });
            }
        }
        "negative_cyclic_differential_squares_to_zero" => {
            for i in 0..n.complex {
                let coeffs = (0..=cfg.u_order)
                    .map(|_| {
                        let mut mc = MixedChain::zero(dim);
                        for m in 0..=(i % cfg.chain_arity.min(3) + 1) {
                            mc.add_chain(&sample::chain(r, dim, m, cfg.chain_degree, 2), &int(1));
                        }
                        mc
                    })
                    .collect();
                let c = CyclicChain::from_coeffs(coeffs);
                out.push(Case { cyclic: cyclic_json(&c), ..plain(dim) });
            }
        }
        "lie_derivative_module_identity" => {
            for i in 0..n.module {
                let q1 = sample::cochain(r, dim, 1 + i % 3, cd.min(2), dord.min(2), 2);
                let q2 = sample::cochain(r, dim, 1 + (i / 3) % 3, cd.min(2), dord.min(2), 2);
                let c = sample::chain(r, dim, 1 + i % 4, cfg.chain_degree.min(2), 2);
                out.push(Case { cochains: vec![q1.to_json(), q2.to_json()], chains: vec![c.to_json()], ..plain(dim) });
            }
        }
        "connes_b_lie_derivative_compatibility" => {
            for i in 0..n.module {
                let p = sample::normalized_cochain(r, dim, 1 + i % 3, cd.min(2), dord.min(2), 2);
                let c = sample::chain(r, dim, i % 5, cfg.chain_degree.min(2), 2);
                out.push(Case { cochains: vec![p.to_json()], chains: vec![c.to_json()], ..plain(dim) });
            }
        }
        "wedge_graded_commutative_associative" | "schouten_antisymmetry_and_jacobi" | "schouten_biderivation_of_wedge" => {
            for i in 0..n.calculus {
                let pvs = [i % 4, (i / 4) % 4, (i / 16) % 4].map(|k| sample::polyvector(r, 3, k, 2, 2).to_json());
                out.push(Case { polyvectors: pvs.to_vec(), ..plain(3) });
            }
        }
        "contraction_lie_derivative_relation" | "lie_derivative_of_wedge" | "cartan_formula" => {
            for i in 0..n.calculus {
                let pvs = [i % 4, (i / 4) % 4].map(|k| sample::polyvector(r, 3, k, 2, 2).to_json());
                let w = sample::form(r, 3, (i / 16) % 4, 2, 3);
                out.push(Case { polyvectors: pvs.to_vec(), forms: vec![w.to_json()], ..plain(3) });
            }
        }
        "hkr_lands_in_cocycles" => {
            for i in 0..n.hkr_pairs {
                out.push(Case { polyvectors: vec![sample::polyvector(r, 3, i % 4, 2, 3).to_json()], ..plain(3) });
            }
        }
        "hkr_brackets_up_to_coboundary" => {
            keep = true;
            for i in 0..n.hkr_pairs {
                let g1 = sample::polyvector(r, 2, 1 + i % 2, 2, 2);
                let g2 = sample::polyvector(r, 2, 1 + (i / 2) % 2, 2, 2);
                let f2 = hkr_f2(&g1, &g2)?;
                out.push(Case {
                    polyvectors: vec![g1.to_json(), g2.to_json()],
                    cochains: f2.iter().map(PolyDiffCochain::to_json).collect(),
                    ..plain(2)
                });
            }
        }
        "mc_iff_associativity" => {
            let base = moyal_weyl(&canonical_theta(2).map_err(|e| e.to_string())?, 3).map_err(|e| e.to_string())?;
            for i in 0..n.mc {
                // perturb at one order so that some orders stay associative
                let mut pi = base.pi().clone().into_coeffs();
                if r.gen_bool(0.7) {
                    pi[1 + i % 3].add_assign_scaled(&sample::normalized_cochain(r, 2, 2, 1, 2, 2), &int(1));
                }
                out.push(Case { cochain_series: vec![series_json(&HbarSeries::new(pi))], ..plain(2) });
            }
        }
        "gauge_action_preserves_mc" => {
            let non_symplectic = PolyDiffCochain::partial(dim, 0).mul_function(&MultiPoly::var(dim, 0).pow(2));
            for i in 0..n.gauge {
                let mut xi = gauge_series(r, dim, 3).into_coeffs();
                if i % 2 == 1 {
                    xi[1].add_assign_scaled(&non_symplectic, &int(1));
                }
                out.push(Case { theta: theta_text(cfg), cochain_series: vec![series_json(&HbarSeries::new(xi))], ..plain(dim) });
            }
        }
        "twisted_differential_squares_to_zero_moyal" => {
            for i in 0..n.gauge {
                let x = HbarSeries::new((0..=3).map(|_| sample::cochain(r, dim, i % 3, 1, 2, 2)).collect());
                out.push(Case { theta: theta_text(cfg), cochain_series: vec![series_json(&x)], ..plain(dim) });
            }
        }
        "twisted_differential_squares_to_zero_poisson" => {
            // every bivector in the plane is Poisson
            for i in 0..n.gauge {
                let f = sample::poly(r, 2, 3, 3);
                let pi = PolyVector::term(f, vec![0, 1]).map_err(|e| e.to_string())?;
                let pi = HbarSeries::monomial(pi, 1, 3);
                let x = HbarSeries::new((0..=3).map(|_| sample::polyvector(r, 2, i % 3, 2, 2)).collect());
                out.push(Case { polyvector_series: vec![pv_series_json(&pi), pv_series_json(&x)], ..plain(2) });
            }
        }
        "ce_coderivation_squares_to_zero" => {
            for i in 0..n.ce_sets {
                if i % 2 == 0 {
                    let els = (0..3).map(|_| {
                        let k = 1 + r.gen_range(0..2);
                        sample::cochain(r, 1, k, 1, 2, 2).to_json()
                    }).collect();
                    out.push(Case { cochains: els, ..plain(1) });
                } else {
                    let els = (0..3).map(|_| {
                        let k = 1 + r.gen_range(0..2);
                        sample::polyvector(r, 2, k, 2, 2).to_json()
                    }).collect();
                    out.push(Case { polyvectors: els, ..plain(2) });
                }
            }
        }
        "moyal_associativity" => {
            let order = Some(cfg.hbar_order);
            out.push(Case { theta: theta_text(cfg), order, ..plain(dim) });
            out.push(Case { theta: Some(theta_to_text(&random_theta(r, 4))), order, ..plain(4) });
        }
        "moyal_commutator_expansion" | "vey_general_matches_planar" => {
            let th = if name == "vey_general_matches_planar" || cfg.dim != 2 { plane_text() } else { theta_text(cfg) };
            for (a, b) in monomial_pairs(2, cfg.pair_degree) {
                out.push(Case { theta: th.clone(), polys: vec![a.to_string(), b.to_string()], ..plain(2) });
            }
        }
        "moyal_spot_values" => out.push(Case::default()),
        "equivalences_compose" => {
            for _ in 0..n.gauge {
                let (x1, x2) = (gauge_series(r, dim, 3), gauge_series(r, dim, 3));
                out.push(Case { theta: theta_text(cfg), cochain_series: vec![series_json(&x1), series_json(&x2)], ..plain(dim) });
            }
        }
        "vey_antisymmetry" => {
            for (a, b) in monomial_pairs(dim, cfg.cocycle_degree) {
                out.push(Case { theta: theta_text(cfg), polys: vec![a.to_string(), b.to_string()], ..plain(dim) });
            }
        }
        "vey_ce2_cocycle" => {
            // the defect is alternating, so triples i ≤ j ≤ k suffice
            let ms = monomials(dim, cfg.cocycle_degree);
            for i in 0..ms.len() {
                for j in i..ms.len() {
                    for k in j..ms.len() {
                        if deg(&ms[i]) + deg(&ms[j]) + deg(&ms[k]) <= cfg.cocycle_degree {
                            let polys = vec![ms[i].to_string(), ms[j].to_string(), ms[k].to_string()];
                            out.push(Case { theta: theta_text(cfg), polys, ..plain(dim) });
                        }
                    }
                }
            }
        }
        "coboundary_negative_control" => {
            keep = true;
            let th = theta(cfg);
            let bounds = cfg.obstruction;
            for _ in 0..n.negative_control {
                let p0 = random_table(r, dim, bounds.max_degree);
                let rhs = coboundary_of(&th, &p0);
                let sys = build_system_with(&th, bounds, &rhs).map_err(|e| e.to_string())?;
                let p = match solve(sys.ncols(), &sys.linear_rows()) {
                    Outcome::Solved(x) => sys.table_from(&x),
                    // recorded as is; the check then fails on it
                    Outcome::Infeasible(_) => LinearMapTable::zero(dim, bounds.max_degree),
                };
                out.push(Case {
                    theta: theta_text(cfg),
                    bounds: Some(bounds),
                    tables: vec![p0.to_text(), p.to_text()],
                    ..plain(dim)
                });
            }
        }
        other => return Err(format!("no generator for `{other}`")),
    }
    Ok((out, keep))
}

fn run_cases(name: &str, cfg: &RunConfig) -> CheckResult {
    let (cases, keep) = match cases(name, cfg) {
        Ok(c) => c,
        Err(e) => return CheckResult::new(name, false, 0, format!("could not generate instances: {e}")),
    };
    for case in &cases {
        if let Err(detail) = evaluate(name, case) {
            let mut res = CheckResult::new(name, false, cases.len(), "counterexample found".into());
            res.counterexample = Some(Counterexample { case: case.clone(), detail });
            return res;
        }
    }
    let mut res = CheckResult::new(name, true, cases.len(), String::new());
    if keep {
        res.witness = Some(Witness::Cases { cases });
    }
    res
}

/// Whether the bounds reach the degrees where the plane is known to be obstructed.
pub fn expects_obstruction(cfg: &RunConfig) -> bool {
    let ObstructionBounds { max_degree, max_pair_degree } = cfg.obstruction;
    cfg.is_canonical_plane() && max_degree >= 5 && max_pair_degree >= 7
}

fn run_certificate(cfg: &RunConfig) -> CheckResult {
    let th = theta(cfg);
    let outcome = build_coboundary_system(&th, cfg.obstruction).and_then(|sys| {
        let cert = solve_or_certify(&sys)?;
        Ok((cert.to_json(&sys), sys.rows.len(), sys.ncols()))
    });
    let (json, rows, cols) = match outcome {
        Ok(x) => x,
        Err(e) => return CheckResult::new(CERTIFICATE_CHECK, false, 0, e.to_string()),
    };
    let expected = expects_obstruction(cfg);
    let infeasible = json.status == "infeasible";
    let verified = json.reverify(&th);
    let ok = verified.is_ok() && (!expected || infeasible);
    let mut detail = format!("{} ({rows} rows, {cols} unknowns)", json.status);
    if expected && !infeasible {
        detail.push_str("; expected infeasible");
    }
    if let Err(e) = verified {
        detail.push_str(&format!("; witness does not re-verify: {e}"));
    }
    let mut res = CheckResult::new(CERTIFICATE_CHECK, ok, 1, detail);
    res.witness = Some(Witness::Certificate { certificate: json });
    res
}

fn run_replay(cfg: &RunConfig) -> CheckResult {
    if !expects_obstruction(cfg) {
        return CheckResult::new(REPLAY_CHECK, true, 0, "not applicable at this θ and bounds".into());
    }
    match reproduce_contradiction() {
        Ok(t) => {
            let detail = format!("{} vs {}", t.x_coefficient_from_first, t.x_coefficient_from_second);
            let mut res = CheckResult::new(REPLAY_CHECK, t.contradiction, 1, detail);
            res.witness = Some(Witness::Transcript { transcript: t });
            res
        }
        Err(e) => CheckResult::new(REPLAY_CHECK, false, 1, e.to_string()),
    }
}

pub fn run_check(name: &str, cfg: &RunConfig) -> CheckResult {
    let start = Instant::now();
    let mut res = match name {
        CERTIFICATE_CHECK => run_certificate(cfg),
        REPLAY_CHECK => run_replay(cfg),
        _ => run_cases(name, cfg),
    };
    if cfg.timings {
        res.elapsed_ms = Some(start.elapsed().as_millis() as u64);
    }
    res
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_check_belongs_to_exactly_one_suite() {
        let all = checks_of(Suite::All);
        for c in CHECKS {
            assert_eq!(all.iter().filter(|n| *n == c).count(), 1, "{c}");
        }
        assert_eq!(all.len(), CHECKS.len() + 2);
    }

    #[test]
    fn generators_are_deterministic() {
        let cfg = RunConfig { counts: super::super::config::Counts { complex: 5, ..Default::default() }, ..Default::default() };
        let a = cases("chain_boundary_squares_to_zero", &cfg).unwrap();
        let b = cases("chain_boundary_squares_to_zero", &cfg).unwrap();
        assert_eq!(a, b);
        let other = RunConfig { seed: 1, ..cfg };
        assert_ne!(a, cases("chain_boundary_squares_to_zero", &other).unwrap());
    }
}
