//! The `hochlab` command line: suite runner, deterministic JSON reports,
//! the contradiction walk-through and witness re-verification.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 when the
//! configuration or an input file is unusable.

mod checks;
mod config;
mod suites;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use checks::{evaluate, hkr_defect, hkr_f2, Case, CHECKS};
pub use config::{parse_theta_flag, ConfigError, Counts, Format, RunConfig, Suite};
pub use suites::{checks_of, expects_obstruction, random_theta, run_check, CheckResult, Counterexample, Witness};

use crate::obstruction::{build_coboundary_system, reproduce_contradiction, solve_or_certify, ObstructionBounds};

pub const SCHEMA: &str = "hochlab-report/1";

const CONVENTIONS: &str = include_str!("../../../../CONVENTIONS.md");

/// SHA-256 of the sign conventions this build implements.
pub fn conventions_fingerprint() -> String {
    Sha256::digest(CONVENTIONS.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub status: String,
    pub checks: Vec<CheckResult>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub config: RunConfig,
    pub conventions_fingerprint: String,
    pub suites: Vec<SuiteReport>,
    pub status: String,
}

fn status(ok: bool) -> String {
    if ok { "pass" } else { "fail" }.to_string()
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.suites.iter().flat_map(|s| &s.checks).find(|c| c.name == name)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "hochlab (seed {}, conventions {})", self.config.seed, &self.conventions_fingerprint[..12]);
        for s in &self.suites {
            let _ = writeln!(out, "[{}] {}", s.suite, s.status);
            for c in &s.checks {
                let mut line = format!("  {} {} ({} instances", c.status.to_uppercase(), c.name, c.instances);
                if let Some(ms) = c.elapsed_ms {
                    let _ = write!(line, ", {ms} ms");
                }
                line.push(')');
                if !c.detail.is_empty() {
                    let _ = write!(line, ": {}", c.detail);
                }
                let _ = writeln!(out, "{line}");
                if let Some(ce) = &c.counterexample {
                    let _ = writeln!(out, "    counterexample: {}", ce.detail);
                }
            }
        }
        let _ = writeln!(out, "overall: {}", self.status);
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

/// Runs the configured suite. The configuration must already be validated.
pub fn run_suite(cfg: &RunConfig) -> Report {
    let suites: Vec<SuiteReport> = cfg
        .suite
        .expand()
        .into_iter()
        .map(|s| {
            let checks: Vec<CheckResult> = checks_of(s).into_iter().map(|name| run_check(name, cfg)).collect();
            SuiteReport { suite: s.name().to_string(), status: status(checks.iter().all(CheckResult::passed)), checks }
        })
        .collect();
    let ok = suites.iter().all(|s| s.status == "pass");
    Report {
        schema: SCHEMA.to_string(),
        config: cfg.clone(),
        conventions_fingerprint: conventions_fingerprint(),
        suites,
        status: status(ok),
    }
}

/// Text of `explain-contradiction`; errors only on unusable configurations.
pub fn explain_contradiction(cfg: &RunConfig) -> Result<(String, bool), ConfigError> {
    if !cfg.is_canonical_plane() {
        return Err(ConfigError("the contradiction is stated for the canonical plane; drop --dim/--theta".into()));
    }
    if !expects_obstruction(cfg) {
        let th = cfg.theta_matrix()?;
        let sys = build_coboundary_system(&th, cfg.obstruction).map_err(|e| ConfigError(e.to_string()))?;
        let cert = solve_or_certify(&sys).map_err(|e| ConfigError(e.to_string()))?;
        let ObstructionBounds { max_degree, max_pair_degree } = cfg.obstruction;
        let text = format!(
            "no contradiction at these bounds (D={max_degree}, Dpairs={max_pair_degree})\nsolver status: {}\n",
            cert.status()
        );
        return Ok((text, true));
    }
    match reproduce_contradiction() {
        Ok(t) => {
            let text = match cfg.format {
                Format::Text => t.render(),
                Format::Json => serde_json::to_string_pretty(&t).expect("transcripts serialize") + "\n",
            };
            Ok((text, t.contradiction))
        }
        Err(e) => Ok((format!("replay failed: {e}\n"), false)),
    }
}

/// Re-checks every witness and counterexample of a report.
pub fn verify_report(report: &Report) -> Result<(String, bool), ConfigError> {
    if report.schema != SCHEMA {
        return Err(ConfigError(format!("unknown report schema `{}`", report.schema)));
    }
    let cfg = report.config.clone().validated()?;
    let theta = cfg.theta_matrix()?;
    let mut out = String::new();
    let mut ok = true;
    let mut count = 0;
    let mut note = |out: &mut String, good: bool, what: String| {
        let _ = writeln!(out, "{} {what}", if good { "ok  " } else { "FAIL" });
        ok &= good;
    };
    if report.conventions_fingerprint != conventions_fingerprint() {
        note(&mut out, false, "report was produced under different sign conventions".into());
    }
    for c in report.suites.iter().flat_map(|s| &s.checks) {
        if let Some(w) = &c.witness {
            count += 1;
            match w {
                Witness::Cases { cases } => {
                    let bad = cases.iter().enumerate().find_map(|(i, case)| evaluate(&c.name, case).err().map(|e| (i, e)));
                    match bad {
                        None => note(&mut out, true, format!("{}: {} cases", c.name, cases.len())),
                        Some((i, e)) => note(&mut out, false, format!("{}: case {i}: {e}", c.name)),
                    }
                }
                Witness::Certificate { certificate } => match certificate.reverify(&theta) {
                    Ok(()) => note(&mut out, true, format!("{}: {} certificate", c.name, certificate.status)),
                    Err(e) => note(&mut out, false, format!("{}: {e}", c.name)),
                },
                Witness::Transcript { transcript } => match reproduce_contradiction() {
                    Ok(fresh) if fresh == *transcript && fresh.contradiction => {
                        note(&mut out, true, format!("{}: transcript reproduced", c.name))
                    }
                    Ok(_) => note(&mut out, false, format!("{}: transcript differs from a fresh replay", c.name)),
                    Err(e) => note(&mut out, false, format!("{}: {e}", c.name)),
                },
            }
        }
        if let Some(ce) = &c.counterexample {
            count += 1;
            match evaluate(&c.name, &ce.case) {
                Err(_) => note(&mut out, true, format!("{}: counterexample still fails", c.name)),
                Ok(()) => note(&mut out, false, format!("{}: recorded counterexample now passes", c.name)),
            }
        }
    }
    let _ = writeln!(out, "{count} witnesses checked: {}", status(ok));
    Ok((out, ok))
}

#[derive(Debug, Parser)]
#[command(name = "hochlab", version, about = "Exact checks of Hochschild calculus, star products and the planar obstruction")]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    /// JSON configuration file; flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    dim: Option<usize>,
    /// Rows separated by `;`, entries by `,`, e.g. `0,1;-1,0`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    theta: Option<String>,
    /// ħ order of the star products.
    #[arg(long, global = true)]
    order: Option<usize>,
    #[arg(long, global = true, value_enum)]
    suite: Option<Suite>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Largest monomial degree D of the coboundary system.
    #[arg(long = "max-degree", global = true)]
    max_degree: Option<u32>,
    /// Largest total degree of the pairs entering the coboundary system.
    #[arg(long = "max-pair-degree", global = true)]
    max_pair_degree: Option<u32>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Record wall-clock times (makes reports non-reproducible).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    Identities,
    Calculus,
    Dgla,
    Star,
    Obstruction,
    All,
    /// Run the suite named by --suite or the configuration file.
    Run,
    /// Walk through the elimination that refutes the planar coboundary equation.
    ExplainContradiction,
    /// Re-check every witness and counterexample of a JSON report.
    VerifyWitness { report: PathBuf },
}

impl Cli {
    fn config(&self) -> Result<RunConfig, ConfigError> {
        let mut cfg = match &self.config {
            Some(p) => RunConfig::from_file(p)?,
            None => RunConfig::default(),
        };
        if let Some(d) = self.dim {
            if d != cfg.dim {
                cfg.theta = None;
            }
            cfg.dim = d;
        }
        if let Some(t) = &self.theta {
            cfg.theta = Some(parse_theta_flag(t)?);
        }
        if let Some(n) = self.order {
            cfg.hbar_order = n;
        }
        if let Some(s) = self.suite {
            cfg.suite = s;
        }
        if let Some(s) = self.seed {
            cfg.seed = s;
        }
        if let Some(f) = self.format {
            cfg.format = f;
        }
        if let Some(d) = self.max_degree {
            cfg.obstruction.max_degree = d;
        }
        if let Some(d) = self.max_pair_degree {
            cfg.obstruction.max_pair_degree = d;
        }
        cfg.timings |= self.timings;
        match self.command {
            Some(Command::Identities) => cfg.suite = Suite::Identities,
            Some(Command::Calculus) => cfg.suite = Suite::Calculus,
            Some(Command::Dgla) => cfg.suite = Suite::Dgla,
            Some(Command::Star) => cfg.suite = Suite::Star,
            Some(Command::Obstruction) => cfg.suite = Suite::Obstruction,
            Some(Command::All) => cfg.suite = Suite::All,
            _ => {}
        }
        cfg.validated()
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), ConfigError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| ConfigError(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn dispatch(cli: &Cli) -> Result<bool, ConfigError> {
    match &cli.command {
        Some(Command::VerifyWitness { report }) => {
            let text = std::fs::read_to_string(report).map_err(|e| ConfigError(format!("{}: {e}", report.display())))?;
            let parsed: Report =
                serde_json::from_str(&text).map_err(|e| ConfigError(format!("{}: {e}", report.display())))?;
            let (text, ok) = verify_report(&parsed)?;
            emit(&text, cli.out.as_deref())?;
            Ok(ok)
        }
        Some(Command::ExplainContradiction) => {
            let (text, ok) = explain_contradiction(&cli.config()?)?;
            emit(&text, cli.out.as_deref())?;
            Ok(ok)
        }
        _ => {
            let cfg = cli.config()?;
            let report = run_suite(&cfg);
            let text = match cfg.format {
                Format::Text => report.render_text(),
                Format::Json => report.to_json(),
            };
            emit(&text, cli.out.as_deref())?;
            Ok(report.passed())
        }
    }
}

/// Entry point of the binary; returns the process exit code.
pub fn main_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(&cli) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            eprintln!("hochlab: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(args: &[&str]) -> i32 {
        main_from_args(std::iter::once("hochlab").chain(args.iter().copied()))
    }

    #[test]
    fn fingerprint_is_a_sha256() {
        let f = conventions_fingerprint();
        assert_eq!(f.len(), 64);
        assert!(f.chars().all(|c| c.is_ascii_hexdigit()));
    }

    #[test]
    fn config_errors_exit_with_two() {
        assert_eq!(code(&["star", "--theta", "0,1;1,0"]), 2);
        assert_eq!(code(&["all", "--dim", "3"]), 2);
        assert_eq!(code(&["verify-witness", "/nonexistent/report.json"]), 2);
        assert_eq!(code(&["no-such-command"]), 2);
        assert_eq!(code(&["explain-contradiction", "--dim", "4"]), 2);
    }

    #[test]
    fn small_bounds_have_no_contradiction() {
        let cfg = RunConfig { obstruction: ObstructionBounds { max_degree: 4, max_pair_degree: 6 }, ..Default::default() };
        let (text, ok) = explain_contradiction(&cfg.validated().unwrap()).unwrap();
        assert!(ok);
        assert!(text.starts_with("no contradiction at these bounds"), "{text}");
        assert!(text.contains("solvable"));
    }

    #[test]
    fn a_tampered_counterexample_is_caught() {
        let cfg = RunConfig { suite: Suite::Star, ..Default::default() }.validated().unwrap();
        let mut report = Report {
            schema: SCHEMA.into(),
            config: cfg,
            conventions_fingerprint: conventions_fingerprint(),
            suites: vec![SuiteReport {
                suite: "star".into(),
                status: "fail".into(),
                checks: vec![CheckResult {
                    name: "moyal_spot_values".into(),
                    status: "fail".into(),
                    instances: 1,
                    elapsed_ms: None,
                    detail: String::new(),
                    witness: None,
                    counterexample: Some(Counterexample { case: Case::default(), detail: "claimed".into() }),
                }],
            }],
            status: "fail".into(),
        };
        // the spot values hold, so the recorded counterexample is bogus
        assert!(!verify_report(&report).unwrap().1);
        report.suites[0].checks[0].counterexample = None;
        report.suites[0].checks[0].witness = Some(Witness::Cases { cases: vec![Case::default()] });
        assert!(verify_report(&report).unwrap().1);
    }
}
