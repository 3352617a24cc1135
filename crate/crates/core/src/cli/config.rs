use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::exactalg::rational::parse_rational;
use crate::exactalg::Rational;
use crate::obstruction::ObstructionBounds;
use crate::polyvec::PolyVector;
use crate::starprod::canonical_theta;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Identities,
    Calculus,
    Dgla,
    Star,
    Obstruction,
    All,
}

impl Suite {
    pub const EACH: [Suite; 5] = [Suite::Identities, Suite::Calculus, Suite::Dgla, Suite::Star, Suite::Obstruction];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Calculus => "calculus",
            Suite::Dgla => "dgla",
            Suite::Star => "star",
            Suite::Obstruction => "obstruction",
            Suite::All => "all",
        }
    }

    pub fn expand(self) -> Vec<Suite> {
        if self == Suite::All {
            Self::EACH.to_vec()
        } else {
            vec![self]
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

/// Instance counts of the randomized checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Counts {
    pub complex: usize,
    pub module: usize,
    pub calculus: usize,
    pub hkr_pairs: usize,
    pub mc: usize,
    pub gauge: usize,
    pub ce_sets: usize,
    pub negative_control: usize,
}

impl Default for Counts {
    fn default() -> Self {
        Counts {
            complex: 200,
            module: 100,
            calculus: 100,
            hkr_pairs: 20,
            mc: 20,
            gauge: 20,
            ce_sets: 50,
            negative_control: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub dim: usize,
    /// Rows of rational strings; canonical when absent.
    pub theta: Option<Vec<Vec<String>>>,
    pub hbar_order: usize,
    pub u_order: usize,
    pub coeff_degree: u32,
    pub deriv_order: u32,
    /// Largest chain arity of the random chains.
    pub chain_arity: usize,
    pub chain_degree: u32,
    pub obstruction: ObstructionBounds,
    /// Total degree of monomial pairs in the commutator and planar checks.
    pub pair_degree: u32,
    /// Total degree of monomial pairs and triples in the cocycle checks.
    pub cocycle_degree: u32,
    pub seed: u64,
    pub suite: Suite,
    pub format: Format,
    /// Record wall-clock times; off by default so reports are reproducible.
    pub timings: bool,
    pub counts: Counts,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            dim: 2,
            theta: None,
            hbar_order: 6,
            u_order: 3,
            coeff_degree: 3,
            deriv_order: 3,
            chain_arity: 5,
            chain_degree: 3,
            obstruction: ObstructionBounds::default(),
            pair_degree: 8,
            cocycle_degree: 9,
            seed: 0,
            suite: Suite::All,
            format: Format::Text,
            timings: false,
            counts: Counts::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid configuration: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

/// Parses `0,1;-1,0` (rows separated by `;`).
pub fn parse_theta_flag(text: &str) -> Result<Vec<Vec<String>>, ConfigError> {
    let rows: Vec<Vec<String>> = text
        .split(';')
        .map(|r| r.split(',').map(|c| c.trim().to_string()).collect())
        .collect();
    if rows.iter().any(|r| r.iter().any(|c| c.is_empty())) {
        return Err(ConfigError(format!("cannot read θ from `{text}`")));
    }
    Ok(rows)
}

pub fn theta_to_text(theta: &[Vec<Rational>]) -> Vec<Vec<String>> {
    theta.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect()
}

pub fn theta_from_text(rows: &[Vec<String>]) -> Result<Vec<Vec<Rational>>, ConfigError> {
    rows.iter()
        .map(|r| r.iter().map(|c| parse_rational(c).map_err(|e| ConfigError(e.to_string()))).collect())
        .collect()
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| ConfigError(format!("{}: {e}", path.display())))
    }

    pub fn theta_matrix(&self) -> Result<Vec<Vec<Rational>>, ConfigError> {
        match &self.theta {
            Some(rows) => theta_from_text(rows),
            None => canonical_theta(self.dim).map_err(|e| ConfigError(e.to_string())),
        }
    }

    pub fn is_canonical_plane(&self) -> bool {
        self.dim == 2 && self.theta_matrix().ok() == canonical_theta(2).ok()
    }

    /// Checks everything that can be checked without running a suite and
    /// fills in θ, so the echoed config is self-contained.
    pub fn validated(mut self) -> Result<Self, ConfigError> {
        if self.dim == 0 {
            return Err(ConfigError("dimension must be positive".into()));
        }
        let theta = self.theta_matrix()?;
        if theta.len() != self.dim || theta.iter().any(|r| r.len() != self.dim) {
            return Err(ConfigError(format!("θ must be {0}×{0}", self.dim)));
        }
        PolyVector::constant_bivector(&theta).map_err(|e| ConfigError(e.to_string()))?;
        if self.hbar_order < 1 || self.u_order < 1 {
            return Err(ConfigError("ħ and u orders must be at least 1".into()));
        }
        if self.chain_arity < 1 {
            return Err(ConfigError("chain arity must be at least 1".into()));
        }
        self.obstruction.validate().map_err(|e| ConfigError(e.to_string()))?;
        self.theta = Some(theta_to_text(&theta));
        Ok(self)
    }
}
