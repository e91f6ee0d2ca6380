//! Exhaustive and seeded verification suites over the engines.
//!
//! Every suite returns a [`SuiteReport`] listing per-clause tallies and a
//! few minimal witnesses for each failing clause. Failures are data; only
//! malformed parameters are errors.

mod report;
mod suites;

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use report::{ClauseTally, Failure, Report, SuiteReport, WITNESS_LIMIT};
pub use suites::{
    convexity, product_laws, resolution_oracle, twist_bounds, twist_coordinates, twist_dynamics,
};

use crate::scene::SmoothingConvention;

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("bounds must be at least 1, got {0}")]
    InvalidBound(i64),
    #[error("empty range {0}..{1}")]
    EmptyRange(i64, i64),
    #[error("trial count must be at least 1")]
    InvalidTrials,
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot encode report: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, VerifyError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    ProductLaws,
    Convexity,
    TwistDynamics,
    TwistBounds,
    ResolutionOracle,
    TwistCoordinates,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::ProductLaws,
        Suite::Convexity,
        Suite::TwistDynamics,
        Suite::TwistBounds,
        Suite::ResolutionOracle,
        Suite::TwistCoordinates,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ProductLaws => "product_laws",
            Suite::Convexity => "convexity",
            Suite::TwistDynamics => "twist_dynamics",
            Suite::TwistBounds => "twist_bounds",
            Suite::ResolutionOracle => "resolution_oracle",
            Suite::TwistCoordinates => "twist_coordinates",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| VerifyError::UnknownSuite(s.to_string()))
    }
}

/// Parameters for [`run_all`]. The defaults finish in a few seconds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub product_bound: i64,
    pub convexity_bound: i64,
    pub n_min: i64,
    pub n_max: i64,
    pub dynamics_bound: i64,
    pub gamma_bound: i64,
    pub twist_bound: i64,
    pub m_max: i64,
    pub grid_bound: i64,
    pub convention: SmoothingConvention,
    pub trials: u64,
    pub seed: u64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            product_bound: 4,
            convexity_bound: 3,
            n_min: -6,
            n_max: 6,
            dynamics_bound: 4,
            gamma_bound: 6,
            twist_bound: 3,
            m_max: 3,
            grid_bound: 4,
            convention: SmoothingConvention::Standard,
            trials: 1000,
            seed: 7,
        }
    }
}

impl Config {
    /// Uses `bound` for every class enumeration except the window of
    /// tested classes in the fixed-point check.
    pub fn with_bound(mut self, bound: i64) -> Self {
        self.product_bound = bound;
        self.convexity_bound = bound;
        self.dynamics_bound = bound;
        self.twist_bound = bound;
        self.grid_bound = bound;
        self
    }
}

pub fn run_suite(suite: Suite, config: &Config) -> Result<SuiteReport> {
    match suite {
        Suite::ProductLaws => product_laws(config.product_bound),
        Suite::Convexity => convexity(config.convexity_bound, config.n_min, config.n_max),
        Suite::TwistDynamics => twist_dynamics(config.dynamics_bound, config.gamma_bound),
        Suite::TwistBounds => twist_bounds(config.twist_bound, config.m_max),
        Suite::ResolutionOracle => resolution_oracle(config.grid_bound, config.convention),
        Suite::TwistCoordinates => twist_coordinates(config.trials, config.seed),
    }
}

pub fn run(suites: &[Suite], config: &Config) -> Result<Report> {
    let reports = suites
        .iter()
        .map(|&s| run_suite(s, config))
        .collect::<Result<Vec<_>>>()?;
    Ok(Report::new(reports))
}

pub fn run_all(config: &Config) -> Result<Report> {
    run(&Suite::ALL, config)
}

pub fn write_report(report: &Report, path: impl AsRef<Path>) -> Result<()> {
    let mut text = report.to_json()?;
    text.push('\n');
    fs::write(path, text)?;
    Ok(())
}
