//! Verification suites and the critical-point solver behind the `mirror`
//! command, producing [`report::ReportDocument`]s.

pub mod report;
pub mod suites;

use mirror_core::mirror::MirrorError;
use mirror_core::scalar::{parse_c, parse_q, C};
use serde::Serialize;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Solve,
    Braid,
    Compare,
    Peterson,
    Deodhar,
    DeodharEnumerate,
    DeodharSample,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    #[default]
    Float,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RouteChoice {
    /// Quiver equations for the Borel, Deodhar charts otherwise.
    #[default]
    Auto,
    Quiver,
    Deodhar,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub rank: Option<usize>,
    /// Simple roots of the Levi factor.
    pub parabolic: Vec<usize>,
    pub q: Vec<String>,
    pub lambda: Vec<String>,
    pub samples: Option<usize>,
    pub seed: u64,
    pub tol: Option<f64>,
    pub mode: Mode,
    pub route: RouteChoice,
    pub starts_per_dim: Option<usize>,
    pub primes: Vec<u64>,
    /// Letters of `v` for the Deodhar actions.
    pub v: Vec<usize>,
    /// Letters of the reduced word; empty means a fixed word of `w₀`.
    pub word: Vec<usize>,
}

impl SuiteConfig {
    pub fn new(suite: Suite) -> Self {
        SuiteConfig {
            suite,
            rank: None,
            parabolic: Vec::new(),
            q: Vec::new(),
            lambda: Vec::new(),
            samples: None,
            seed: 42,
            tol: None,
            mode: Mode::default(),
            route: RouteChoice::default(),
            starts_per_dim: None,
            primes: Vec::new(),
            v: Vec::new(),
            word: Vec::new(),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum SuiteError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl SuiteError {
    pub fn exit_code(&self) -> i32 {
        match self {
            SuiteError::Config(_) => 2,
            SuiteError::Internal(_) => 3,
        }
    }
}

impl From<MirrorError> for SuiteError {
    fn from(e: MirrorError) -> Self {
        match e {
            MirrorError::Invariant(m) => SuiteError::Internal(m),
            other => SuiteError::Config(other.to_string()),
        }
    }
}

/// Runs the configured suite; the process exits 0 iff
/// [`report::ReportDocument::passed`].
pub fn run_suite(cfg: &SuiteConfig) -> Result<report::ReportDocument, SuiteError> {
    if cfg.samples == Some(0) {
        return Err(SuiteError::Config("--samples must be positive".into()));
    }
    match cfg.suite {
        Suite::Solve => suites::solve::run(cfg),
        Suite::Braid => suites::braid::run(cfg),
        Suite::Compare => suites::compare::run(cfg),
        Suite::Peterson => suites::peterson::run(cfg),
        Suite::Deodhar => suites::deodhar::verify(cfg),
        Suite::DeodharEnumerate => suites::deodhar::enumerate(cfg),
        Suite::DeodharSample => suites::deodhar::sample(cfg),
    }
}

/// Parses `len` scalars, or returns `default` repeated when none are given.
/// Exact mode accepts only rationals.
pub fn parse_scalars(raw: &[String], len: usize, default: f64, name: &str, mode: Mode) -> Result<Vec<C>, SuiteError> {
    if raw.is_empty() {
        return Ok(vec![C::new(default, 0.0); len]);
    }
    if raw.len() != len {
        return Err(SuiteError::Config(format!("expected {len} values for --{name}, got {}", raw.len())));
    }
    raw.iter()
        .map(|s| {
            let v = match mode {
                Mode::Exact => parse_q(s).map(|q| <C as mirror_core::scalar::Scalar>::from_q(&q)),
                Mode::Float => parse_q(s).map(|q| <C as mirror_core::scalar::Scalar>::from_q(&q)).or_else(|| parse_c(s)),
            };
            v.ok_or_else(|| match mode {
                Mode::Exact => SuiteError::Config(format!("--{name} value {s:?} is not rational; exact mode needs rationals")),
                Mode::Float => SuiteError::Config(format!("cannot parse --{name} value {s:?}")),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_mode_rejects_irrational_input() {
        let raw = vec!["1+2i".to_string()];
        assert!(parse_scalars(&raw, 1, 1.0, "q", Mode::Exact).is_err());
        assert_eq!(parse_scalars(&raw, 1, 1.0, "q", Mode::Float).unwrap(), vec![C::new(1.0, 2.0)]);
        let raw = vec!["3/4".to_string()];
        assert_eq!(parse_scalars(&raw, 1, 1.0, "q", Mode::Exact).unwrap(), vec![C::new(0.75, 0.0)]);
        assert_eq!(parse_scalars(&raw, 1, 1.0, "q", Mode::Float).unwrap(), vec![C::new(0.75, 0.0)]);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(SuiteError::from(MirrorError::Invariant("x".into())).exit_code(), 3);
        assert_eq!(SuiteError::from(MirrorError::Domain("x".into())).exit_code(), 2);
    }

    #[test]
    fn length_mismatch_is_a_config_error() {
        let raw = vec!["1".to_string()];
        assert!(matches!(parse_scalars(&raw, 2, 1.0, "q", Mode::Float), Err(SuiteError::Config(_))));
        assert_eq!(parse_scalars(&[], 2, 0.0, "q", Mode::Float).unwrap().len(), 2);
    }
}
