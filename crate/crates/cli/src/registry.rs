//! Experiments behind a common trait, registered by subcommand name.

use std::fmt;

use serde::Serialize;

use crate::artifact::Artifact;
use crate::config::{ConfigError, ExperimentConfig, Format};

/// One parameter of a subcommand: flag `--key`, or a positional argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParamSpec {
    pub key: &'static str,
    pub default: &'static str,
    pub help: &'static str,
    pub positional: bool,
}

impl ParamSpec {
    pub const fn flag(key: &'static str, default: &'static str, help: &'static str) -> Self {
        Self {
            key,
            default,
            help,
            positional: false,
        }
    }

    pub const fn positional(key: &'static str, default: &'static str, help: &'static str) -> Self {
        Self {
            key,
            default,
            help,
            positional: true,
        }
    }
}

/// Pass/fail line of an acceptance-style check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    /// `value < bound`.
    pub fn below(name: impl Into<String>, value: f64, bound: f64) -> Self {
        Self::new(name, value < bound, format!("{value:.3e} < {bound:.1e}"))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "pass" } else { "FAIL" };
        write!(f, "[{status}] {}: {}", self.name, self.detail)
    }
}

#[derive(Debug)]
pub enum ExpError {
    Config(ConfigError),
    Lib(spectral_lab::Error),
    Usage(String),
}

impl fmt::Display for ExpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExpError::Config(e) => write!(f, "{e}"),
            ExpError::Lib(e) => write!(f, "{e}"),
            ExpError::Usage(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for ExpError {}

impl From<ConfigError> for ExpError {
    fn from(e: ConfigError) -> Self {
        ExpError::Config(e)
    }
}

impl From<spectral_lab::Error> for ExpError {
    fn from(e: spectral_lab::Error) -> Self {
        ExpError::Lib(e)
    }
}

pub type ExpResult<T> = Result<T, ExpError>;

/// Result of one run: the artifact, checks that decide the exit status, and
/// human-readable summary lines.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub artifact: Artifact,
    pub checks: Vec<Check>,
    pub summary: Vec<String>,
}

impl Outcome {
    pub fn new(artifact: Artifact) -> Self {
        Self {
            artifact,
            checks: Vec::new(),
            summary: Vec::new(),
        }
    }

    pub fn check(mut self, c: Check) -> Self {
        self.checks.push(c);
        self
    }

    pub fn note(mut self, line: impl Into<String>) -> Self {
        self.summary.push(line.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

pub trait Experiment: Send + Sync {
    fn name(&self) -> &'static str;
    fn about(&self) -> &'static str;
    fn params(&self) -> &'static [ParamSpec];
    fn default_format(&self) -> Format;
    fn run(&self, cfg: &ExperimentConfig) -> ExpResult<Outcome>;
    /// Fast invariant suite of the underlying module.
    fn selftest(&self) -> ExpResult<Vec<Check>>;

    /// Configuration with every parameter at its default.
    fn defaults(&self) -> ExperimentConfig {
        let mut cfg = ExperimentConfig::new(self.name(), self.default_format());
        for p in self.params() {
            cfg.params.insert(p.key.into(), p.default.into());
        }
        cfg
    }
}

#[derive(Default)]
pub struct Registry {
    entries: Vec<Box<dyn Experiment>>,
}

impl Registry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, exp: Box<dyn Experiment>) {
        assert!(self.get(exp.name()).is_none(), "experiment `{}` registered twice", exp.name());
        self.entries.push(exp);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Experiment> {
        self.entries.iter().find(|e| e.name() == name).map(|e| e.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Experiment> {
        self.entries.iter().map(|e| e.as_ref())
    }
}
