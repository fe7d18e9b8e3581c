//! Job configuration: JSON file and command-line overrides.

use std::fs;
use std::path::{Path, PathBuf};

use flagconn::{Family, FlagManifold, MetricSpec, Root};
use serde::{Deserialize, Serialize};

use crate::JobError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Oracle,
    Torsion,
    Metric,
    Lemma2,
    SuCrosscheck,
}

impl CheckKind {
    pub const ALL: [CheckKind; 5] = [
        CheckKind::Oracle,
        CheckKind::Torsion,
        CheckKind::Metric,
        CheckKind::Lemma2,
        CheckKind::SuCrosscheck,
    ];

    pub fn parse(s: &str) -> Result<Self, JobError> {
        serde_json::from_value(serde_json::Value::String(s.trim().to_string()))
            .map_err(|_| JobError::Config(format!("unknown check {s:?} (expected oracle, torsion, metric, lemma2, su-crosscheck)")))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientEntry {
    pub root: Vec<i32>,
    pub c: f64,
}

/// Either explicit per-root coefficients or a token:
/// `"normal"` (all 1), `"normal=<v>"` (all `v`), `"random"` (seeded, in [0.5, 5)).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coefficients {
    Token(String),
    Explicit(Vec<CoefficientEntry>),
}

impl Default for Coefficients {
    fn default() -> Self {
        Coefficients::Token("normal".into())
    }
}

impl Coefficients {
    /// A token, or the path of a JSON file holding either a list of entries or
    /// an object with a `coefficients` field.
    pub fn from_arg(arg: &str) -> Result<Self, JobError> {
        if arg == "normal" || arg == "random" || arg.starts_with("normal=") {
            return Ok(Coefficients::Token(arg.to_string()));
        }
        let text = fs::read_to_string(arg).map_err(|e| JobError::Config(format!("cannot read coefficients file {arg}: {e}")))?;
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| JobError::Config(format!("coefficients file {arg}: {e}")))?;
        let inner = match value {
            serde_json::Value::Object(mut m) => m
                .remove("coefficients")
                .ok_or_else(|| JobError::Config(format!("coefficients file {arg} has no \"coefficients\" field")))?,
            other => other,
        };
        serde_json::from_value(inner).map_err(|e| JobError::Config(format!("coefficients file {arg}: {e}")))
    }

    pub fn resolve(&self, fm: &FlagManifold, seed: u64) -> Result<MetricSpec, JobError> {
        let rs = fm.roots();
        match self {
            Coefficients::Token(t) if t == "normal" => Ok(MetricSpec::normal(rs, 1.0)?),
            Coefficients::Token(t) if t == "random" => Ok(MetricSpec::random(rs, seed)),
            Coefficients::Token(t) => {
                let v = t
                    .strip_prefix("normal=")
                    .and_then(|v| v.parse::<f64>().ok())
                    .ok_or_else(|| JobError::Config(format!("unknown coefficient token {t:?}")))?;
                Ok(MetricSpec::normal(rs, v)?)
            }
            Coefficients::Explicit(entries) => {
                let pairs = entries
                    .iter()
                    .map(|e| Ok((Root::new(e.root.clone())?, e.c)))
                    .collect::<Result<Vec<_>, flagconn::Error>>()
                    .map_err(|e| JobError::Config(format!("coefficient key: {e}")))?;
                Ok(MetricSpec::from_pairs(rs, pairs)?)
            }
        }
    }
}

fn default_tolerance() -> f64 {
    flagconn::oracle::DEFAULT_TOLERANCE
}

fn default_output() -> PathBuf {
    PathBuf::from("connection.json")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JobConfig {
    pub family: Family,
    pub rank: usize,
    #[serde(default)]
    pub coefficients: Coefficients,
    /// `None` selects every check that applies to the family.
    #[serde(default)]
    pub checks: Option<Vec<CheckKind>>,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_output", alias = "output")]
    pub output_path: PathBuf,
    #[serde(default)]
    pub format: Format,
}

impl JobConfig {
    pub fn new(family: Family, rank: usize) -> Self {
        JobConfig {
            family,
            rank,
            coefficients: Coefficients::default(),
            checks: None,
            tolerance: default_tolerance(),
            seed: 0,
            output_path: default_output(),
            format: Format::Json,
        }
    }

    pub fn from_file(path: &Path) -> Result<Self, JobError> {
        let text = fs::read_to_string(path).map_err(|e| JobError::Config(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| JobError::Config(format!("config {}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<(), JobError> {
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(JobError::Config(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        if let Some(checks) = &self.checks {
            let su_ok = self.family == Family::A && self.rank >= 2;
            if checks.contains(&CheckKind::SuCrosscheck) && !su_ok {
                return Err(JobError::Config(format!(
                    "su-crosscheck needs family A with rank >= 2, got {}{}",
                    self.family, self.rank
                )));
            }
        }
        Ok(())
    }

    /// Requested checks, deduplicated and in canonical order.
    pub fn selected_checks(&self) -> Vec<CheckKind> {
        let mut v = match &self.checks {
            Some(c) => c.clone(),
            None => CheckKind::ALL
                .into_iter()
                .filter(|&c| c != CheckKind::SuCrosscheck || (self.family == Family::A && self.rank >= 2))
                .collect(),
        };
        v.sort();
        v.dedup();
        v
    }
}
