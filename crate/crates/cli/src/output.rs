//! On-disk formats for the connection tensor and the check reports.

use std::fs;
use std::path::{Path, PathBuf};

use flagconn::connection::basis_labels;
use flagconn::{CheckReport, ConnectionTensor, FlagManifold, Family, Kind};
use serde::{Deserialize, Serialize};

use crate::config::{CoefficientEntry, Format};
use crate::job::JobOutcome;
use crate::JobError;

/// Entries at or below this magnitude are omitted from the sparse listing.
pub const SPARSE_CUTOFF: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub root: Vec<i32>,
    pub kind: Kind,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TensorEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub family: Family,
    pub rank: usize,
    /// Resolved coefficients, one per positive root, so that a file can be
    /// re-checked without the original config.
    pub coefficients: Vec<CoefficientEntry>,
    pub tolerance: f64,
    pub seed: u64,
    pub version: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorFile {
    pub basis: Vec<BasisEntry>,
    pub tensor: Vec<TensorEntry>,
    pub checks: Vec<CheckReport>,
    pub meta: Meta,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub checks: Vec<CheckReport>,
    pub meta: Meta,
}

pub fn sparse_entries(tensor: &ConnectionTensor) -> Vec<TensorEntry> {
    let n = tensor.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for (k, &value) in tensor.row(i, j).iter().enumerate() {
                if value.abs() > SPARSE_CUTOFF {
                    out.push(TensorEntry { i, j, k, value });
                }
            }
        }
    }
    out
}

fn meta(outcome: &JobOutcome) -> Meta {
    let rs = outcome.fm.roots();
    Meta {
        family: outcome.config.family,
        rank: outcome.config.rank,
        coefficients: outcome
            .spec
            .pairs(rs)
            .into_iter()
            .map(|(r, c)| CoefficientEntry { root: r.coords().to_vec(), c })
            .collect(),
        tolerance: outcome.config.tolerance,
        seed: outcome.config.seed,
        version: env!("CARGO_PKG_VERSION").to_string(),
    }
}

impl TensorFile {
    pub fn from_outcome(outcome: &JobOutcome) -> Self {
        TensorFile {
            basis: outcome
                .tensor
                .labels()
                .iter()
                .map(|(r, kind)| BasisEntry {
                    root: r.coords().to_vec(),
                    kind: *kind,
                })
                .collect(),
            tensor: sparse_entries(&outcome.tensor),
            checks: outcome.reports.clone(),
            meta: meta(outcome),
        }
    }

    pub fn read(path: &Path) -> Result<Self, JobError> {
        let text = fs::read_to_string(path).map_err(|e| JobError::io(path, e))?;
        serde_json::from_str(&text).map_err(|e| JobError::Format(e.to_string()))
    }

    /// Dense tensor over the basis of `fm`; the stored basis must match it.
    pub fn to_tensor(&self, fm: &FlagManifold) -> Result<ConnectionTensor, JobError> {
        let labels = basis_labels(fm);
        let expected: Vec<BasisEntry> = labels
            .iter()
            .map(|(r, kind)| BasisEntry {
                root: r.coords().to_vec(),
                kind: *kind,
            })
            .collect();
        if expected != self.basis {
            return Err(JobError::Format(format!(
                "basis does not match {}{}",
                fm.roots().family(),
                fm.roots().rank()
            )));
        }
        let n = labels.len();
        let mut gamma = vec![0.0; n * n * n];
        for e in &self.tensor {
            if e.i >= n || e.j >= n || e.k >= n {
                return Err(JobError::Format(format!("entry ({}, {}, {}) out of range", e.i, e.j, e.k)));
            }
            gamma[(e.i * n + e.j) * n + e.k] = e.value;
        }
        Ok(ConnectionTensor::from_dense(labels, gamma)?)
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn csv_string(tensor: &ConnectionTensor) -> String {
    let mut s = String::from("i,j,k,value\n");
    for e in sparse_entries(tensor) {
        s.push_str(&format!("{},{},{},{}\n", e.i, e.j, e.k, e.value));
    }
    s
}

/// `<output>.report.json`
pub fn report_path(output: &Path) -> PathBuf {
    let mut s = output.as_os_str().to_owned();
    s.push(".report.json");
    PathBuf::from(s)
}

pub fn write(outcome: &JobOutcome, path: &Path, format: Format) -> Result<(), JobError> {
    match format {
        Format::Json => {
            let text = to_json(&TensorFile::from_outcome(outcome));
            fs::write(path, text).map_err(|e| JobError::io(path, e))
        }
        Format::Csv => {
            fs::write(path, csv_string(&outcome.tensor)).map_err(|e| JobError::io(path, e))?;
            let report = ReportFile {
                checks: outcome.reports.clone(),
                meta: meta(outcome),
            };
            let rp = report_path(path);
            fs::write(&rp, to_json(&report)).map_err(|e| JobError::io(&rp, e))
        }
    }
}

pub fn report_json(report: &CheckReport) -> String {
    serde_json::to_string(report).expect("plain data serializes")
}
