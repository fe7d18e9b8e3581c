//! Pipeline: build the flag manifold, assemble the tensor, run the checks.

use std::path::Path;

use flagconn::oracle::{check_lemma2, check_metric_compat, check_oracle_equivalence, check_torsion};
use flagconn::su::{check_su_specialization, SuRealization};
use flagconn::{assemble_tensor, build_metric, CheckReport, ConnectionTensor, FlagManifold, MetricSpec};

use crate::config::{CheckKind, Coefficients, JobConfig};
use crate::output::{self, TensorFile};
use crate::JobError;

/// Everything a job produces before it is written out.
#[derive(Debug, Clone)]
pub struct JobOutcome {
    pub config: JobConfig,
    pub fm: FlagManifold,
    pub spec: MetricSpec,
    pub tensor: ConnectionTensor,
    pub reports: Vec<CheckReport>,
}

impl JobOutcome {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckReport> {
        self.reports.iter().filter(|r| !r.passed)
    }
}

fn setup_error(e: flagconn::Error) -> JobError {
    match e {
        flagconn::Error::Config(m) => JobError::Config(m),
        other => JobError::Config(other.to_string()),
    }
}

/// Computes the tensor and the requested reports without touching the disk.
pub fn run(config: &JobConfig) -> Result<JobOutcome, JobError> {
    config.validate()?;
    let fm = FlagManifold::new(config.family, config.rank).map_err(setup_error)?;
    let spec = config.coefficients.resolve(&fm, config.seed).map_err(|e| match e {
        JobError::Core(c) => setup_error(c),
        other => other,
    })?;
    let tensor = assemble_tensor(&fm, &spec)?;
    let reports = run_checks(&fm, &spec, &tensor, &config.selected_checks(), config.tolerance)?;
    Ok(JobOutcome {
        config: config.clone(),
        fm,
        spec,
        tensor,
        reports,
    })
}

fn run_checks(
    fm: &FlagManifold,
    spec: &MetricSpec,
    tensor: &ConnectionTensor,
    checks: &[CheckKind],
    tol: f64,
) -> Result<Vec<CheckReport>, JobError> {
    let mut out = Vec::with_capacity(checks.len());
    for check in checks {
        let r = match check {
            CheckKind::Oracle => check_oracle_equivalence(fm, spec, tol)?,
            CheckKind::Torsion => check_torsion(tensor, fm.m_structure(), tol)?,
            CheckKind::Metric => {
                let gram = build_metric(fm.roots(), fm.killing(), fm.basis(), spec)?;
                check_metric_compat(tensor, &gram, tol)?
            }
            CheckKind::Lemma2 => check_lemma2(fm.roots()),
            CheckKind::SuCrosscheck => {
                let real = SuRealization::new(fm.roots().rank())?;
                check_su_specialization(&real, spec, tol)?
            }
        };
        out.push(r);
    }
    Ok(out)
}

/// Runs the job and writes the tensor (and, for CSV, a report sidecar).
pub fn run_job(config: &JobConfig) -> Result<JobOutcome, JobError> {
    let outcome = run(config)?;
    output::write(&outcome, &config.output_path, config.format)?;
    Ok(outcome)
}

/// Reloads a JSON tensor file and re-runs the torsion and metric checks
/// against the coefficients recorded in it.
pub fn verify(path: &Path, tolerance: Option<f64>) -> Result<Vec<CheckReport>, JobError> {
    let file = TensorFile::read(path)?;
    let meta = &file.meta;
    let tol = tolerance.unwrap_or(meta.tolerance);
    let fm = FlagManifold::new(meta.family, meta.rank).map_err(setup_error)?;
    let spec = Coefficients::Explicit(meta.coefficients.clone()).resolve(&fm, meta.seed)?;
    let tensor = file.to_tensor(&fm)?;
    run_checks(&fm, &spec, &tensor, &[CheckKind::Torsion, CheckKind::Metric], tol)
}
