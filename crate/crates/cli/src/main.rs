use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use flagconn::Family;
use flagconn_cli::output::report_json;
use flagconn_cli::{run_job, verify, CheckKind, Coefficients, Format, JobConfig, JobError};

/// Levi-Civita connection of a full flag manifold G/T with an invariant metric.
#[derive(Debug, Parser)]
#[command(name = "flagconn", version)]
struct Args {
    /// Root family: A, B, C or D
    #[arg(long)]
    family: Option<Family>,
    #[arg(long)]
    rank: Option<usize>,
    /// "normal", "normal=<v>", "random" or a JSON coefficients file
    #[arg(long)]
    coeffs: Option<String>,
    /// Comma-separated subset of oracle,torsion,metric,lemma2,su-crosscheck
    #[arg(long)]
    checks: Option<String>,
    #[arg(long)]
    tolerance: Option<f64>,
    /// Seed for random coefficients
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_parser = parse_format)]
    format: Option<Format>,
    /// JSON job file; flags given alongside it take precedence
    #[arg(long)]
    config: Option<PathBuf>,
    /// Re-check a previously written JSON tensor instead of computing one
    #[arg(long, conflicts_with_all = ["family", "rank", "coeffs", "checks", "seed", "output", "format", "config"])]
    verify: Option<PathBuf>,
}

fn parse_format(s: &str) -> Result<Format, String> {
    match s {
        "json" => Ok(Format::Json),
        "csv" => Ok(Format::Csv),
        other => Err(format!("unknown format {other:?} (expected json or csv)")),
    }
}

fn build_config(args: Args) -> Result<JobConfig, JobError> {
    let mut cfg = match &args.config {
        Some(path) => JobConfig::from_file(path)?,
        None => {
            let family = args.family.ok_or_else(|| JobError::Config("--family is required without --config".into()))?;
            let rank = args.rank.ok_or_else(|| JobError::Config("--rank is required without --config".into()))?;
            JobConfig::new(family, rank)
        }
    };
    if let Some(f) = args.family {
        cfg.family = f;
    }
    if let Some(r) = args.rank {
        cfg.rank = r;
    }
    if let Some(c) = &args.coeffs {
        cfg.coefficients = Coefficients::from_arg(c)?;
    }
    if let Some(list) = &args.checks {
        let checks = list
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(CheckKind::parse)
            .collect::<Result<Vec<_>, _>>()?;
        cfg.checks = Some(checks);
    }
    if let Some(t) = args.tolerance {
        cfg.tolerance = t;
    }
    if let Some(s) = args.seed {
        cfg.seed = s;
    }
    if let Some(o) = args.output {
        cfg.output_path = o;
    }
    if let Some(f) = args.format {
        cfg.format = f;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let args = Args::parse();

    if let Some(path) = &args.verify {
        return match verify(path, args.tolerance) {
            Ok(reports) => finish(&reports),
            Err(e) => {
                eprintln!("flagconn: {e}");
                ExitCode::from(2)
            }
        };
    }

    let outcome = build_config(args).and_then(|cfg| run_job(&cfg));
    match outcome {
        Ok(o) => finish(&o.reports),
        Err(e) => {
            eprintln!("flagconn: {e}");
            ExitCode::from(2)
        }
    }
}

fn finish(reports: &[flagconn::CheckReport]) -> ExitCode {
    for r in reports {
        println!("{r}");
    }
    let mut ok = true;
    for r in reports.iter().filter(|r| !r.passed) {
        eprintln!("{}", report_json(r));
        ok = false;
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
