//! The `otlab` command-line front end.
//!
//! Every subcommand reads either two domain files (`--omega`, `--lambda`)
//! or a registry example (`--example`), and writes JSON, CSV or SVG to
//! `--out` or standard output. Outputs are byte-identical for identical
//! arguments.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::analysis::{
    cluster_jumps, default_h, default_threshold, detect_jump_set, jumps_svg, local_oscillation, study_half_annulus,
    study_squareman, write_jumps_csv, Check, JumpReport, SquaremanConfig,
};
use crate::criterion::{check_discontinuity, check_wolfson_urbas, min_arc_turning};
use crate::error::{Error, Result};
use crate::examples::{example, registry_names, SQUAREMAN_DEFAULT};
use crate::geometry::{offset_curve, Domain};
use crate::transport::{solve_exact, write_pairing_csv, CloudPair, Pairing};

/// Exit status for input errors: unreadable files, bad parameters, unknown examples.
pub const EXIT_INPUT: i32 = 2;
/// Exit status for numerical failures inside a computation.
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "otlab", version, about = "Planar optimal transport: curvature criteria, exact solver, jump analysis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate both curvature criteria and print the reports as JSON.
    Criterion(RunConfig),
    /// Sample both domains and print the exact optimal pairing.
    Solve(RunConfig),
    /// Solve, then estimate the local oscillation and flag jumps.
    Jumps(RunConfig),
    /// Write the full output bundle of a registry example into a directory.
    Reproduce {
        /// Registry example name.
        name: String,
        #[command(flatten)]
        config: RunConfig,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Source domain file (JSON boundary pieces).
    #[arg(long, requires = "lambda", conflicts_with = "example")]
    pub omega: Option<PathBuf>,
    /// Target domain file (JSON boundary pieces).
    #[arg(long, requires = "omega")]
    pub lambda: Option<PathBuf>,
    /// Registry example supplying both domains.
    #[arg(long)]
    pub example: Option<String>,
    /// Samples per domain.
    #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Inner offset of the target boundary to report alongside the criteria.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Probe radius; defaults to 2 sqrt(area / n).
    #[arg(long)]
    pub h: Option<f64>,
    /// Jump threshold; defaults to 6 h.
    #[arg(long)]
    pub threshold: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Output file, or output directory for `reproduce`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl RunConfig {
    fn n(&self) -> usize {
        self.n as usize
    }

    fn domains(&self) -> Result<(Domain, Domain)> {
        match (&self.example, &self.omega, &self.lambda) {
            (Some(name), _, _) => {
                let ex = example(name)?;
                Ok((ex.omega, ex.lambda))
            }
            (None, Some(o), Some(l)) => Ok((load(o)?, load(l)?)),
            _ => Err(Error::InvalidParameter(format!(
                "give --omega and --lambda, or --example (one of: {})",
                registry_names()
            ))),
        }
    }

    fn format(&self, default: Format, allowed: &[Format]) -> Result<Format> {
        let f = self.format.unwrap_or(default);
        if allowed.contains(&f) {
            Ok(f)
        } else {
            Err(Error::InvalidParameter(format!("format {f:?} is not available for this command")))
        }
    }

    fn sink(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.out {
            Some(p) => Box::new(io::BufWriter::new(fs::File::create(p)?)),
            None => Box::new(io::stdout().lock()),
        })
    }
}

fn load(path: &Path) -> Result<Domain> {
    Domain::load(path).map_err(|e| match e {
        Error::Io(io) => Error::InvalidParameter(format!("cannot read {}: {io}", path.display())),
        other => other,
    })
}

/// Exit status for an error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotConverged { .. }
        | Error::SamplingStalled { .. }
        | Error::DegenerateTangent { .. }
        | Error::EmptyBand { .. }
        | Error::EmptyRestriction { .. } => EXIT_NUMERICAL,
        _ => EXIT_INPUT,
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub fn cmd_criterion(config: &RunConfig) -> Result<()> {
    config.format(Format::Json, &[Format::Json])?;
    let (omega, lambda) = config.domains()?;
    let mut report = json!({
        "discontinuity": check_discontinuity(&omega, &lambda),
        "wolfson_urbas": check_wolfson_urbas(&omega, &lambda),
    });
    if let Some(eps) = config.eps {
        let off = offset_curve(&lambda, eps)?;
        let (value, window) = min_arc_turning(&off.curve);
        report["lambda_offset"] = json!({ "eps": eps, "min_arc_value": value, "witness_window": window });
    }
    config.sink()?.write_all(to_json(&report).as_bytes())?;
    Ok(())
}

fn solve(config: &RunConfig) -> Result<(Domain, CloudPair, Pairing)> {
    let (omega, lambda) = config.domains()?;
    let pair = CloudPair::sample(&omega, &lambda, config.n(), config.seed)?;
    let pairing = solve_exact(&pair)?;
    Ok((omega, pair, pairing))
}

pub fn cmd_solve(config: &RunConfig) -> Result<()> {
    let format = config.format(Format::Csv, &[Format::Csv, Format::Json])?;
    let (_, pair, pairing) = solve(config)?;
    let mut out = config.sink()?;
    match format {
        Format::Json => out.write_all(to_json(&pairing).as_bytes())?,
        _ => write_pairing_csv(&mut out, &pair, &pairing)?,
    }
    out.flush()?;
    Ok(())
}

fn jump_report(config: &RunConfig, omega: &Domain, pair: &CloudPair, pairing: &Pairing) -> Result<JumpReport> {
    let h = config.h.unwrap_or_else(|| default_h(omega.area(), pair.len()));
    let threshold = config.threshold.unwrap_or_else(|| default_threshold(h));
    detect_jump_set(&local_oscillation(pair, &pairing.sigma, h)?, threshold)
}

pub fn cmd_jumps(config: &RunConfig) -> Result<()> {
    let format = config.format(Format::Csv, &[Format::Csv, Format::Svg, Format::Json])?;
    let (omega, pair, pairing) = solve(config)?;
    let report = jump_report(config, &omega, &pair, &pairing)?;
    let mut out = config.sink()?;
    match format {
        Format::Csv => write_jumps_csv(&mut out, &report)?,
        Format::Svg => {
            let clusters = cluster_jumps(&report, 2.0 * report.h);
            out.write_all(jumps_svg(&omega, &report, &clusters).as_bytes())?
        }
        Format::Json => out.write_all(to_json(&report).as_bytes())?,
    }
    out.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct Manifest<'a> {
    example: &'a str,
    n: usize,
    seed: u64,
    #[serde(flatten)]
    summary: serde_json::Value,
    checks: Vec<Check>,
    pass: bool,
}

fn write_manifest(dir: &Path, name: &str, config: &RunConfig, summary: serde_json::Value, checks: Vec<Check>) -> Result<()> {
    let manifest = Manifest {
        example: name,
        n: config.n(),
        seed: config.seed,
        summary,
        pass: checks.iter().all(|c| c.pass),
        checks,
    };
    fs::write(dir.join("manifest.json"), to_json(&manifest))?;
    Ok(())
}

fn write_with<F: FnOnce(&mut Vec<u8>) -> Result<()>>(path: PathBuf, f: F) -> Result<()> {
    let mut buf = Vec::new();
    f(&mut buf)?;
    fs::write(path, buf)?;
    Ok(())
}

pub fn cmd_reproduce(name: &str, config: &RunConfig) -> Result<()> {
    let ex = example(name)?;
    let dir = config.out.clone().unwrap_or_else(|| PathBuf::from(format!("otlab-{name}")));
    fs::create_dir_all(&dir)?;
    match name {
        "half-annulus" => {
            let s = study_half_annulus(config.n(), config.seed)?;
            write_with(dir.join("pairing.csv"), |b| write_pairing_csv(b, &s.pair, &s.pairing))?;
            let summary = json!({
                "cost": s.pairing.cost,
                "mean_map_error": s.mean_map_error,
                "max_map_error": s.max_map_error,
                "monotonicity_violations": s.monotonicity_violations,
                "cyclical_failures": s.cyclical_failures,
            });
            write_manifest(&dir, name, config, summary, s.checks())
        }
        "squareman" => {
            let s = study_squareman(SquaremanConfig {
                dims: SQUAREMAN_DEFAULT,
                n: config.n(),
                seed: config.seed,
                h: config.h,
                threshold: config.threshold,
            })?;
            write_with(dir.join("pairing.csv"), |b| write_pairing_csv(b, &s.pair, &s.pairing))?;
            write_with(dir.join("jumps.csv"), |b| write_jumps_csv(b, &s.jumps))?;
            fs::write(dir.join("jumps.svg"), jumps_svg(&s.omega, &s.jumps, &s.clusters))?;
            let trace = json!({
                "band": s.h(),
                "segments": s.trace,
                "e1": s.e1,
                "e_prime": s.e_prime,
                "ee_prime": s.ee_prime(),
                "clusters": s.clusters,
            });
            fs::write(dir.join("boundary_trace.json"), to_json(&trace))?;
            let summary = json!({
                "h": s.h(),
                "threshold": s.threshold(),
                "flagged": s.jumps.flagged.len(),
                "max_oscillation": s.jumps.max_oscillation(),
                "max_flagged_jump": s.max_flagged_jump(),
                "ee_prime": s.ee_prime(),
                "restriction": s.restriction,
            });
            write_manifest(&dir, name, config, summary, s.checks())
        }
        _ => {
            let pair = CloudPair::sample(&ex.omega, &ex.lambda, config.n(), config.seed)?;
            let pairing = solve_exact(&pair)?;
            let report = jump_report(config, &ex.omega, &pair, &pairing)?;
            let clusters = cluster_jumps(&report, 2.0 * report.h);
            write_with(dir.join("pairing.csv"), |b| write_pairing_csv(b, &pair, &pairing))?;
            write_with(dir.join("jumps.csv"), |b| write_jumps_csv(b, &report))?;
            fs::write(dir.join("jumps.svg"), jumps_svg(&ex.omega, &report, &clusters))?;
            let criteria = json!({
                "discontinuity": check_discontinuity(&ex.omega, &ex.lambda),
                "wolfson_urbas": check_wolfson_urbas(&ex.omega, &ex.lambda),
            });
            fs::write(dir.join("criterion.json"), to_json(&criteria))?;
            let mismatches = ex.check_expectations();
            let checks = vec![Check {
                name: "expectations".into(),
                pass: mismatches.is_empty(),
                value: mismatches.len() as f64,
                detail: if mismatches.is_empty() {
                    "criterion output matches the registry".into()
                } else {
                    format!("mismatched: {}", mismatches.join(", "))
                },
            }];
            let summary = json!({
                "h": report.h,
                "threshold": report.threshold,
                "flagged": report.flagged.len(),
                "max_oscillation": report.max_oscillation(),
                "expected": ex.expected,
            });
            write_manifest(&dir, name, config, summary, checks)
        }
    }
}

fn configure_threads() -> Result<()> {
    if let Ok(v) = std::env::var("OTLAB_THREADS") {
        let threads: usize = v
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("OTLAB_THREADS must be a positive integer, got '{v}'")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    }
    Ok(())
}

/// Runs a parsed command line and returns the process exit status.
pub fn run(cli: Cli) -> i32 {
    let result = configure_threads().and_then(|_| match &cli.command {
        Command::Criterion(c) => cmd_criterion(c),
        Command::Solve(c) => cmd_solve(c),
        Command::Jumps(c) => cmd_jumps(c),
        Command::Reproduce { name, config } => cmd_reproduce(name, config),
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("otlab: {e}");
            exit_code(&e)
        }
    }
}
