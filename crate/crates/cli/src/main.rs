//! `udw-causality`: parameter sweeps, figure datasets and signal matrices.

mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use udw_causality::dynamics::signal_matrix;
use udw_causality::figures::{figure, FigureData};
use udw_causality::sweep::{grid, render_csv, run_sweep, EstimatorKind, SweepAxis, SweepRow};

use crate::output::{write_dir_atomic, write_file_atomic, Sink};

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Convergence(String),
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Convergence(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "invalid input: {m}"),
            CliError::Convergence(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<udw_causality::Error> for CliError {
    fn from(e: udw_causality::Error) -> Self {
        if e.is_convergence() {
            CliError::Convergence(e.to_string())
        } else {
            CliError::Invalid(e.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

#[derive(Parser)]
#[command(name = "udw-causality", version, about = "Signalling estimators for Unruh-DeWitt detector pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an estimator along one parameter axis.
    Sweep(SweepArgs),
    /// Emit the dataset behind one of the five figures.
    Fig(FigArgs),
    /// Print the leading-order signal matrix of a two-detector scenario.
    SignalMatrix(MatrixArgs),
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Axis {
    #[value(name = "L")]
    L,
    Sigma,
    #[value(name = "lambda_cutoff")]
    LambdaCutoff,
    Omega,
}

impl From<Axis> for SweepAxis {
    fn from(a: Axis) -> Self {
        match a {
            Axis::L => SweepAxis::Separation,
            Axis::Sigma => SweepAxis::Sigma,
            Axis::LambdaCutoff => SweepAxis::Cutoff,
            Axis::Omega => SweepAxis::Omega,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Estimator {
    Gaussian,
    Tophat,
    TophatPointlike,
    Cutoff,
    Rwa,
}

impl From<Estimator> for EstimatorKind {
    fn from(e: Estimator) -> Self {
        match e {
            Estimator::Gaussian => EstimatorKind::Gaussian,
            Estimator::Tophat => EstimatorKind::Tophat,
            Estimator::TophatPointlike => EstimatorKind::TophatPointlike,
            Estimator::Cutoff => EstimatorKind::Cutoff,
            Estimator::Rwa => EstimatorKind::Rwa,
        }
    }
}

#[derive(Args)]
struct Common {
    /// Absolute quadrature tolerance.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file (directory for `fig` in CSV format); stdout when absent.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Record the wall time in the manifest (makes output run-dependent).
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    dim: Option<u8>,
    #[arg(long, value_enum)]
    axis: Axis,
    #[arg(long)]
    min: f64,
    #[arg(long)]
    max: f64,
    #[arg(long)]
    points: usize,
    /// Space grid points logarithmically.
    #[arg(long)]
    log: bool,
    /// Override the estimator inferred from the config and axis.
    #[arg(long, value_enum)]
    estimator: Option<Estimator>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct FigArgs {
    #[arg(value_parser = clap::value_parser!(u8).range(1..=5))]
    n: u8,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct MatrixArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Provenance record written next to every dataset.
#[derive(Serialize)]
struct RunManifest {
    artifact: &'static str,
    version: &'static str,
    command: String,
    config: Value,
    tolerance: f64,
    notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time_s: Option<f64>,
}

impl RunManifest {
    fn new(command: String, config: Value, tolerance: f64, notes: Vec<String>) -> Self {
        RunManifest {
            artifact: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command,
            config,
            tolerance,
            notes,
            wall_time_s: None,
        }
    }

    fn timed(mut self, timing: bool, start: Instant) -> Self {
        if timing {
            self.wall_time_s = Some(start.elapsed().as_secs_f64());
        }
        self
    }
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn check_tol(tol: f64) -> Result<(), CliError> {
    if tol.is_finite() && tol > 0.0 {
        Ok(())
    } else {
        Err(CliError::Invalid("tol: must be positive and finite".into()))
    }
}

fn check_errors<'a>(rows: impl IntoIterator<Item = &'a SweepRow>, tol: f64) -> Result<(), CliError> {
    for r in rows {
        if !(r.abs_error <= tol) {
            return Err(CliError::Convergence(format!(
                "{} = {:?}: error estimate {:e} exceeds tolerance {:e}",
                r.parameter, r.value, r.abs_error, tol
            )));
        }
    }
    Ok(())
}

fn sweep(args: SweepArgs) -> Result<(), CliError> {
    let start = Instant::now();
    check_tol(args.common.tol)?;
    let axis = SweepAxis::from(args.axis);
    let map = config::load(args.config.as_deref())?;
    let spec = config::scenario(map, args.dim, Some(axis))?;
    let kind = args.estimator.map(EstimatorKind::from).unwrap_or_else(|| EstimatorKind::infer(&spec, Some(axis)));
    let points = grid(args.min, args.max, args.points, args.log)?;
    let rows = run_sweep(&spec, kind, axis, &points, args.common.tol)?;
    check_errors(&rows, args.common.tol)?;

    let echo = json!({
        "scenario": spec,
        "units": "natural",
        "axis": axis.name(),
        "min": args.min,
        "max": args.max,
        "points": args.points,
        "log": args.log,
        "estimator": kind,
    });
    let manifest = RunManifest::new("sweep".into(), echo, args.common.tol, Vec::new()).timed(args.common.timing, start);
    let sink = Sink::from(args.common.output.as_deref());
    match args.common.format {
        Format::Csv => {
            sink.write(&render_csv(&rows))?;
            match &args.common.output {
                Some(path) => write_file_atomic(&output::manifest_path(path), &pretty(&manifest))?,
                None => eprint!("{}", pretty(&manifest)),
            }
        }
        Format::Json => sink.write(&pretty(&json!({ "manifest": manifest, "rows": rows })))?,
    }
    Ok(())
}

fn fig(args: FigArgs) -> Result<(), CliError> {
    let start = Instant::now();
    check_tol(args.common.tol)?;
    let data: FigureData = figure(args.n, args.common.tol)?;
    check_errors(data.series.iter().flat_map(|s| &s.rows), args.common.tol)?;
    let echo = json!({ "figure": args.n, "units": "natural" });
    let manifest = RunManifest::new(format!("fig {}", args.n), echo, args.common.tol, data.notes.clone())
        .timed(args.common.timing, start);
    match args.common.format {
        Format::Json => {
            Sink::from(args.common.output.as_deref()).write(&pretty(&json!({ "manifest": manifest, "data": data })))?
        }
        Format::Csv => {
            let dir = args.common.output.unwrap_or_else(|| PathBuf::from(format!("fig{}", args.n)));
            let mut files: Vec<(String, String)> =
                data.series.iter().map(|s| (format!("{}.csv", s.name), render_csv(&s.rows))).collect();
            let mut meta = serde_json::to_value(&manifest).expect("serializable");
            if !data.fits.is_empty() {
                meta["fits"] = serde_json::to_value(&data.fits).expect("serializable");
            }
            files.push(("manifest.json".into(), pretty(&meta)));
            write_dir_atomic(&dir, &files)?;
        }
    }
    Ok(())
}

fn matrix(args: MatrixArgs) -> Result<(), CliError> {
    check_tol(args.tol)?;
    let mut map = config::load(Some(&args.config))?;
    let (state_a, state_b) = config::states(&mut map)?;
    let spec = config::scenario(map, None, None)?;
    let m = signal_matrix(&spec, &state_a, &state_b, args.tol)?;
    let entries: Vec<Vec<[f64; 2]>> = m
        .entries
        .iter()
        .map(|row| row.iter().map(|z| [z.re + 0.0, z.im + 0.0]).collect())
        .collect();
    let trace = m.trace();
    let out = json!({
        "matrix": entries,
        "trace_residual": trace.norm(),
        "hermiticity_residual": m.hermiticity_residual(),
        "scenario": spec,
        "state_a": state_a,
        "state_b": state_b,
        "tolerance": args.tol,
    });
    Sink::from(args.output.as_deref()).write(&pretty(&out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep(a) => sweep(a),
        Command::Fig(a) => fig(a),
        Command::SignalMatrix(a) => matrix(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
