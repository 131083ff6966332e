//! Command-line front end: run notch-depth sweeps and models, emit CSV or
//! JSON curve data.
//!
//! Exit codes: 0 success, 1 runtime failure, 2 usage error.

mod config;
mod grid;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use config::RunConfig;
use dlnotch::{
    breakpoints_inr, breakpoints_snapshots, model_only_curve, run_sweep, validate_rmt_projection,
    ArrayGeometry, AveragingDomain, NotchDepthCurve, Scenario, SweepAxis, SweepSpec,
};
use render::{curve_to_csv, curve_to_json};

#[derive(Parser)]
#[command(
    name = "dlnotch",
    version,
    about = "Notch depth of diagonally loaded MVDR beamformers: Monte Carlo sweeps and mean-notch models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Notch depth vs snapshot count: Monte Carlo mean, model, ensemble.
    SweepSnapshots(SweepArgs),
    /// Notch depth vs INR: Monte Carlo mean, model, ensemble.
    SweepInr(SweepArgs),
    /// Model breakpoints L1, L2, L3, INR1, INR2 for a scenario.
    Breakpoints(ScenarioArgs),
    /// Monte Carlo check of the principal-eigenvector projection law.
    ValidateRmt(ValidateArgs),
    /// Closed-form ensemble notch depth for a scenario.
    EnsembleNd(ScenarioArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// JSON run configuration; explicit flags override its fields
    #[arg(long)]
    config: Option<PathBuf>,
    /// Sensor count N
    #[arg(long)]
    n: Option<usize>,
    /// Element spacing in wavelengths
    #[arg(long)]
    spacing: Option<f64>,
    /// Look direction cosine u0
    #[arg(long, allow_hyphen_values = true)]
    u0: Option<f64>,
    /// Interferer direction cosine u1
    #[arg(long, allow_hyphen_values = true)]
    u1: Option<f64>,
    /// Diagonal loading level
    #[arg(long)]
    delta: Option<f64>,
    /// Fixed INR in dB (snapshot sweeps)
    #[arg(long, allow_hyphen_values = true)]
    inr_db: Option<f64>,
    /// Fixed snapshot count (INR sweeps)
    #[arg(long)]
    l: Option<usize>,
    /// Snapshot grid: start:stop:logK, start:stop:step, or comma list
    #[arg(long)]
    l_grid: Option<String>,
    /// INR grid in dB: start:stop:step, start:stop:logK, or comma list
    #[arg(long, allow_hyphen_values = true)]
    inr_grid_db: Option<String>,
    /// Monte Carlo trials per grid point
    #[arg(long)]
    trials: Option<usize>,
    /// Master seed for the trial substreams
    #[arg(long)]
    seed: Option<u64>,
    /// Output file
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Skip simulation; emit model and ensemble columns only
    #[arg(long)]
    emit_model_only: bool,
    /// Average per-trial notch depths in dB instead of linear power
    #[arg(long)]
    db_mean: bool,
}

#[derive(Args)]
struct ScenarioArgs {
    #[arg(long, default_value_t = 50)]
    n: usize,
    #[arg(long, default_value_t = 0.5)]
    spacing: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    u0: f64,
    #[arg(long, default_value_t = 0.06, allow_hyphen_values = true)]
    u1: f64,
    #[arg(long, default_value_t = 0.5)]
    delta: f64,
    /// INR in dB
    #[arg(long, default_value_t = 20.0, allow_hyphen_values = true)]
    inr_db: f64,
    /// Snapshot count (sets the aspect ratio c = N/L)
    #[arg(long, default_value_t = 100)]
    l: usize,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ValidateArgs {
    #[arg(long, default_value_t = 50)]
    n: usize,
    #[arg(long, default_value_t = 0.5)]
    spacing: f64,
    #[arg(long, default_value_t = 0.06, allow_hyphen_values = true)]
    u1: f64,
    #[arg(long, default_value_t = 100)]
    l: usize,
    /// INR in dB
    #[arg(long, default_value_t = 20.0, allow_hyphen_values = true)]
    inr_db: f64,
    #[arg(long, default_value_t = 500)]
    trials: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

enum CliError {
    Usage(String),
    Runtime(String),
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        Self::Usage(msg.into())
    }
}

impl From<dlnotch::Error> for CliError {
    fn from(e: dlnotch::Error) -> Self {
        match e {
            dlnotch::Error::InvalidParameter(_) | dlnotch::Error::InvalidDirection(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Runtime(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::SweepSnapshots(args) => run_sweep_cmd(args, SweepAxis::Snapshots),
        Command::SweepInr(args) => run_sweep_cmd(args, SweepAxis::Inr),
        Command::Breakpoints(args) => run_breakpoints(args),
        Command::ValidateRmt(args) => run_validate(args),
        Command::EnsembleNd(args) => run_ensemble_nd(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Everything a sweep needs after merging flags over the config file.
struct ResolvedSweep {
    scenario: Scenario,
    axis: SweepAxis,
    axis_values: Vec<f64>,
    trials: usize,
    master_seed: u64,
    averaging: AveragingDomain,
    output: PathBuf,
    format: OutputFormat,
    emit_model_only: bool,
}

fn resolve_sweep(args: SweepArgs, axis: SweepAxis) -> Result<ResolvedSweep, CliError> {
    let cfg = match &args.config {
        Some(path) => RunConfig::load(path).map_err(CliError::Usage)?,
        None => RunConfig::default(),
    };
    if let Some(cfg_axis) = cfg.axis.as_deref() {
        let expected = match axis {
            SweepAxis::Snapshots => "snapshots",
            SweepAxis::Inr => "inr",
        };
        if cfg_axis != expected {
            return Err(CliError::usage(format!(
                "config axis '{cfg_axis}' does not match the '{expected}' subcommand"
            )));
        }
    }

    let n = args
        .n
        .or(cfg.n)
        .ok_or_else(|| CliError::usage("missing --n"))?;
    let spacing = args.spacing.or(cfg.spacing).unwrap_or(0.5);
    let u0 = args.u0.or(cfg.u0).unwrap_or(0.0);
    let u1 = args.u1.or(cfg.u1).unwrap_or(0.06);
    let delta = args
        .delta
        .or(cfg.delta)
        .ok_or_else(|| CliError::usage("missing --delta"))?;

    // the swept grid, in CLI units (snapshot counts, or INR dB); falls
    // back to the standard figure axes when nothing is given
    let (grid_flag, default_grid) = match axis {
        SweepAxis::Snapshots => (args.l_grid.clone(), "25:1000:log10"),
        SweepAxis::Inr => (args.inr_grid_db.clone(), "-20:40:2"),
    };
    let raw_values: Vec<f64> = if let Some(gspec) = grid_flag.or(cfg.grid.clone()) {
        grid::parse_grid(&gspec).map_err(CliError::Usage)?
    } else if let Some(values) = cfg.axis_values.clone() {
        values
    } else {
        grid::parse_grid(default_grid).expect("default grid parses")
    };
    let axis_values = match axis {
        SweepAxis::Snapshots => grid::to_snapshot_grid(&raw_values).map_err(CliError::Usage)?,
        SweepAxis::Inr => raw_values.iter().map(|&db| db_to_linear(db)).collect(),
    };

    // the non-swept parameter; scenario defaults keep it well-defined
    let fixed_inr_db;
    let fixed_snapshots;
    match axis {
        SweepAxis::Snapshots => {
            fixed_inr_db = args
                .inr_db
                .or(cfg.fixed_value)
                .ok_or_else(|| CliError::usage("missing --inr-db"))?;
            fixed_snapshots = axis_values[0] as usize;
        }
        SweepAxis::Inr => {
            fixed_snapshots = match (args.l, cfg.fixed_value) {
                (Some(l), _) => l,
                (None, Some(v)) => v as usize,
                (None, None) => return Err(CliError::usage("missing --l")),
            };
            fixed_inr_db = 20.0; // placeholder; overridden per grid point
        }
    }

    let trials = args.trials.or(cfg.trials).unwrap_or(500);
    let master_seed = args.seed.or(cfg.master_seed).unwrap_or(42);
    let averaging = if args.db_mean || cfg.db_mean.unwrap_or(false) {
        AveragingDomain::Decibel
    } else {
        AveragingDomain::Linear
    };
    let output = args
        .out
        .or(cfg.output)
        .ok_or_else(|| CliError::usage("missing --out"))?;
    let format = match args.format {
        Some(f) => f,
        None => match cfg.format.as_deref() {
            None => OutputFormat::Csv,
            Some("csv") => OutputFormat::Csv,
            Some("json") => OutputFormat::Json,
            Some(other) => {
                return Err(CliError::usage(format!(
                    "unrecognized format '{other}' (expected csv or json)"
                )))
            }
        },
    };
    let emit_model_only = args.emit_model_only || cfg.emit_model_only.unwrap_or(false);

    let geometry = ArrayGeometry::new(n, spacing)?;
    let scenario = Scenario::new(
        geometry,
        u0,
        u1,
        delta,
        db_to_linear(fixed_inr_db),
        fixed_snapshots,
    )?;
    Ok(ResolvedSweep {
        scenario,
        axis,
        axis_values,
        trials,
        master_seed,
        averaging,
        output,
        format,
        emit_model_only,
    })
}

fn print_validity_warnings(resolved: &ResolvedSweep) {
    let mut seen: Vec<String> = Vec::new();
    for &v in &resolved.axis_values {
        let scenario = match resolved.axis {
            SweepAxis::Snapshots => resolved.scenario.with_snapshots(v as usize),
            SweepAxis::Inr => resolved.scenario.with_inr(v),
        };
        let Ok(params) = scenario.model_params() else {
            continue;
        };
        for w in params.validity_warnings() {
            let msg = w.to_string();
            if !seen.contains(&msg) {
                eprintln!("warning: {msg}");
                seen.push(msg);
            }
        }
    }
}

fn run_sweep_cmd(args: SweepArgs, axis: SweepAxis) -> Result<(), CliError> {
    let resolved = resolve_sweep(args, axis)?;
    print_validity_warnings(&resolved);

    let curve: NotchDepthCurve = if resolved.emit_model_only {
        model_only_curve(&resolved.scenario, resolved.axis, &resolved.axis_values)?
    } else {
        let spec = SweepSpec::new(
            resolved.scenario,
            resolved.axis,
            resolved.axis_values.clone(),
            resolved.trials,
            resolved.master_seed,
            resolved.averaging,
        )?;
        run_sweep(&spec)?
    };

    let rendered = match resolved.format {
        OutputFormat::Csv => curve_to_csv(&curve),
        OutputFormat::Json => curve_to_json(&curve),
    };
    write_output(Some(&resolved.output), &rendered)?;
    println!(
        "wrote {} ({} points)",
        resolved.output.display(),
        curve.axis_values.len()
    );
    Ok(())
}

/// Breakpoint report: linear values plus the log/dB forms used to
/// annotate log-scale plots.
#[derive(Serialize, Deserialize)]
struct BreakpointReport {
    n: usize,
    l: usize,
    delta: f64,
    inr_db: f64,
    u0: f64,
    u1: f64,
    l1: f64,
    l2: f64,
    l3: f64,
    l1_log10: f64,
    l2_log10: f64,
    l3_log10: f64,
    inr1: f64,
    inr2: f64,
    inr1_db: f64,
    inr2_db: f64,
}

fn run_breakpoints(args: ScenarioArgs) -> Result<(), CliError> {
    let geometry = ArrayGeometry::new(args.n, args.spacing)?;
    let scenario = Scenario::new(
        geometry,
        args.u0,
        args.u1,
        args.delta,
        db_to_linear(args.inr_db),
        args.l,
    )?;
    let params = scenario.model_params()?;
    // degenerate geometry surfaces here as a runtime failure (exit 1)
    let bl = breakpoints_snapshots(&params).map_err(|e| CliError::Runtime(e.to_string()))?;
    let bi = breakpoints_inr(&params).map_err(|e| CliError::Runtime(e.to_string()))?;
    let report = BreakpointReport {
        n: args.n,
        l: args.l,
        delta: args.delta,
        inr_db: args.inr_db,
        u0: args.u0,
        u1: args.u1,
        l1: bl.l1,
        l2: bl.l2,
        l3: bl.l3,
        l1_log10: bl.l1.log10(),
        l2_log10: bl.l2.log10(),
        l3_log10: bl.l3.log10(),
        inr1: bi.inr1,
        inr2: bi.inr2,
        inr1_db: 10.0 * bi.inr1.log10(),
        inr2_db: 10.0 * bi.inr2.log10(),
    };
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    write_output(args.out.as_deref(), &text)
}

#[derive(Serialize, Deserialize)]
struct ValidationReport {
    n: usize,
    l: usize,
    inr_db: f64,
    trials: usize,
    seed: u64,
    empirical_mean: f64,
    model: f64,
    abs_gap: f64,
    below_transition: bool,
}

fn run_validate(args: ValidateArgs) -> Result<(), CliError> {
    let geometry = ArrayGeometry::new(args.n, args.spacing)?;
    let scenario = Scenario::new(
        geometry,
        0.0,
        args.u1,
        0.0,
        db_to_linear(args.inr_db),
        args.l,
    )?;
    if args.trials == 0 {
        return Err(CliError::usage("--trials must be at least 1"));
    }
    let v = validate_rmt_projection(&scenario, args.trials, args.seed)
        .map_err(|e| CliError::Runtime(e.to_string()))?;
    let report = ValidationReport {
        n: args.n,
        l: args.l,
        inr_db: args.inr_db,
        trials: v.trials,
        seed: v.master_seed,
        empirical_mean: v.empirical_mean,
        model: v.model,
        abs_gap: v.abs_gap,
        below_transition: v.below_transition,
    };
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    write_output(args.out.as_deref(), &text)
}

#[derive(Serialize, Deserialize)]
struct EnsembleReport {
    n: usize,
    delta: f64,
    inr_db: f64,
    u0: f64,
    u1: f64,
    cos_sq: f64,
    nd_linear: f64,
    nd_db: f64,
}

fn run_ensemble_nd(args: ScenarioArgs) -> Result<(), CliError> {
    let geometry = ArrayGeometry::new(args.n, args.spacing)?;
    let scenario = Scenario::new(
        geometry,
        args.u0,
        args.u1,
        args.delta,
        db_to_linear(args.inr_db),
        args.l,
    )?;
    let v0 = scenario.look_vector()?;
    let v1 = scenario.interferer_vector()?;
    let cos_sq = dlnotch::generalized_cosine_sq(&v0, &v1)?;
    let nd = scenario.ensemble_nd()?;
    let report = EnsembleReport {
        n: args.n,
        delta: args.delta,
        inr_db: args.inr_db,
        u0: args.u0,
        u1: args.u1,
        cos_sq,
        nd_linear: nd.linear,
        nd_db: nd.db,
    };
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    write_output(args.out.as_deref(), &text)
}

fn write_output(path: Option<&std::path::Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Runtime(format!("cannot write stdout: {e}")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
