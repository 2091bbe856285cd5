//! aqc: experiment runner for the oscillator-battery Crooks simulator.
//!
//! Subcommands: `run` (custom configs and bundled presets), `presets`,
//! `identities`, `wigner`. Outputs are CSV with a sidecar JSON carrying the
//! fully resolved configuration, or a single JSON bundle. Reruns are
//! bit-identical. AQC_WORKERS caps the worker pool.

mod config;
mod output;
mod presets;
mod runner;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use aqc_core::{prepare_state, wigner_of_state, FockSpace, StateSpec, WignerGridSpec};
use config::{ExperimentConfig, OutputFormat};
use output::{columns, Cell, Table};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Core(aqc_core::Error),
    Io(std::io::Error),
}

impl CliError {
    pub fn config(message: impl Into<String>) -> Self {
        CliError::Config(message.into())
    }

    pub fn io(error: std::io::Error) -> Self {
        CliError::Io(error)
    }

    pub fn category(&self) -> &'static str {
        match self {
            CliError::Config(_) => "ConfigInvalid",
            CliError::Core(e) => e.category(),
            CliError::Io(_) => "IOFailure",
        }
    }

    pub fn message(&self) -> String {
        match self {
            CliError::Config(m) => m.clone(),
            CliError::Core(e) => e.to_string(),
            CliError::Io(e) => e.to_string(),
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Core(aqc_core::Error::TruncationInsufficient { .. }) => 3,
            CliError::Io(_) => 4,
            CliError::Core(_) => 5,
        }
    }
}

impl From<aqc_core::Error> for CliError {
    fn from(error: aqc_core::Error) -> Self {
        CliError::Core(error)
    }
}

#[derive(Parser)]
#[command(
    name = "aqc",
    about = "Simulate autonomous Crooks equalities for an oscillator battery",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    /// Output path; defaults to <preset>.csv or results.csv
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_parser = parse_format)]
    format: Option<OutputFormat>,
}

fn parse_format(s: &str) -> Result<OutputFormat, String> {
    match s {
        "csv" => Ok(OutputFormat::Csv),
        "json" => Ok(OutputFormat::Json),
        other => Err(format!("unknown format '{other}', expected csv or json")),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run a configuration file or a bundled preset
    Run {
        /// Path to a JSON experiment configuration
        #[arg(long, conflicts_with = "preset")]
        config: Option<PathBuf>,
        /// Name of a bundled preset (see `aqc presets`)
        #[arg(long)]
        preset: Option<String>,
        /// Override the Fock-space truncation
        #[arg(long)]
        dim: Option<usize>,
        /// Repeat each point at twice the truncation and record the drift
        #[arg(long)]
        convergence_check: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// List the bundled presets
    Presets,
    /// Evaluate the ladder-operator identity residuals
    Identities {
        /// Fock-space truncation for the dense oracle
        #[arg(long, default_value_t = 64)]
        dim: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate the Wigner function of a prepared state
    Wigner {
        /// Path to a JSON Wigner configuration
        #[arg(long)]
        config: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Serialize, Deserialize)]
struct WignerConfig {
    #[serde(default)]
    space: config::SpaceConfig,
    state: StateSpec,
    #[serde(default)]
    grid: GridConfig,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
struct GridConfig {
    #[serde(default = "default_points")]
    x_points: usize,
    #[serde(default = "default_points")]
    p_points: usize,
    #[serde(default)]
    half_span: Option<f64>,
}

fn default_points() -> usize {
    257
}

impl Default for GridConfig {
    fn default() -> Self {
        Self {
            x_points: 257,
            p_points: 257,
            half_span: None,
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    if let Err(error) = init_worker_pool() {
        return fail(&error);
    }
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => fail(&error),
    }
}

fn fail(error: &CliError) -> ExitCode {
    eprintln!(
        "{}",
        serde_json::json!({
            "error": {"category": error.category(), "message": error.message()}
        })
    );
    ExitCode::from(error.exit_code())
}

/// AQC_WORKERS caps the Rayon pool; unset keeps the default.
fn init_worker_pool() -> Result<(), CliError> {
    if let Ok(raw) = std::env::var("AQC_WORKERS") {
        let workers: usize = raw.parse().map_err(|_| {
            CliError::config(format!("AQC_WORKERS must be a positive integer, got '{raw}'"))
        })?;
        if workers == 0 {
            return Err(CliError::config("AQC_WORKERS must be at least 1"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .map_err(|e| CliError::config(e.to_string()))?;
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Run {
            config,
            preset,
            dim,
            convergence_check,
            output,
        } => run_command(config, preset, dim, convergence_check, output),
        Command::Presets => {
            for (name, description) in presets::PRESET_NAMES {
                println!("{name:18} {description}");
            }
            Ok(())
        }
        Command::Identities { dim, output } => {
            let table = presets::identities_table(dim)?;
            emit(&table, &output, "identities")
        }
        Command::Wigner { config, output } => wigner_command(&config, output),
    }
}

fn run_command(
    config_path: Option<PathBuf>,
    preset: Option<String>,
    dim: Option<usize>,
    convergence_check: bool,
    output: OutputArgs,
) -> Result<(), CliError> {
    let started = std::time::Instant::now();
    let (table, default_stem) = match (&config_path, &preset) {
        (Some(path), None) => {
            let raw = std::fs::read_to_string(path).map_err(CliError::io)?;
            let mut config: ExperimentConfig =
                serde_json::from_str(&raw).map_err(|e| CliError::config(e.to_string()))?;
            if let Some(dim) = dim {
                config.space.dim = dim;
            }
            if convergence_check {
                config.convergence_check = true;
            }
            let table = runner::experiment_table(&config)?;
            (table, "results".to_string())
        }
        (None, Some(name)) => {
            let table = presets::run_preset(name, dim)?;
            (table, name.clone())
        }
        _ => {
            return Err(CliError::config(
                "run needs exactly one of --config or --preset",
            ))
        }
    };
    log::info!("run completed in {:?}", started.elapsed());
    emit(&table, &output, &default_stem)
}

fn wigner_command(config_path: &PathBuf, output: OutputArgs) -> Result<(), CliError> {
    let raw = std::fs::read_to_string(config_path).map_err(CliError::io)?;
    let config: WignerConfig =
        serde_json::from_str(&raw).map_err(|e| CliError::config(e.to_string()))?;
    let space = FockSpace::new(config.space.dim, config.space.hbar_omega, config.space.k_t)?;
    let state = prepare_state(&space, &config.state)?;
    let spec = WignerGridSpec {
        x_points: config.grid.x_points,
        p_points: config.grid.p_points,
        half_span: config.grid.half_span,
    };
    let grid = wigner_of_state(&space, &state, &spec)?;

    let mut rows = Vec::with_capacity(grid.x_axis.len() * grid.p_axis.len());
    for (i, &x) in grid.x_axis.iter().enumerate() {
        for (j, &p) in grid.p_axis.iter().enumerate() {
            rows.push(vec![
                Cell::Number(x),
                Cell::Number(p),
                Cell::Number(grid.values[(j, i)]),
            ]);
        }
    }
    let table = Table {
        columns: columns(&["x", "p", "w"]),
        rows,
        resolved_config: serde_json::json!({
            "tool": "aqc",
            "kind": "wigner",
            "config": serde_json::to_value(&config).expect("serialisable config"),
            "axis_units": "quadrature x = sqrt(2) X",
            "min_w": grid.min_value,
            "negativity_volume": aqc_core::negativity_volume(&grid),
        }),
    };
    emit(&table, &output, "wigner")
}

fn emit(table: &Table, output: &OutputArgs, default_stem: &str) -> Result<(), CliError> {
    let format = output.format.unwrap_or(OutputFormat::Csv);
    let extension = match format {
        OutputFormat::Csv => "csv",
        OutputFormat::Json => "json",
    };
    let path = output
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{default_stem}.{extension}")));
    match format {
        OutputFormat::Csv => table.write_csv(&path)?,
        OutputFormat::Json => table.write_json(&path)?,
    }
    log::info!("wrote {}", path.display());
    Ok(())
}
