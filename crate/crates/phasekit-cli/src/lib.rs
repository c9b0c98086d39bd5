//! Command-line front end: resolves a run configuration, dispatches the
//! subcommands, and maps failures onto the exit-code contract (0 pass,
//! 1 numerical failure, 2 usage or configuration error).

use clap::Parser;
use std::path::PathBuf;

pub mod commands;
pub mod config;
pub mod output;
pub mod state_io;
pub mod verify;

use config::{ConfigOverrides, RunConfig};

#[derive(Clone, Debug)]
pub enum CliError {
    /// Usage or configuration problems; exit code 2.
    Config(String),
    /// The run itself failed numerically; exit code 1.
    Numerical(String),
}

impl CliError {
    pub fn config(msg: String) -> CliError {
        CliError::Config(msg)
    }

    pub fn numerical(msg: String) -> CliError {
        CliError::Numerical(msg)
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Config(m) | CliError::Numerical(m) => m,
        }
    }
}

impl From<phasekit::PhaseError> for CliError {
    fn from(e: phasekit::PhaseError) -> CliError {
        use phasekit::PhaseError::*;
        match &e {
            // The caller asked for something the library refuses up front.
            InvalidParameter(_) | ScaleMismatch(_) | CapExceeded { .. }
            | GridTooSmall { .. } => CliError::Config(e.to_string()),
            // The computation itself did not reach the requested quality.
            NonConvergence { .. } | OutOfDomain { .. } | TailTooHeavy { .. } | ZeroField
            | WindowSensitive { .. } => CliError::Numerical(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "phasekit", version, about = "Harmonic phase-space representation toolkit")]
pub struct Cli {
    /// Config file (JSON). Falls back to $PHASEKIT_CONFIG, then defaults.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub overrides: ConfigOverrides,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Subcommand)]
pub enum Command {
    /// Run the verification suite and write a JSON report.
    Verify {
        #[arg(long, default_value = "phasekit_verify.json")]
        report: PathBuf,
    },
    /// Expand a state over the discrete family at one base label.
    Project(commands::ProjectArgs),
    /// Emit the phase-plane probability density of a state at one index.
    Density(commands::DensityArgs),
    /// Tabulate the overlap kernel over indices or labels.
    Kernel(commands::KernelCmdArgs),
    /// Sample one basis member in position or momentum representation.
    Basis(commands::BasisArgs),
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successful exits; everything else is
            // usage.
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32, CliError> {
    let config = RunConfig::resolve(cli.config.as_deref(), &cli.overrides)?;
    match &cli.command {
        Command::Verify { report } => cmd_verify(&config, report),
        Command::Project(args) => commands::cmd_project(&config, args).map(|()| 0),
        Command::Density(args) => commands::cmd_density(&config, args).map(|()| 0),
        Command::Kernel(args) => commands::cmd_kernel(&config, args).map(|()| 0),
        Command::Basis(args) => commands::cmd_basis(&config, args).map(|()| 0),
    }
}

fn cmd_verify(config: &RunConfig, report_path: &std::path::Path) -> Result<i32, CliError> {
    let report = verify::run_suite(config)?;
    for check in &report.checks {
        println!(
            "check {}: {} measured {:.3e} expected {:.3e} tolerance {:.1e}",
            check.name,
            if check.pass { "PASS" } else { "FAIL" },
            check.measured,
            check.expected,
            check.tolerance
        );
    }
    println!(
        "overall: {} ({}/{} checks passed)",
        if report.pass { "PASS" } else { "FAIL" },
        report.checks.iter().filter(|c| c.pass).count(),
        report.checks.len()
    );
    let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
    json.push('\n');
    output::write_file(report_path, &json)?;
    Ok(if report.pass { 0 } else { 1 })
}
