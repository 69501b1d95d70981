use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use ckncs::CoefficientConvention;
use ckncs_cli::config::Scenario;
use ckncs_cli::{runner, CliError, CliResult};

/// Simulator for two-mode cross-Kerr nonlinear coherent states and their
/// interaction with a three-level lambda atom.
#[derive(Parser)]
#[command(name = "ckncs", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,

    /// Worker threads for sweeps and overlays (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Override the coefficient convention from the config.
    #[arg(long, global = true, value_parser = parse_convention)]
    convention: Option<CoefficientConvention>,
}

fn parse_convention(s: &str) -> Result<CoefficientConvention, String> {
    s.parse().map_err(|e: ckncs::Error| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Build a coherent state and its static statistics.
    State {
        #[arg(long)]
        config: PathBuf,
    },
    /// Evolve the atom-field system and trace the requested observables.
    Dynamics {
        #[arg(long)]
        config: PathBuf,
    },
    /// Resolution-of-identity residuals over the deformation list.
    IdentityCheck {
        #[arg(long)]
        config: PathBuf,
    },
    /// Long-format sweep over the single list-valued axis.
    Sweep {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run every bundled figure scenario.
    Figures,
}

fn load(config: &PathBuf, convention: Option<CoefficientConvention>) -> CliResult<Scenario> {
    Ok(Scenario::from_path(config)?.with_convention(convention))
}

fn run(cli: Cli) -> CliResult<()> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(CliError::Validation("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Validation(format!("--threads: {e}")))?;
    }

    let written = match &cli.command {
        Command::State { config } => runner::run_state(&load(config, cli.convention)?, &cli.out)?,
        Command::Dynamics { config } => {
            runner::run_dynamics(&load(config, cli.convention)?, &cli.out)?
        }
        Command::IdentityCheck { config } => {
            runner::run_identity(&load(config, cli.convention)?, &cli.out)?
        }
        Command::Sweep { config } => runner::run_sweep(&load(config, cli.convention)?, &cli.out)?,
        Command::Figures => runner::run_figures(&cli.out)?,
    };
    for path in &written {
        println!("{}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
