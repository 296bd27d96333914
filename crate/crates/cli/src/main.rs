//! `sulsim` — DS2D uplink link-budget and SUL switching simulator.

use std::fs::File;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use sulsim_cli::commands;
use sulsim_cli::scenario_file;
use sulsim_cli::CliError;
use sulsim_core::{CarrierMode, ScenarioConfig};

#[derive(Parser)]
#[command(
    name = "sulsim",
    version,
    about = "Simulates a direct satellite-to-device uplink with supplementary-uplink carrier selection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Scenario file (TOML); the built-in default scenario when omitted
    #[arg(long, value_name = "PATH")]
    scenario: Option<PathBuf>,
    /// Write the primary output to a file instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Emit machine-readable CSV (only affects link-budget; the sweep and
    /// pass commands always emit CSV)
    #[arg(long)]
    csv: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Per-carrier link-budget breakdown at one elevation
    LinkBudget {
        /// Elevation angle in degrees
        #[arg(long)]
        elevation: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Minimum elevation versus target SNR (CSV)
    SnrSweep {
        /// Lowest target SNR in dB
        #[arg(long, default_value_t = 0.0)]
        target_min: f64,
        /// Highest target SNR in dB
        #[arg(long, default_value_t = 10.0)]
        target_max: f64,
        /// Target SNR step in dB
        #[arg(long, default_value_t = 1.0)]
        target_step: f64,
        #[command(flatten)]
        common: Common,
    },
    /// Simulate one satellite pass: CSV trace plus a summary line
    Pass {
        /// Disable the SUL and stay on the primary uplink
        #[arg(long)]
        pul_only: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Switch-count statistics versus hysteresis margin (CSV)
    HysteresisSweep {
        /// Lowest hysteresis margin in dB
        #[arg(long, default_value_t = 0.0)]
        dh_min: f64,
        /// Highest hysteresis margin in dB
        #[arg(long, default_value_t = 6.0)]
        dh_max: f64,
        /// Hysteresis margin step in dB
        #[arg(long, default_value_t = 0.5)]
        dh_step: f64,
        /// Number of seeded runs per hysteresis value
        #[arg(long, default_value_t = 100)]
        seeds: u64,
        #[command(flatten)]
        common: Common,
    },
}

fn load(common: &Common) -> Result<ScenarioConfig, CliError> {
    match &common.scenario {
        Some(path) => scenario_file::load_scenario(path),
        None => Ok(ScenarioConfig::default()),
    }
}

fn open_out(common: &Common) -> Result<Box<dyn Write>, CliError> {
    match &common.out {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", path.display())))?;
            Ok(Box::new(file))
        }
        None => Ok(Box::new(std::io::stdout().lock())),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::LinkBudget { elevation, common } => {
            let scenario = load(&common)?;
            let mut out = open_out(&common)?;
            commands::cmd_link_budget(&scenario, elevation, common.csv, &mut out)
        }
        Command::SnrSweep {
            target_min,
            target_max,
            target_step,
            common,
        } => {
            let scenario = load(&common)?;
            let mut out = open_out(&common)?;
            commands::cmd_snr_sweep(&scenario, target_min, target_max, target_step, &mut out)
        }
        Command::Pass { pul_only, common } => {
            let mut scenario = load(&common)?;
            if pul_only {
                scenario.carrier_mode = CarrierMode::PulOnly;
            }
            // keep stdout clean CSV when no --out is given: the summary
            // goes to stderr then, to stdout otherwise
            let mut csv_out = open_out(&common)?;
            let result = if common.out.is_some() {
                commands::cmd_pass(&scenario, &mut csv_out, &mut std::io::stdout().lock())
            } else {
                commands::cmd_pass(&scenario, &mut csv_out, &mut std::io::stderr().lock())
            };
            result.map(|_| ())
        }
        Command::HysteresisSweep {
            dh_min,
            dh_max,
            dh_step,
            seeds,
            common,
        } => {
            let scenario = load(&common)?;
            let mut out = open_out(&common)?;
            commands::cmd_hysteresis_sweep(&scenario, dh_min, dh_max, dh_step, seeds, &mut out)
        }
    }
}

fn main() {
    // clap itself exits with code 2 on usage errors
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) | Err(CliError::Pipe) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
