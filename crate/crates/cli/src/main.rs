//! `kerrcav` command-line front end.

mod commands;
mod format;
mod units;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "kerrcav",
    version,
    about = "Cavity polarization-qubit simulator and feasibility calculator"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,

    /// Write data here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List longitudinal modes inside a spectral band.
    Modes(ModesArgs),
    /// Run a circuit file and print the final register state.
    Simulate(SimulateArgs),
    /// Monte Carlo fidelity of the accumulated HPH circuit.
    NoiseSweep(NoiseSweepArgs),
    /// Nonlinear phase budget and linewidth requirements.
    Feasibility(FeasibilityArgs),
    /// Check the qubit gates against the photon-number model.
    OracleCheck(OracleArgs),
}

#[derive(Args, Debug)]
pub struct ModesArgs {
    /// Cavity length (`0.15`, `15cm`).
    #[arg(long, value_parser = units::length, default_value = "0.15")]
    pub length: f64,
    /// Band center frequency (`1GHz`).
    #[arg(long, value_parser = units::frequency, conflicts_with = "center_q", required_unless_present = "center_q")]
    pub center: Option<f64>,
    /// Band center given as a mode index.
    #[arg(long)]
    pub center_q: Option<u64>,
    /// Full band width (`0`, `5GHz`).
    #[arg(long, value_parser = units::frequency, default_value = "0")]
    pub bandwidth: f64,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    /// Circuit program.
    pub file: PathBuf,
    /// Expected qubit count; must match the file's QUBITS line.
    #[arg(long)]
    pub qubits: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepMode {
    /// Vary the per-transit noise at fixed round trips.
    Sigma,
    /// Vary the round trips per stage at fixed noise.
    Reflections,
}

#[derive(Args, Debug)]
pub struct NoiseSweepArgs {
    #[arg(long, value_enum, default_value_t = SweepMode::Sigma)]
    pub mode: SweepMode,
    /// Grid values, `a,b,c` or `start:stop:count`.
    #[arg(long)]
    pub grid: Option<String>,
    /// Phase of the middle gate (`pi/2`).
    #[arg(long, default_value = "pi/2", value_parser = parse_angle)]
    pub phi: f64,
    /// Round trips per stage for sigma sweeps.
    #[arg(long, default_value_t = 3000)]
    pub round_trips: u64,
    /// Element passes per round trip.
    #[arg(long, default_value_t = 1)]
    pub passes: u64,
    /// Noise level for reflection sweeps, rad.
    #[arg(long, default_value_t = 4e-4)]
    pub sigma: f64,
    #[arg(long, default_value_t = kerrcav::transit::DEFAULT_TRIALS)]
    pub trials: usize,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    /// Also perturb angles that are nominally zero.
    #[arg(long)]
    pub perturb_all: bool,
}

#[derive(Args, Debug)]
pub struct FeasibilityArgs {
    /// conservative, moderate, aggressive or all.
    #[arg(long, conflicts_with_all = ["n2", "power", "waist", "q_factor"])]
    pub preset: Option<String>,
    /// Nonlinear index, m²/W.
    #[arg(long, requires_all = ["power", "waist", "q_factor"])]
    pub n2: Option<f64>,
    #[arg(long, value_parser = units::power)]
    pub power: Option<f64>,
    /// Beam waist (`30um`).
    #[arg(long, value_parser = units::length)]
    pub waist: Option<f64>,
    #[arg(long = "q")]
    pub q_factor: Option<f64>,
    #[arg(long, value_parser = units::length, default_value = "980nm")]
    pub wavelength: f64,
    #[arg(long, value_parser = units::length, default_value = "0.15")]
    pub cavity_length: f64,
    #[arg(long, value_parser = units::length, default_value = "0.01")]
    pub nl_length: f64,
    /// Operation counts for the linewidth budget.
    #[arg(long, value_delimiter = ',', default_value = "10,100,1000")]
    pub ops: Vec<u64>,
    /// Laser linewidth for the coherence check (`1kHz`).
    #[arg(long, value_parser = units::frequency)]
    pub laser_linewidth: Option<f64>,
    #[arg(long, default_value_t = kerrcav::feasibility::DEFAULT_COHERENCE_MARGIN, requires = "laser_linewidth")]
    pub margin: f64,
    /// Phase target for the implied L_nl/L_cav ratio.
    #[arg(long, value_parser = parse_angle)]
    pub target_phase: Option<f64>,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[arg(long, default_value_t = kerrcav::fock::DEFAULT_N_MAX)]
    pub n_max: usize,
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    #[arg(long, default_value_t = 2024)]
    pub seed: u64,
    #[arg(long, hide = true)]
    pub inject_sign_flip: bool,
}

fn parse_angle(s: &str) -> Result<f64, String> {
    kerrcav::circuit::parse_angle(s)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Modes(a) => commands::modes(a, cli.format),
        Command::Simulate(a) => commands::simulate(a, cli.format),
        Command::NoiseSweep(a) => commands::noise_sweep(a, cli.format),
        Command::Feasibility(a) => commands::feasibility(a, cli.format),
        Command::OracleCheck(a) => commands::oracle_check(a, cli.format),
    };
    let outcome = result.and_then(|out| {
        commands::emit(&out.text, cli.out.as_deref())?;
        Ok(out.success)
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(commands::EXIT_CHECK_FAILED),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
