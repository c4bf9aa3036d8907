//! `triwalk` — command-line front end for three-state quantum walks on ℤ.
//!
//! Subcommands: `simulate` (evolve and dump distributions), `limit`
//! (closed-form limit profiles), `localize` (localization verdicts),
//! `velocity` (peak-velocity profiles and dispersion dumps), `sweep`
//! (θ-grid curves), and `verify` (oracle self-checks).
//!
//! Exit codes: 0 success, 2 configuration error, 3 verification failure.
//! Identical configurations produce byte-identical output files regardless
//! of `--threads` (or the `QWALK_THREADS` override).

mod emit;
mod parse;
mod run;
mod verify;

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

use triwalk::coin::Family;

/// Top-level errors; configuration problems exit 2, I/O problems exit 1.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum FamilyArg {
    #[value(name = "X")]
    X,
    #[value(name = "Y")]
    Y,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::X => Family::X,
            FamilyArg::Y => Family::Y,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Quantity swept over the θ grid.
#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum Quantity {
    /// Limit probability at the origin plus total trapped mass
    #[value(name = "limit_p0", alias = "limit")]
    LimitP0,
    /// Peak-velocity profile columns
    Velocity,
}

/// Coin selection: `--theta` (radians or exact π fractions) or `--x/--y`.
#[derive(Args, Debug)]
pub struct CoinArgs {
    /// Coin family
    #[arg(long, value_enum, ignore_case = true)]
    pub family: FamilyArg,
    /// Angle θ; accepts radians ("1.25") or π fractions ("pi/2", "-2pi/3")
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["x", "y"])]
    pub theta: Option<String>,
    /// Diagonal coin entry (alternative to --theta; requires --y)
    #[arg(long, allow_hyphen_values = true, requires = "y")]
    pub x: Option<f64>,
    /// Off-diagonal coin entry (requires --x)
    #[arg(long, allow_hyphen_values = true, requires = "x")]
    pub y: Option<f64>,
}

/// Initial coin state.
#[derive(Args, Debug)]
pub struct InitArg {
    /// "symmetric" (1,1,1)/√3, "lr" (1,0,1)/√2, "escaping"
    /// (coin-dependent), or three complex components "a,b,c" with unit norm
    #[arg(long, default_value = "symmetric", allow_hyphen_values = true)]
    pub init: String,
}

/// Output destination and format.
#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Write to this file instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub coin: CoinArgs,
    #[command(flatten)]
    pub init: InitArg,
    /// Number of steps
    #[arg(long)]
    pub t: u64,
    /// Restrict output rows to this inclusive window, e.g. "-10..10"
    /// (default: the full support [-t, t])
    #[arg(long, allow_hyphen_values = true)]
    pub m_window: Option<String>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct LimitArgs {
    #[command(flatten)]
    pub coin: CoinArgs,
    #[command(flatten)]
    pub init: InitArg,
    /// Site window for the profile, e.g. "-10..10"
    #[arg(long, default_value = "-10..10", allow_hyphen_values = true)]
    pub m_window: String,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct LocalizeArgs {
    #[command(flatten)]
    pub coin: CoinArgs,
    #[command(flatten)]
    pub init: InitArg,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct VelocityArgs {
    #[command(flatten)]
    pub coin: CoinArgs,
    /// Dump the dispersion relation over this many k nodes on [-π, π]
    /// instead of the peak-velocity profile
    #[arg(long)]
    pub dispersion_nodes: Option<u64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Coin family
    #[arg(long, value_enum, ignore_case = true)]
    pub family: FamilyArg,
    /// Number of θ grid points on [-π, π], endpoints included
    #[arg(long)]
    pub grid: u64,
    /// Quantity to sweep
    #[arg(long, value_enum)]
    pub quantity: Quantity,
    #[command(flatten)]
    pub init: InitArg,
    /// Worker threads (0 = all cores); env QWALK_THREADS overrides
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Parser, Debug)]
#[command(
    name = "triwalk",
    version,
    about = "Three-state quantum walks on the integer line: simulation, \
             limit profiles, localization, and velocity analysis"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Evolve the walk and dump the site distribution
    Simulate(SimulateArgs),
    /// Closed-form limit profile over a site window
    Limit(LimitArgs),
    /// Localization verdict: limit at the origin and total trapped mass
    Localize(LocalizeArgs),
    /// Peak-velocity profile, or a dispersion dump
    Velocity(VelocityArgs),
    /// Sweep a quantity over a θ grid
    Sweep(SweepArgs),
    /// Run the oracle self-check suites
    Verify,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Cmd::Simulate(args) => run::simulate(args),
        Cmd::Limit(args) => run::limit(args),
        Cmd::Localize(args) => run::localize(args),
        Cmd::Velocity(args) => run::velocity(args),
        Cmd::Sweep(args) => run::sweep(args),
        Cmd::Verify => {
            return if verify::run_all() { ExitCode::SUCCESS } else { ExitCode::from(3) };
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err @ CliError::Config(_)) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}
