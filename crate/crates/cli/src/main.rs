//! `linefront`: front speeds, profiles, simulations and sweeps for the
//! line-production model `u_t = D Lap u - k u + a H(u - u_c) delta(y)`.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid configuration,
//! 3 numerical failure.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod config;

use config::{InitKind, ParamArgs};

#[derive(Debug, Parser)]
#[command(name = "linefront", version, about = "Threshold fronts driven by production on a line")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Front speed, regime and the threshold-integral cross-check.
    Velocity(VelocityArgs),
    /// Concentration on a rectangle and along the production line.
    Profile(ProfileArgs),
    /// Finite-difference run from an initial front; fits the speed.
    Simulate(SimulateArgs),
    /// Speed and stationary-bump tables over a range of alpha.
    Sweep(SweepArgs),
    /// Runs the acceptance checks.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Args)]
struct OutputArgs {
    /// Output directory (created if missing; default: current directory).
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Also write standalone SVG plots.
    #[arg(long)]
    svg: bool,
}

#[derive(Debug, Clone, Args)]
struct VelocityArgs {
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Debug, Clone, Args)]
struct ProfileArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Sampling rectangle X0:X1:NX,Y0:Y1:NY in the units of the parameters
    /// (default -4:2:121,0:3:61).
    #[arg(long, value_name = "RECT", allow_hyphen_values = true)]
    grid: Option<String>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
struct SimulateArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Grid spacing h (default: the finest of 0.05 sqrt(D/k) and 0.2 D/|v|).
    #[arg(long, value_name = "H")]
    grid: Option<String>,
    /// Simulated time (default 1).
    #[arg(long = "t-end", value_name = "T")]
    t_end: Option<f64>,
    /// Initial condition.
    #[arg(long, value_enum)]
    init: Option<InitKind>,
    /// Mirror the initial condition in x, so the front faces -x.
    #[arg(long)]
    mirrored: bool,
    /// Accept a grid coarser than the resolution guard.
    #[arg(long)]
    allow_coarse: bool,
    /// Also write the field every T time units.
    #[arg(long, value_name = "T")]
    snapshot_every: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
struct SweepArgs {
    /// Alpha range LO:HI:N inside (0, 1/2) (default 0.005:0.495:99).
    #[arg(long, value_name = "RANGE")]
    grid: Option<String>,
    /// TOML or JSON file; only grid, out, tol and svg are read.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Relative tolerance of the adaptive quadrature (default 1e-10).
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Clone, Args)]
struct SelftestArgs {
    /// Comma-separated criterion ids to run (default: all).
    #[arg(long, value_delimiter = ',', value_name = "IDS")]
    only: Vec<u8>,
}

/// Why a command failed, and the exit code it maps to.
#[derive(Debug)]
pub enum Failure {
    Config(String),
    Numerical(String),
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io(_) => 1,
            Failure::Config(_) => 2,
            Failure::Numerical(_) => 3,
        }
    }
}

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Failure::Config(m) => write!(f, "invalid configuration: {m}"),
            Failure::Numerical(m) => write!(f, "numerical failure: {m}"),
            Failure::Io(m) => write!(f, "I/O error: {m}"),
        }
    }
}

impl From<linefront::Error> for Failure {
    fn from(e: linefront::Error) -> Self {
        use linefront::Error as E;
        match e {
            E::Domain { .. } | E::InvalidParams(_) | E::NoSolution { .. } | E::ZeroDegradation | E::CflViolation { .. } => {
                Failure::Config(e.to_string())
            }
            _ => Failure::Numerical(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Velocity(a) => commands::velocity(&a.params),
        Command::Profile(a) => commands::profile(&a),
        Command::Simulate(a) => commands::simulate(&a),
        Command::Sweep(a) => commands::sweep(&a),
        Command::Selftest(a) => commands::selftest(&a.only),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("linefront: {f}");
            ExitCode::from(f.code())
        }
    }
}
