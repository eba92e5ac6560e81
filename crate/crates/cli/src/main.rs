//! `jsobolev`: experiments with Jacobi-Sobolev orthonormal expansions.
//!
//! Every subcommand reads the shared flag set (merged with an optional JSON
//! config file; flags win) and emits a deterministic CSV or JSON table.
//! Exit codes: 0 success, 2 invalid parameters or usage, 1 numerical or
//! I/O failure.

mod commands;
mod config;
mod output;

use clap::{Parser, Subcommand};
use config::{CommonArgs, Settings};

#[derive(Debug)]
pub enum CliError {
    Lib(jsobolev::Error),
    Io(std::io::Error),
}

impl From<jsobolev::Error> for CliError {
    fn from(e: jsobolev::Error) -> Self {
        CliError::Lib(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(jsobolev::Error::InvalidParameter(_)) => 2,
            _ => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Lib(e) => e.to_string(),
            CliError::Io(e) => format!("i/o error: {e}"),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "jsobolev",
    version,
    about = "Jacobi-Sobolev orthonormal expansions: evaluation, partial sums, norm sweeps, kernel and Hardy checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    args: CommonArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a test function or basis element at given points (CSV: x,k,value)
    Eval,
    /// Expansion coefficients c_0..c_n of --f (CSV: j,coeff)
    Coeffs,
    /// Truncation errors of the partial sums of --f (CSV: n,error)
    PartialSum,
    /// Sobolev norm of --f over one or more exponents (CSV: p,value)
    Norms,
    /// Dual-norm products of basis elements over a p-grid and degree ladder
    /// (CSV: p,n,value,slope_window_flag)
    SweepP,
    /// Scaled coefficient-ratio asymptotics (CSV: j,value)
    Asym,
    /// Region-wise kernel/envelope suprema on a grid (JSON report)
    KernelCheck,
    /// Hardy-condition supremum for the endpoint weight pair (CSV row)
    HardyCheck,
    /// Print the critical exponent window for (alpha, beta, m)
    Window,
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let settings = Settings::merge(&cli.args)?;
    match cli.command {
        Command::Eval => commands::eval(&settings),
        Command::Coeffs => commands::coeffs(&settings),
        Command::PartialSum => commands::partial_sum(&settings),
        Command::Norms => commands::norms(&settings),
        Command::SweepP => commands::sweep_p(&settings),
        Command::Asym => commands::asym(&settings),
        Command::KernelCheck => commands::kernel_check(&settings),
        Command::HardyCheck => commands::hardy_check(&settings),
        Command::Window => commands::window(&settings),
    }
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(&cli) {
        eprintln!("error: {}", e.message());
        std::process::exit(e.exit_code());
    }
}
