//! `protoldpc`: protograph LDPC toolkit for the binary erasure channel.
//!
//! Exit codes: 0 success, 1 domain failure (a well-formed request the
//! toolkit cannot satisfy, or a failed verification), 2 input or parse
//! error (argument-syntax errors from the parser share this code).

mod commands;
mod error;
mod formats;
mod manifest;
mod parallel;

use clap::{Parser, Subcommand};

use commands::construct::ConstructArgs;
use commands::girth::GirthArgs;
use commands::optimize::OptimizeArgs;
use commands::simulate::SimulateArgs;
use commands::threshold::ThresholdArgs;
use commands::verify_decay::VerifyDecayArgs;
use error::CliError;

#[derive(Parser, Debug)]
#[command(
    name = "protoldpc",
    version,
    about = "Protograph LDPC analysis over the binary erasure channel",
    long_about = "Density-evolution thresholds, differential-evolution base-matrix search, \
                  large-girth Tanner graph construction by node splitting, and Monte Carlo \
                  peeling simulation. Every run writes a manifest that makes it replayable \
                  bit for bit."
)]
struct Cli {
    /// Worker threads for fitness evaluation and simulation; affects
    /// wall time only, never outputs. 0 means all cores.
    #[arg(long, global = true, default_value_t = 0)]
    parallelism: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Density-evolution threshold of a base matrix.
    Threshold(ThresholdArgs),
    /// Differential-evolution search for high-threshold base matrices.
    Optimize(OptimizeArgs),
    /// Build and verify a Tanner graph from a base matrix by node splitting.
    Construct(ConstructArgs),
    /// Exact girth of an edge-list or alist graph.
    Girth(GirthArgs),
    /// Monte Carlo peeling-decoder error rates over the BEC.
    Simulate(SimulateArgs),
    /// Check the squared-decay bound on the DE trace below threshold.
    VerifyDecay(VerifyDecayArgs),
}

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    if cli.parallelism > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.parallelism)
            .build_global()
            .map_err(|e| CliError::Input(format!("cannot set parallelism: {e}")))?;
    }
    match &cli.command {
        Command::Threshold(args) => commands::threshold::run(args),
        Command::Optimize(args) => commands::optimize::run(args),
        Command::Construct(args) => commands::construct::run(args),
        Command::Girth(args) => commands::girth::run(args),
        Command::Simulate(args) => commands::simulate::run(args),
        Command::VerifyDecay(args) => commands::verify_decay::run(args),
    }
}
