mod config;
mod design;
mod error;
mod input;
mod metrics;
mod report;
mod trajectory;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::config::JobConfig;

/// Minimax-robust prefix codes over a total-variation ball.
#[derive(Debug, Parser)]
#[command(name = "tvcode", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Robust weights and code lengths for one ball, as JSON.
    Design(JobConfig),
    /// Weights along alpha from 0 to alpha_max, as CSV.
    Trajectory(JobConfig),
    /// Invariant checks on the input and on seeded random instances.
    Verify(JobConfig),
    /// Entropy, TV and KL between the input and an optional reference.
    Metrics(JobConfig),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Design(cfg) => design::run(cfg),
        Command::Trajectory(cfg) => trajectory::run(cfg),
        Command::Verify(cfg) => verify::run(cfg),
        Command::Metrics(cfg) => metrics::run(cfg),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
