//! `topksum` command-line front end.
//!
//! Exit codes: 0 success, 1 I/O or malformed files, 2 bad arguments, 3 a
//! check or benchmark found a failing solve.

mod bench_cmd;
mod check;
mod project_cmd;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use topksum::Error;

#[derive(Debug, Parser)]
#[command(name = "topksum", version, about = "Projection onto the top-k-sum constraint set")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Project a vector read from a file.
    Project(project_cmd::Args),
    /// Cross-check all engines against the exhaustive oracle on random instances.
    Check(check::Args),
    /// Run a timing experiment grid and write the records.
    Bench(bench_cmd::Args),
}

/// Outcome of a subcommand that ran to completion.
pub enum Status {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Project(a) => project_cmd::run(a),
        Command::Check(a) => check::run(a),
        Command::Bench(a) => bench_cmd::run(a),
    };
    match outcome {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidArgument(_) => 2,
        Error::Invariant(_) => 3,
        _ => 1,
    }
}
