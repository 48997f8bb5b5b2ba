//! `cayleynet`: build, analyze and compare Cayley-graph networks.

mod analyze;
mod build;
mod check;
mod compare;
mod container;
mod moore;
mod output;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::output::Failure;

#[derive(Parser)]
#[command(
    name = "cayleynet",
    version,
    about = "Cayley-graph interconnection network toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph and write it as JSON or DOT.
    Build(build::BuildArgs),
    /// Run analyses on a graph file and print a JSON report.
    Analyze(analyze::AnalyzeArgs),
    /// Construct and verify a parallel-path container in Qn or FQn.
    Container(container::ContainerArgs),
    /// Compare two graph files.
    Compare(compare::CompareArgs),
    /// Moore bound for a degree/diameter pair.
    Moore(moore::MooreArgs),
    /// Run the bundled randomized property checks.
    Check(check::CheckArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = output::guards().and_then(|guards| match cli.command {
        Command::Build(args) => build::run(args, &guards),
        Command::Analyze(args) => analyze::run(args, &guards),
        Command::Container(args) => container::run(args),
        Command::Compare(args) => compare::run(args, &guards),
        Command::Moore(args) => moore::run(args),
        Command::Check(args) => check::run(args, &guards),
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}
