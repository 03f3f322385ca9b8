mod align;
mod bench;
mod compare;
mod exit;
mod gen;
mod input;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

/// Dynamic time warping aligners and benchmark harness.
#[derive(Debug, Parser)]
#[command(name = "sparsedtw", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Align two series with one algorithm and print the result as JSON.
    Align(align::AlignArgs),
    /// Run every algorithm on two series and tabulate the results.
    Compare(compare::CompareArgs),
    /// Write a synthetic pair of correlated series.
    Gen(gen::GenArgs),
    /// Sweep algorithms over synthetic or supplied pairs and write CSV.
    Bench(bench::BenchArgs),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(exit::USAGE),
            };
        }
    };
    let outcome = match cli.command {
        Command::Align(args) => align::run(args),
        Command::Compare(args) => compare::run(args),
        Command::Gen(args) => gen::run(args),
        Command::Bench(args) => bench::run(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit::code_for(&err))
        }
    }
}
