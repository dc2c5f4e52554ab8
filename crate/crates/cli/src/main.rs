//! `querylab`: compute complexity measures of Boolean functions, enumerate
//! function spaces against the inequality chain, reproduce the query
//! complexity table of the named families, and run the circuit checkers.
//!
//! Every command is deterministic given its flags and seed. A single JSON
//! summary line is always written to stderr; the exit code is 0 exactly
//! when all requested checks pass (2 for usage or input errors).

mod commands;
mod output;
mod spec;

use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Md,
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(name = "querylab", version, about)]
pub struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Md)]
    format: Format,

    /// Worker threads for enumeration and checker sweeps (default: cores).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Seed for sampled sources and randomized drivers.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Omit the timestamp field, making reruns byte-identical.
    #[arg(long, global = true)]
    no_timestamp: bool,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Measures and bound report for one function.
    Measures(commands::measures::Args),
    /// Sweep a function space and count inequality violations.
    Enumerate(commands::enumerate::Args),
    /// Lower/upper bound table for the named families at one size.
    Table1(commands::table1::Args),
    /// Run a semantic checker on a circuit file.
    Simulate(commands::simulate::Args),
    /// Construct a named circuit and dump it as JSON.
    CircuitDump(commands::dump::Args),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        // Ignore the error if a pool already exists (tests call main twice).
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers.max(1))
            .build_global();
    }
    let ctx = output::Context {
        format: cli.format,
        out: cli.out.clone(),
        seed: cli.seed,
        timestamp: if cli.no_timestamp {
            None
        } else {
            Some(output::unix_now())
        },
    };
    let outcome = match &cli.command {
        Command::Measures(args) => commands::measures::run(args, &ctx),
        Command::Enumerate(args) => commands::enumerate::run(args, &ctx),
        Command::Table1(args) => commands::table1::run(args, &ctx),
        Command::Simulate(args) => commands::simulate::run(args, &ctx),
        Command::CircuitDump(args) => commands::dump::run(args, &ctx),
    };
    match outcome {
        Ok(summary) => {
            eprintln!("{}", serde_json::to_string(&summary).unwrap());
            if summary.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(err) => {
            let summary = output::Summary::error(&err.to_string());
            eprintln!("{}", serde_json::to_string(&summary).unwrap());
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}
