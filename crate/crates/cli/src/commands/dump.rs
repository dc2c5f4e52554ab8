//! `querylab circuit-dump`: construct a named circuit and emit its JSON,
//! plus the counting decoder table as CSV on request.

use crate::output::{Context, Summary};
use clap::ValueEnum;
use querylab_core::algorithms::{
    counting_circuit, grover_or, or_zero_error_circuit, parity_circuit, xor_circuit,
};
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Xor,
    Parity,
    Grover,
    Counting,
    OrZeroError,
}

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Which construction to dump.
    #[arg(long, value_enum)]
    kind: Kind,

    /// Variable count.
    #[arg(long, short = 'n')]
    n: usize,

    /// First XOR index.
    #[arg(long, default_value_t = 0)]
    i: usize,

    /// Second XOR index.
    #[arg(long, default_value_t = 1)]
    j: usize,

    /// Grover round to dump (0-based within the shipped schedule).
    #[arg(long, default_value_t = 0)]
    round: usize,

    /// Counting precision qubits (defaults to the minimum for n).
    #[arg(long)]
    precision: Option<usize>,

    /// Also write the counting decoder table (measured value -> estimate)
    /// as CSV to this path.
    #[arg(long)]
    decoder_csv: Option<PathBuf>,
}

pub fn run(args: &Args, ctx: &Context) -> Result<Summary, String> {
    let circuit = match args.kind {
        Kind::Xor => xor_circuit(args.n, args.i, args.j).map_err(|e| e.to_string())?,
        Kind::Parity => parity_circuit(args.n).map_err(|e| e.to_string())?,
        Kind::OrZeroError => or_zero_error_circuit(args.n).map_err(|e| e.to_string())?,
        Kind::Grover => {
            let driver = grover_or(args.n, None).map_err(|e| e.to_string())?;
            let rounds = driver.round_circuits();
            if args.round >= rounds.len() {
                return Err(format!(
                    "round {} out of range; the shipped schedule has {} rounds",
                    args.round,
                    rounds.len()
                ));
            }
            rounds[args.round].clone()
        }
        Kind::Counting => {
            let counter =
                counting_circuit(args.n, args.precision).map_err(|e| e.to_string())?;
            if let Some(path) = &args.decoder_csv {
                let mut csv = String::from("measured,estimate\n");
                for (y, t) in counter.decoder_table() {
                    csv.push_str(&format!("{y},{t}\n"));
                }
                std::fs::write(path, csv).map_err(|e| e.to_string())?;
            }
            counter.circuit().clone()
        }
    };
    if args.decoder_csv.is_some() && args.kind != Kind::Counting {
        return Err("--decoder-csv only applies to counting circuits".into());
    }
    let body = serde_json::to_string_pretty(&circuit).unwrap();
    ctx.emit(&body).map_err(|e| e.to_string())?;
    Ok(Summary::pass("circuit-dump"))
}
