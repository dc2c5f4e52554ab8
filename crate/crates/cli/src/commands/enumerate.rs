//! `querylab enumerate`: sweep a function space, emit one CSV row per
//! function, and count violations of the inequality chain. A nonzero
//! violation count fails the exit code.

use crate::output::{Context, Summary};
use crate::Format;
use clap::ValueEnum;
use querylab_core::measures::{run_suite, FunctionSource, SuiteConfig};
use serde_json::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Source {
    Exhaustive,
    Families,
    Sampled,
}

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Variable count.
    #[arg(long, short = 'n')]
    n: usize,

    /// Function source.
    #[arg(long, value_enum, default_value_t = Source::Exhaustive)]
    source: Source,

    /// Sample count for the sampled source.
    #[arg(long, default_value_t = 1000)]
    samples: usize,

    /// Skip the approximate degree (needed beyond the LP caps).
    #[arg(long)]
    no_adeg: bool,
}

pub fn run(args: &Args, ctx: &Context) -> Result<Summary, String> {
    let source = match args.source {
        Source::Exhaustive => FunctionSource::Exhaustive,
        Source::Families => FunctionSource::NamedFamilies,
        Source::Sampled => FunctionSource::Sampled {
            count: args.samples,
            seed: ctx.seed,
        },
    };
    let include_adeg = !args.no_adeg;
    if include_adeg && args.n > 4 && args.source == Source::Sampled {
        return Err(format!(
            "sampled functions on n = {} have no approximate-degree route; pass --no-adeg",
            args.n
        ));
    }
    let config = SuiteConfig {
        n: args.n,
        source,
        include_adeg,
    };
    let (rows, summary) = run_suite(&config).map_err(|e| e.to_string())?;

    let body = match ctx.format {
        Format::Json => {
            let payload = json!({
                "config": config,
                "seed": ctx.seed,
                "timestamp": ctx.timestamp,
                "rows": rows,
                "summary": summary,
            });
            serde_json::to_string_pretty(&payload).unwrap()
        }
        // The row dump is inherently tabular; markdown requests get the
        // same CSV body with a summary footer comment.
        Format::Csv | Format::Md => {
            let mut out = String::new();
            out.push_str(&querylab_core::measures::SuiteRow::csv_header());
            out.push('\n');
            for row in &rows {
                out.push_str(&row.csv_row());
                out.push('\n');
            }
            out.push_str(&format!(
                "# functions={} total_violations={}",
                summary.functions, summary.total_violations
            ));
            if let Some(ts) = ctx.timestamp {
                out.push_str(&format!(" timestamp={ts}"));
            }
            if matches!(config.source, FunctionSource::Sampled { .. }) {
                out.push_str(&format!(" seed={}", ctx.seed));
            }
            out.push('\n');
            out
        }
    };
    ctx.emit(&body).map_err(|e| e.to_string())?;

    Ok(Summary::with_counts(
        "enumerate",
        summary.functions,
        summary.total_violations,
    ))
}
