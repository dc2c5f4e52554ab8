//! `querylab measures`: the full bound report for one function.

use crate::output::{Context, Summary};
use crate::spec::FunctionSpec;
use crate::Format;
use querylab_core::measures::SuiteRow;
use querylab_core::report::measure_report;

#[derive(clap::Args, Debug)]
pub struct Args {
    #[command(flatten)]
    function: FunctionSpec,

    /// Attach the representing polynomial and its symmetrization.
    #[arg(long)]
    show_poly: bool,
}

pub fn run(args: &Args, ctx: &Context) -> Result<Summary, String> {
    let loaded = args.function.load()?;
    let mut report = measure_report(
        &loaded.table,
        &loaded.label,
        loaded.family,
        args.show_poly,
    )
    .map_err(|e| {
        format!("cannot compute measures for '{}': {e}", loaded.label)
    })?;
    report.timestamp = ctx.timestamp;

    let body = match ctx.format {
        Format::Json => serde_json::to_string_pretty(&report).unwrap(),
        Format::Md => report.to_markdown(),
        Format::Csv => {
            let b = &report.bounds;
            let row = SuiteRow {
                index: 0,
                name: Some(report.label.clone()),
                n: b.n,
                deg: b.deg,
                adeg: b.adeg,
                bs: b.bs,
                c: b.c,
                c0: b.c0,
                c1: b.c1,
                d: b.d,
                monotone: b.monotone,
                checks: b.checks,
            };
            format!("{}\n{}", SuiteRow::csv_header(), row.csv_row())
        }
    };
    ctx.emit(&body).map_err(|e| e.to_string())?;

    let pass = report.bounds.checks.all_pass();
    if pass {
        Ok(Summary::pass("measures"))
    } else {
        Ok(Summary::failing("measures", "inequality check violated"))
    }
}
