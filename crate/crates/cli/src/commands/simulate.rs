//! `querylab simulate`: run a semantic checker on a circuit file, with an
//! optional symbolic pass reporting amplitude degrees and the acceptance
//! polynomial against its 2T bound.

use crate::output::{Context, Summary};
use crate::spec::FunctionSpec;
use crate::Format;
use clap::ValueEnum;
use querylab_core::qsim::{
    acceptance_polynomial, check_bounded_error, check_exact, check_zero_error, symbolic_run,
    CheckReport, Circuit,
};
use serde_json::json;
use std::path::PathBuf;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SemanticsArg {
    Exact,
    Zero,
    Bounded,
}

#[derive(clap::Args, Debug)]
pub struct Args {
    /// Circuit JSON file.
    #[arg(long)]
    circuit: PathBuf,

    #[command(flatten)]
    function: FunctionSpec,

    /// Which output semantics to check.
    #[arg(long, value_enum)]
    semantics: SemanticsArg,

    /// Success threshold for the bounded-error checker.
    #[arg(long, default_value_t = 2.0 / 3.0)]
    threshold: f64,

    /// Also run the symbolic pass: amplitude degrees and the acceptance
    /// polynomial with its degree bound verdict.
    #[arg(long)]
    symbolic: bool,
}

pub fn run(args: &Args, ctx: &Context) -> Result<Summary, String> {
    let text = std::fs::read_to_string(&args.circuit)
        .map_err(|e| format!("cannot read {}: {e}", args.circuit.display()))?;
    let circuit: Circuit = serde_json::from_str(&text)
        .map_err(|e| format!("cannot parse {}: {e}", args.circuit.display()))?;
    let loaded = args.function.load()?;

    let report: CheckReport = match args.semantics {
        SemanticsArg::Exact => check_exact(&circuit, &loaded.table)
            .map_err(|e| e.to_string())?
            .report(circuit.n()),
        SemanticsArg::Zero => check_zero_error(&circuit, &loaded.table)
            .map_err(|e| e.to_string())?
            .report(circuit.n()),
        SemanticsArg::Bounded => check_bounded_error(&circuit, &loaded.table, args.threshold)
            .map_err(|e| e.to_string())?
            .report(circuit.n()),
    };

    let symbolic = if args.symbolic {
        let state = symbolic_run(&circuit).map_err(|e| e.to_string())?;
        let out = circuit.output_qubit();
        let accept =
            acceptance_polynomial(&circuit, |k| k >> out & 1 == 1).map_err(|e| e.to_string())?;
        let t = circuit.query_count();
        let terms: Vec<serde_json::Value> = accept
            .terms()
            .map(|(mask, c)| {
                let (a, b, _, _, e) = c.parts();
                json!({
                    "mask": mask,
                    "int": a.to_string(),
                    "sqrt2": b.to_string(),
                    "scale_exp": e,
                    "approx": c.to_complex().re,
                })
            })
            .collect();
        Some(json!({
            "max_amplitude_degree": state.max_degree(),
            "amplitude_degree_bound": t,
            "amplitude_degree_ok": state.max_degree() <= t,
            "acceptance_degree": accept.degree(),
            "acceptance_degree_bound": 2 * t,
            "acceptance_degree_ok": accept.degree() <= 2 * t,
            "acceptance_terms": terms,
        }))
    } else {
        None
    };

    let symbolic_ok = symbolic.as_ref().is_none_or(|s| {
        s["amplitude_degree_ok"].as_bool() == Some(true)
            && s["acceptance_degree_ok"].as_bool() == Some(true)
    });
    let pass = report.pass && symbolic_ok;

    let body = match ctx.format {
        Format::Json | Format::Csv => {
            let payload = json!({
                "circuit": args.circuit.display().to_string(),
                "function": loaded.label,
                "queries": circuit.query_count(),
                "check": report,
                "symbolic": symbolic,
                "timestamp": ctx.timestamp,
            });
            serde_json::to_string_pretty(&payload).unwrap()
        }
        Format::Md => {
            let mut out = format!(
                "## {} vs {}\n\n- semantics: {:?}\n- pass: {}\n- worst input: {}\n- value: {:.6}\n- queries: {}\n",
                args.circuit.display(),
                loaded.label,
                report.semantics,
                report.pass,
                report.worst_x,
                report.value,
                circuit.query_count(),
            );
            if let Some(s) = &symbolic {
                out.push_str(&format!(
                    "- amplitude degree: {} (bound {}, {})\n- acceptance degree: {} (bound {}, {})\n",
                    s["max_amplitude_degree"],
                    s["amplitude_degree_bound"],
                    if s["amplitude_degree_ok"].as_bool() == Some(true) { "ok" } else { "VIOLATION" },
                    s["acceptance_degree"],
                    s["acceptance_degree_bound"],
                    if s["acceptance_degree_ok"].as_bool() == Some(true) { "ok" } else { "VIOLATION" },
                ));
            }
            out
        }
    };
    ctx.emit(&body).map_err(|e| e.to_string())?;

    if pass {
        Ok(Summary::pass("simulate"))
    } else {
        Ok(Summary::failing("simulate", "check failed"))
    }
}
