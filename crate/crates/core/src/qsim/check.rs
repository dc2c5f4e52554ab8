//! Exact, zero-error and bounded-error semantic checkers.
//!
//! Each checker sweeps every input exhaustively, simulating the network
//! per input; inputs are independent, so the sweep runs on parallel
//! workers and merges per-input results deterministically (ties broken by
//! the smaller input index).

use super::{simulate_index, Circuit};
use crate::boolfn::{bits_of_index, format_bits, TruthTable};
use crate::error::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Numeric tolerance used by every checker in this module.
pub const TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    Exact,
    #[serde(rename = "zero")]
    ZeroError,
    Bounded,
}

/// Wire format of a checker verdict:
/// `{"semantics": ..., "pass": bool, "worst_x": bitstring, "value": float}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub semantics: Semantics,
    pub pass: bool,
    pub worst_x: String,
    pub value: f64,
}

#[derive(Clone, Debug)]
pub struct ExactCheck {
    pub pass: bool,
    /// Input with the largest deviation from certainty.
    pub worst_x: usize,
    /// `max_x (1 - P(output = f(x)))`.
    pub worst_deviation: f64,
}

impl ExactCheck {
    pub fn report(&self, n: usize) -> CheckReport {
        CheckReport {
            semantics: Semantics::Exact,
            pass: self.pass,
            worst_x: format_bits(&bits_of_index(self.worst_x, n)),
            value: self.worst_deviation,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ZeroErrorCheck {
    pub pass: bool,
    /// Largest probability of a conclusive wrong answer (must be ~0).
    pub max_wrong: f64,
    /// Largest probability of "inconclusive" (must stay below 1/2).
    pub max_inconclusive: f64,
    pub worst_x: usize,
}

impl ZeroErrorCheck {
    pub fn report(&self, n: usize) -> CheckReport {
        CheckReport {
            semantics: Semantics::ZeroError,
            pass: self.pass,
            worst_x: format_bits(&bits_of_index(self.worst_x, n)),
            value: self.max_inconclusive,
        }
    }
}

#[derive(Clone, Debug)]
pub struct BoundedErrorCheck {
    pub pass: bool,
    /// `min_x P(output = f(x))`.
    pub min_success: f64,
    pub worst_x: usize,
    pub threshold: f64,
}

impl BoundedErrorCheck {
    pub fn report(&self, n: usize) -> CheckReport {
        CheckReport {
            semantics: Semantics::Bounded,
            pass: self.pass,
            worst_x: format_bits(&bits_of_index(self.worst_x, n)),
            value: self.min_success,
        }
    }
}

fn check_dims(circuit: &Circuit, f: &TruthTable) -> Result<()> {
    if circuit.n() != f.n() {
        return Err(Error::Validation(format!(
            "circuit has {} oracle variables, function has {}",
            circuit.n(),
            f.n()
        )));
    }
    Ok(())
}

/// True iff for every input the output bit equals `f(x)` with certainty
/// (within tolerance). Also reports the worst deviation.
pub fn check_exact(circuit: &Circuit, f: &TruthTable) -> Result<ExactCheck> {
    check_dims(circuit, f)?;
    let out = circuit.output_qubit();
    let (worst_x, worst_deviation) = (0..f.size())
        .into_par_iter()
        .map(|x| {
            let state = simulate_index(circuit, x);
            let p1 = state.probability_bit(out);
            let p_correct = if f.get(x) { p1 } else { 1.0 - p1 };
            (x, 1.0 - p_correct)
        })
        .reduce(
            || (usize::MAX, f64::NEG_INFINITY),
            |a, b| {
                if b.1 > a.1 || (b.1 == a.1 && b.0 < a.0) {
                    b
                } else {
                    a
                }
            },
        );
    Ok(ExactCheck {
        pass: worst_deviation <= TOL,
        worst_x,
        worst_deviation,
    })
}

/// Zero-error semantics: the two rightmost qubits are the output pair
/// `(flag, value)`. A set flag claims a conclusive answer, which must then
/// equal `f(x)`; the inconclusive probability must stay below 1/2.
pub fn check_zero_error(circuit: &Circuit, f: &TruthTable) -> Result<ZeroErrorCheck> {
    check_dims(circuit, f)?;
    let flag_bit = 1usize << circuit.flag_qubit()?;
    let out_bit = 1usize << circuit.output_qubit();
    let per_x: Vec<(usize, f64, f64)> = (0..f.size())
        .into_par_iter()
        .map(|x| {
            let state = simulate_index(circuit, x);
            let fx = f.get(x);
            let wrong = state.probability_where(|k| {
                k & flag_bit != 0 && ((k & out_bit != 0) != fx)
            });
            let inconclusive = state.probability_where(|k| k & flag_bit == 0);
            (x, wrong, inconclusive)
        })
        .collect();
    let mut max_wrong = 0.0f64;
    let mut max_inconclusive = 0.0f64;
    let mut worst_x = 0usize;
    for (x, wrong, inconclusive) in per_x {
        if wrong > max_wrong {
            max_wrong = wrong;
            worst_x = x;
        }
        if inconclusive > max_inconclusive {
            max_inconclusive = inconclusive;
            if max_wrong <= TOL {
                worst_x = x;
            }
        }
    }
    Ok(ZeroErrorCheck {
        pass: max_wrong <= TOL && max_inconclusive < 0.5 + TOL,
        max_wrong,
        max_inconclusive,
        worst_x,
    })
}

/// Bounded-error semantics: the output bit equals `f(x)` with probability
/// at least `threshold` (default 2/3) for every input.
pub fn check_bounded_error(
    circuit: &Circuit,
    f: &TruthTable,
    threshold: f64,
) -> Result<BoundedErrorCheck> {
    check_dims(circuit, f)?;
    let out = circuit.output_qubit();
    let (worst_x, min_success) = (0..f.size())
        .into_par_iter()
        .map(|x| {
            let state = simulate_index(circuit, x);
            let p1 = state.probability_bit(out);
            let p_correct = if f.get(x) { p1 } else { 1.0 - p1 };
            (x, p_correct)
        })
        .reduce(
            || (usize::MAX, f64::INFINITY),
            |a, b| {
                if b.1 < a.1 || (b.1 == a.1 && b.0 < a.0) {
                    b
                } else {
                    a
                }
            },
        );
    Ok(BoundedErrorCheck {
        pass: min_success >= threshold - TOL,
        min_success,
        worst_x,
        threshold,
    })
}
