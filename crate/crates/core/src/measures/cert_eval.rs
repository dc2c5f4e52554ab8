//! Deterministic query algorithm that evaluates `f(x)` by repeatedly
//! committing to a consistent 1-certificate and querying its unknown
//! variables. It makes at most `C1(f) * bs(f)` queries: each stage picks a
//! minimum-size certificate consistent with everything queried so far
//! (size at most `C1(f)`), and after `bs(f)` failed stages every input
//! consistent with the transcript has the same value.

use super::{block_sensitivity, Certificate, MAX_CERT_VARS};
use crate::boolfn::{index_of_bits, TruthTable};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// One stage of the run: the certificate committed to, the fresh queries
/// it triggered, and whether the observed values matched it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StageRecord {
    pub certificate: Certificate,
    /// Newly queried variables with the observed values, in query order.
    pub queried: Vec<(usize, bool)>,
    pub matched: bool,
}

/// How the run terminated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertEvalOutcome {
    /// No 1-certificate is consistent with the transcript; the value is 0.
    NoConsistentCertificate,
    /// The queried values agreed with the committed certificate; value 1.
    CertificateMatched,
    /// Stage budget exhausted; the value of the numerically smallest
    /// consistent input (which all consistent inputs share).
    ConsistentCompletion { input: u32 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertEvalRun {
    pub output: bool,
    pub queries: usize,
    pub stages: Vec<StageRecord>,
    pub outcome: CertEvalOutcome,
}

/// Masks of popcount `size` in lexicographic order of their ascending
/// index lists ({0,3} before {1,2}).
fn masks_in_set_lex_order(n: usize, size: usize) -> Vec<u32> {
    let mut masks: Vec<u32> = (0..1u32 << n)
        .filter(|m| m.count_ones() as usize == size)
        .collect();
    masks.sort_by_key(|&m| {
        let mut key = Vec::with_capacity(size);
        for i in 0..n {
            if m & (1 << i) != 0 {
                key.push(i);
            }
        }
        key
    });
    masks
}

/// Lexicographically smallest minimum-size 1-certificate consistent with
/// the known values: ordered by size, then by variable-index set, then by
/// assignment (earlier variables more significant, 0 before 1).
fn first_consistent_one_certificate(
    f: &TruthTable,
    known_vars: u32,
    known_values: u32,
) -> Option<Certificate> {
    let n = f.n();
    for size in 0..=n {
        for vars in masks_in_set_lex_order(n, size) {
            let ordered: Vec<usize> = (0..n).filter(|i| vars & (1 << i) != 0).collect();
            'assignment: for code in 0..1u32 << size {
                let mut values = 0u32;
                for (t, &var) in ordered.iter().enumerate() {
                    if code & (1 << (size - 1 - t)) != 0 {
                        values |= 1 << var;
                    }
                }
                // Must agree with the transcript where supports overlap.
                let overlap = vars & known_vars;
                if values & overlap != known_values & overlap {
                    continue 'assignment;
                }
                let cert = Certificate { vars, values };
                if cert.forces(f) == Some(true) {
                    return Some(cert);
                }
            }
        }
    }
    None
}

/// Evaluate `f` at the bitstring `x` through the certificate-query
/// procedure, returning the value, the query count and the full
/// transcript. The query count never exceeds `C1(f) * bs(f)`.
pub fn evaluate_by_certificates(f: &TruthTable, x: &[bool]) -> Result<CertEvalRun> {
    let n = f.n();
    if n > MAX_CERT_VARS {
        return Err(Error::Capability(format!(
            "certificate evaluation supports at most {MAX_CERT_VARS} variables, got {n}"
        )));
    }
    if x.len() != n {
        return Err(Error::Parameter(format!(
            "input has {} bits, function has {n} variables",
            x.len()
        )));
    }
    let x_index = index_of_bits(x) as u32;
    let bs = block_sensitivity(f)?.value;

    let mut known_vars = 0u32;
    let mut known_values = 0u32;
    let mut queries = 0usize;
    let mut stages = Vec::new();

    // Constant functions have bs = 0 yet still resolve in one stage: either
    // the empty certificate is accepted or no certificate exists at all.
    for _stage in 0..bs.max(1) {
        let Some(cert) = first_consistent_one_certificate(f, known_vars, known_values) else {
            return Ok(CertEvalRun {
                output: false,
                queries,
                stages,
                outcome: CertEvalOutcome::NoConsistentCertificate,
            });
        };
        let mut queried = Vec::new();
        for i in 0..n {
            let bit = 1u32 << i;
            if cert.vars & bit != 0 && known_vars & bit == 0 {
                let observed = x_index & bit != 0;
                known_vars |= bit;
                known_values |= x_index & bit;
                queries += 1;
                queried.push((i, observed));
            }
        }
        let matched = x_index & cert.vars == cert.values;
        stages.push(StageRecord {
            certificate: cert,
            queried,
            matched,
        });
        if matched {
            return Ok(CertEvalRun {
                output: true,
                queries,
                stages,
                outcome: CertEvalOutcome::CertificateMatched,
            });
        }
    }

    // Stage budget exhausted: every consistent completion shares one value;
    // pick the numerically smallest (unknown variables at 0).
    let completion = known_values;
    Ok(CertEvalRun {
        output: f.get(completion as usize),
        queries,
        stages,
        outcome: CertEvalOutcome::ConsistentCompletion { input: completion },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::{bits_of_index, parse_bits, Family};
    use crate::measures::certificate_complexity;

    fn table(family: Family, n: usize) -> TruthTable {
        TruthTable::from_family(family, n, None).unwrap()
    }

    #[test]
    fn or4_all_zeros_queries_everything() {
        let or4 = table(Family::Or, 4);
        let run = evaluate_by_certificates(&or4, &parse_bits("0000").unwrap()).unwrap();
        assert!(!run.output);
        assert_eq!(run.queries, 4);
        assert_eq!(run.stages.len(), 4);
        for stage in &run.stages {
            assert_eq!(stage.queried.len(), 1);
            assert!(!stage.matched);
        }
    }

    #[test]
    fn or4_first_bit_set_matches_first_stage() {
        let or4 = table(Family::Or, 4);
        let run = evaluate_by_certificates(&or4, &parse_bits("1000").unwrap()).unwrap();
        assert!(run.output);
        assert_eq!(run.queries, 1);
        let stage = &run.stages[0];
        assert_eq!(stage.certificate.vars, 0b0001);
        assert_eq!(stage.certificate.values, 0b0001);
        assert!(stage.matched);
    }

    #[test]
    fn constant_one_accepts_empty_certificate() {
        let one = TruthTable::new_constant(3, true).unwrap();
        let run = evaluate_by_certificates(&one, &parse_bits("010").unwrap()).unwrap();
        assert!(run.output);
        assert_eq!(run.queries, 0);
        assert_eq!(run.outcome, CertEvalOutcome::CertificateMatched);
        assert_eq!(run.stages[0].certificate.size(), 0);
    }

    #[test]
    fn constant_zero_stops_immediately() {
        let zero = TruthTable::new_constant(3, false).unwrap();
        let run = evaluate_by_certificates(&zero, &parse_bits("101").unwrap()).unwrap();
        assert!(!run.output);
        assert_eq!(run.queries, 0);
        assert_eq!(run.outcome, CertEvalOutcome::NoConsistentCertificate);
    }

    #[test]
    fn exhaustive_small_n_correct_and_within_budget() {
        for n in 1..=3usize {
            for code in 0u64..(1 << (1usize << n)) {
                let f = TruthTable::from_fn(n, |i| (code >> i) & 1 == 1).unwrap();
                let budget = certificate_complexity(&f).unwrap().c1
                    * crate::measures::block_sensitivity(&f).unwrap().value;
                for idx in 0..1usize << n {
                    let x = bits_of_index(idx, n);
                    let run = evaluate_by_certificates(&f, &x).unwrap();
                    assert_eq!(run.output, f.get(idx), "n={n} code={code:#x} idx={idx}");
                    assert!(
                        run.queries <= budget,
                        "n={n} code={code:#x} idx={idx}: {} > {budget}",
                        run.queries
                    );
                }
            }
        }
    }
}
