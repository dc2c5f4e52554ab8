//! Enumeration suites over function spaces: compute every measure per
//! function, evaluate the inequality chain, and count violations.
//!
//! Exhaustive runs partition the space into ranges processed by parallel
//! workers; rows merge deterministically by function index. The LP behind
//! the approximate degree dominates the cost, so exhaustive runs dedupe it
//! through a canonical form under variable permutation and input XOR
//! shifts, both of which leave deg/adeg/bs/C/D unchanged.

use super::{
    block_sensitivity, certificate_complexity, decision_tree_depth, InequalityChecks,
};
use crate::boolfn::{Family, TruthTable};
use crate::error::{Error, Result};
use crate::polynomial::{approx_degree, default_eps, interpolate, symmetric_approx_degree};
use crate::rng::SplitMix64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Check names in CSV column order.
pub const CHECK_NAMES: [&str; 11] = [
    "c1_le_c",
    "c_le_bs_squared",
    "d_le_c1_bs",
    "d_le_bs_cubed",
    "deg_le_d",
    "d_le_n",
    "d_le_2_deg4",
    "adeg_le_deg",
    "bs_le_6_adeg_squared",
    "d_le_216_adeg6",
    "monotone_bs_eq_c",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FunctionSource {
    /// Every function on `n` variables (capped at `n <= 4`).
    Exhaustive,
    /// The named families at this `n` (THRESHOLD at every level).
    NamedFamilies,
    /// `count` uniformly random truth tables from the recorded seed.
    Sampled { count: usize, seed: u64 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub n: usize,
    pub source: FunctionSource,
    pub include_adeg: bool,
}

/// One function's measures and verdicts.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteRow {
    /// Truth-table code: bit `X` is `f(X)`.
    pub index: u64,
    /// Family label for named sources.
    pub name: Option<String>,
    pub n: usize,
    pub deg: usize,
    pub adeg: Option<usize>,
    pub bs: usize,
    pub c: usize,
    pub c0: usize,
    pub c1: usize,
    pub d: usize,
    pub monotone: bool,
    pub checks: InequalityChecks,
}

impl SuiteRow {
    pub fn csv_header() -> String {
        let mut cols = vec![
            "index".to_string(),
            "name".to_string(),
            "n".to_string(),
            "deg".to_string(),
            "adeg".to_string(),
            "bs".to_string(),
            "c".to_string(),
            "c0".to_string(),
            "c1".to_string(),
            "d".to_string(),
            "monotone".to_string(),
        ];
        cols.extend(CHECK_NAMES.iter().map(|s| s.to_string()));
        cols.join(",")
    }

    pub fn csv_row(&self) -> String {
        let flag = |v: Option<bool>| match v {
            Some(true) => "1",
            Some(false) => "0",
            None => "-",
        };
        let mut cols = vec![
            self.index.to_string(),
            self.name.clone().unwrap_or_default(),
            self.n.to_string(),
            self.deg.to_string(),
            self.adeg.map_or("-".into(), |a| a.to_string()),
            self.bs.to_string(),
            self.c.to_string(),
            self.c0.to_string(),
            self.c1.to_string(),
            self.d.to_string(),
            if self.monotone { "1" } else { "0" }.to_string(),
        ];
        for (_, v) in self.checks.as_named() {
            cols.push(flag(v).to_string());
        }
        cols.join(",")
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub functions: usize,
    /// Violation count per check name (only evaluated checks count).
    pub violations: Vec<(String, usize)>,
    pub total_violations: usize,
}

fn table_code(f: &TruthTable) -> u64 {
    debug_assert!(f.n() <= 6);
    (0..f.size()).fold(0u64, |acc, i| acc | ((f.get(i) as u64) << i))
}

fn table_from_code(n: usize, code: u64) -> TruthTable {
    TruthTable::from_fn(n, |i| (code >> i) & 1 == 1).expect("n within caps")
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, arr: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(arr.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, arr, out);
            if k.is_multiple_of(2) {
                arr.swap(i, k - 1);
            } else {
                arr.swap(0, k - 1);
            }
        }
    }
    let mut out = Vec::new();
    heap(n, &mut (0..n).collect(), &mut out);
    out
}

/// Canonical representative of `code` under variable permutation combined
/// with XOR shifts of the input. All measures computed here are invariant
/// under both, so one LP solve serves the whole orbit.
fn canonical_code(n: usize, code: u64, perms: &[Vec<usize>]) -> u64 {
    let size = 1usize << n;
    let mut best = u64::MAX;
    for perm in perms {
        for shift in 0..size {
            let mut transformed = 0u64;
            for x in 0..size {
                // g(x) = f(perm(x) ^ shift)
                let mut px = 0usize;
                for (i, &pi) in perm.iter().enumerate() {
                    if x >> i & 1 == 1 {
                        px |= 1 << pi;
                    }
                }
                if code >> (px ^ shift) & 1 == 1 {
                    transformed |= 1 << x;
                }
            }
            best = best.min(transformed);
        }
    }
    best
}

fn measure_one(
    n: usize,
    code: u64,
    name: Option<String>,
    adeg: Option<usize>,
) -> Result<SuiteRow> {
    let f = table_from_code(n, code);
    let deg = interpolate(&f).degree();
    let bs = block_sensitivity(&f)?.value;
    let cert = certificate_complexity(&f)?;
    let d = decision_tree_depth(&f)?;
    let monotone = f.is_monotone();
    let checks = InequalityChecks {
        c1_le_c: cert.c1 <= cert.c,
        c_le_bs_squared: cert.c <= bs * bs,
        d_le_c1_bs: d <= cert.c1 * bs,
        d_le_bs_cubed: d <= bs * bs * bs,
        deg_le_d: deg <= d,
        d_le_n: d <= n,
        d_le_2_deg4: d <= 2 * deg.pow(4),
        adeg_le_deg: adeg.map(|a| a <= deg),
        bs_le_6_adeg_squared: adeg.map(|a| bs <= 6 * a * a),
        d_le_216_adeg6: adeg.map(|a| d <= 216 * a.pow(6)),
        monotone_bs_eq_c: monotone.then_some(bs == cert.c),
    };
    Ok(SuiteRow {
        index: code,
        name,
        n,
        deg,
        adeg,
        bs,
        c: cert.c,
        c0: cert.c0,
        c1: cert.c1,
        d,
        monotone,
        checks,
    })
}

/// Approximate degree of a possibly-large function: the general LP below
/// its cap, the univariate LP for symmetric functions, `None` otherwise.
fn adeg_of(f: &TruthTable) -> Result<Option<usize>> {
    if f.n() <= crate::polynomial::MAX_GENERAL_LP_VARS {
        return Ok(Some(approx_degree(f, &default_eps())?));
    }
    if let Some(profile) = f.symmetric_profile() {
        return Ok(Some(symmetric_approx_degree(&profile, &default_eps())?));
    }
    Ok(None)
}

/// Run a suite; rows come back ordered by function index (exhaustive and
/// sampled sources) or family order (named source).
pub fn run_suite(config: &SuiteConfig) -> Result<(Vec<SuiteRow>, SuiteSummary)> {
    let n = config.n;
    let rows: Vec<SuiteRow> = match &config.source {
        FunctionSource::Exhaustive => {
            if n > 4 {
                return Err(Error::Capability(format!(
                    "exhaustive enumeration supports n <= 4 ({} functions at n = 4), got {n}",
                    1u64 << 16
                )));
            }
            let total: u64 = 1u64 << (1usize << n);
            let adeg_table: Option<HashMap<u64, usize>> = if config.include_adeg {
                let perms = permutations(n);
                // Pass 1: canonical form per function (parallel).
                let canons: Vec<u64> = (0..total)
                    .into_par_iter()
                    .map(|code| canonical_code(n, code, &perms))
                    .collect();
                // Pass 2: one LP run per orbit representative.
                let mut unique: Vec<u64> = canons.clone();
                unique.sort_unstable();
                unique.dedup();
                let solved: Vec<(u64, usize)> = unique
                    .into_par_iter()
                    .map(|code| {
                        let f = table_from_code(n, code);
                        approx_degree(&f, &default_eps()).map(|a| (code, a))
                    })
                    .collect::<Result<_>>()?;
                let by_canon: HashMap<u64, usize> = solved.into_iter().collect();
                Some(
                    canons
                        .into_iter()
                        .enumerate()
                        .map(|(code, canon)| (code as u64, by_canon[&canon]))
                        .collect(),
                )
            } else {
                None
            };
            (0..total)
                .into_par_iter()
                .map(|code| {
                    let adeg = adeg_table.as_ref().map(|t| t[&code]);
                    measure_one(n, code, None, adeg)
                })
                .collect::<Result<Vec<_>>>()?
        }
        FunctionSource::NamedFamilies => {
            let mut specs: Vec<(Family, Option<usize>, String)> = vec![
                (Family::Or, None, "or".into()),
                (Family::And, None, "and".into()),
                (Family::Parity, None, "parity".into()),
                (Family::Majority, None, "majority".into()),
            ];
            for m in 1..=n {
                specs.push((Family::Threshold, Some(m), format!("threshold_{m}")));
            }
            specs
                .into_par_iter()
                .map(|(family, m, name)| {
                    let f = TruthTable::from_family(family, n, m)?;
                    let adeg = if config.include_adeg {
                        adeg_of(&f)?
                    } else {
                        None
                    };
                    measure_one(n, table_code(&f), Some(name), adeg)
                })
                .collect::<Result<Vec<_>>>()?
        }
        FunctionSource::Sampled { count, seed } => {
            if n > 6 {
                return Err(Error::Capability(format!(
                    "sampled suites keep the table code in 64 bits, so n <= 6, got {n}"
                )));
            }
            let mut rng = SplitMix64::new(*seed);
            let mask = if n == 6 { u64::MAX } else { (1u64 << (1usize << n)) - 1 };
            let mut codes: Vec<u64> = (0..*count).map(|_| rng.next_u64() & mask).collect();
            codes.sort_unstable();
            codes.dedup();
            codes
                .into_par_iter()
                .map(|code| {
                    let adeg = if config.include_adeg {
                        adeg_of(&table_from_code(n, code))?
                    } else {
                        None
                    };
                    measure_one(n, code, None, adeg)
                })
                .collect::<Result<Vec<_>>>()?
        }
    };

    let mut violations: Vec<(String, usize)> = CHECK_NAMES
        .iter()
        .map(|&name| (name.to_string(), 0usize))
        .collect();
    for row in &rows {
        for (i, (_, verdict)) in row.checks.as_named().into_iter().enumerate() {
            if verdict == Some(false) {
                violations[i].1 += 1;
            }
        }
    }
    let total_violations = violations.iter().map(|(_, v)| v).sum();
    let summary = SuiteSummary {
        functions: rows.len(),
        violations,
        total_violations,
    };
    Ok((rows, summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_n3_no_violations() {
        let (rows, summary) = run_suite(&SuiteConfig {
            n: 3,
            source: FunctionSource::Exhaustive,
            include_adeg: true,
        })
        .unwrap();
        assert_eq!(rows.len(), 256);
        assert_eq!(summary.total_violations, 0);
        // Rows merge in index order.
        assert!(rows.windows(2).all(|w| w[0].index < w[1].index));
    }

    #[test]
    fn canonical_code_is_orbit_invariant() {
        let perms = permutations(3);
        // OR is symmetric: its orbit under permutations alone is itself.
        let or3 = TruthTable::from_family(Family::Or, 3, None).unwrap();
        let code = table_code(&or3);
        let canon = canonical_code(3, code, &perms);
        // A dictator x0 and a dictator x2 share an orbit.
        let d0 = TruthTable::from_fn(3, |i| i & 1 == 1).unwrap();
        let d2 = TruthTable::from_fn(3, |i| i & 4 == 4).unwrap();
        assert_eq!(
            canonical_code(3, table_code(&d0), &perms),
            canonical_code(3, table_code(&d2), &perms)
        );
        // XOR shift: f and f(. ^ c) share an orbit.
        let shifted = TruthTable::from_fn(3, |i| or3.get(i ^ 0b101)).unwrap();
        assert_eq!(canon, canonical_code(3, table_code(&shifted), &perms));
    }

    #[test]
    fn sampled_suite_is_reproducible() {
        let config = SuiteConfig {
            n: 6,
            source: FunctionSource::Sampled {
                count: 50,
                seed: 99,
            },
            include_adeg: false,
        };
        let (a, _) = run_suite(&config).unwrap();
        let (b, _) = run_suite(&config).unwrap();
        let codes_a: Vec<u64> = a.iter().map(|r| r.index).collect();
        let codes_b: Vec<u64> = b.iter().map(|r| r.index).collect();
        assert_eq!(codes_a, codes_b);
    }

    #[test]
    fn named_families_have_adeg() {
        let (rows, summary) = run_suite(&SuiteConfig {
            n: 6,
            source: FunctionSource::NamedFamilies,
            include_adeg: true,
        })
        .unwrap();
        assert!(rows.iter().all(|r| r.adeg.is_some()));
        assert_eq!(summary.total_violations, 0);
    }

    #[test]
    fn exhaustive_caps() {
        let err = run_suite(&SuiteConfig {
            n: 5,
            source: FunctionSource::Exhaustive,
            include_adeg: false,
        });
        assert!(err.is_err());
    }
}
