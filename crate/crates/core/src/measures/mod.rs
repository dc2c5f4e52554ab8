//! Classical complexity measures of Boolean functions and the derived
//! quantum lower-bound report.
//!
//! Block sensitivity, certificate complexity and decision-tree depth are
//! computed exactly by exhaustive search, so each operation carries an
//! explicit variable cap and fails loudly beyond it.

mod cert_eval;
mod suite;

pub use cert_eval::{evaluate_by_certificates, CertEvalOutcome, CertEvalRun, StageRecord};
pub use suite::{
    run_suite, FunctionSource, SuiteConfig, SuiteRow, SuiteSummary, CHECK_NAMES,
};

use crate::boolfn::TruthTable;
use crate::error::{Error, Result};
use crate::polynomial::{self, interpolate};
use serde::{Deserialize, Serialize};

pub const MAX_BS_VARS: usize = 12;
pub const MAX_CERT_VARS: usize = 10;
pub const MAX_DEPTH_VARS: usize = 12;

/// A block-sensitivity witness: an input together with disjoint blocks
/// whose individual flipping changes the function value there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BsWitness {
    pub n: usize,
    /// `bs(f)`, the number of blocks below.
    pub value: usize,
    /// Index of the input achieving the maximum.
    pub input: u32,
    /// Pairwise disjoint blocks as variable bitmasks.
    pub blocks: Vec<u32>,
}

impl BsWitness {
    /// Re-check the witness against `f`: blocks are disjoint and each flip
    /// changes the value at `input`.
    pub fn verify(&self, f: &TruthTable) -> bool {
        if f.n() != self.n || self.blocks.len() != self.value {
            return false;
        }
        let mut seen = 0u32;
        let base = f.get(self.input as usize);
        for &block in &self.blocks {
            if block == 0 || block & seen != 0 {
                return false;
            }
            seen |= block;
            if f.get((self.input ^ block) as usize) == base {
                return false;
            }
        }
        true
    }
}

/// A partial assignment forcing the function constant on its subcube:
/// variables in `vars`, with values `values & vars`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub vars: u32,
    pub values: u32,
}

impl Certificate {
    pub fn size(&self) -> usize {
        self.vars.count_ones() as usize
    }

    pub fn consistent_with_index(&self, index: u32) -> bool {
        index & self.vars == self.values
    }

    /// True iff `f` is constant on the subcube fixed by this assignment.
    pub fn forces(&self, f: &TruthTable) -> Option<bool> {
        let free = ((1u32 << f.n()) - 1) & !self.vars;
        let first = f.get((self.values & self.vars) as usize);
        // Enumerate the subcube by walking the submasks of the free bits.
        let mut t = free;
        loop {
            if f.get(((self.values & self.vars) | t) as usize) != first {
                return None;
            }
            if t == 0 {
                break;
            }
            t = (t - 1) & free;
        }
        Some(first)
    }
}

/// Certificate complexity with its per-input witnesses.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertReport {
    pub n: usize,
    /// `C(f)`: max certificate size over all inputs.
    pub c: usize,
    /// Max over 0-inputs; 0 when there are none.
    pub c0: usize,
    /// Max over 1-inputs; 0 when there are none.
    pub c1: usize,
    /// Smallest certificate per input index.
    pub witnesses: Vec<Certificate>,
}

fn check_cap(n: usize, cap: usize, what: &str) -> Result<()> {
    if n > cap {
        return Err(Error::Capability(format!(
            "{what} supports at most {cap} variables, got {n}"
        )));
    }
    Ok(())
}

/// Minimal sensitive blocks of `f` at `input`: sensitive blocks none of
/// whose proper subsets are sensitive. Every sensitive block contains a
/// minimal one, so packings may be built from these alone.
fn minimal_sensitive_blocks(f: &TruthTable, input: u32) -> Vec<u32> {
    let n = f.n();
    let base = f.get(input as usize);
    let mut by_popcount: Vec<u32> = (1..1u32 << n).collect();
    by_popcount.sort_by_key(|m| m.count_ones());
    let mut minimal: Vec<u32> = Vec::new();
    for mask in by_popcount {
        if f.get((input ^ mask) as usize) == base {
            continue;
        }
        if minimal.iter().any(|&m| m & !mask == 0) {
            continue; // a smaller sensitive block sits inside
        }
        minimal.push(mask);
    }
    minimal
}

/// Exact maximum disjoint packing by branch and bound.
fn max_packing(blocks: &[u32]) -> (usize, Vec<u32>) {
    fn recurse(
        blocks: &[u32],
        pos: usize,
        used: u32,
        chosen: &mut Vec<u32>,
        best: &mut (usize, Vec<u32>),
    ) {
        if chosen.len() > best.0 {
            *best = (chosen.len(), chosen.clone());
        }
        if pos >= blocks.len() || chosen.len() + (blocks.len() - pos) <= best.0 {
            return;
        }
        if blocks[pos] & used == 0 {
            chosen.push(blocks[pos]);
            recurse(blocks, pos + 1, used | blocks[pos], chosen, best);
            chosen.pop();
        }
        recurse(blocks, pos + 1, used, chosen, best);
    }
    let mut best = (0usize, Vec::new());
    let mut chosen = Vec::new();
    recurse(blocks, 0, 0, &mut chosen, &mut best);
    best
}

/// Exact block sensitivity with a verifiable witness.
pub fn block_sensitivity(f: &TruthTable) -> Result<BsWitness> {
    check_cap(f.n(), MAX_BS_VARS, "block_sensitivity")?;
    let mut best = BsWitness {
        n: f.n(),
        value: 0,
        input: 0,
        blocks: Vec::new(),
    };
    for input in 0..f.size() as u32 {
        let minimal = minimal_sensitive_blocks(f, input);
        if minimal.len() <= best.value {
            continue; // cannot beat the current best
        }
        let (value, blocks) = max_packing(&minimal);
        if value > best.value {
            best = BsWitness {
                n: f.n(),
                value,
                input,
                blocks,
            };
        }
    }
    Ok(best)
}

/// Exact certificate complexity: per-input search over variable subsets in
/// increasing size, verifying constancy on the fixed subcube.
pub fn certificate_complexity(f: &TruthTable) -> Result<CertReport> {
    check_cap(f.n(), MAX_CERT_VARS, "certificate_complexity")?;
    let n = f.n();
    let mut by_size: Vec<u32> = (0..1u32 << n).collect();
    by_size.sort_by_key(|m| m.count_ones());

    let mut witnesses = Vec::with_capacity(f.size());
    let (mut c, mut c0, mut c1) = (0usize, 0usize, 0usize);
    for input in 0..f.size() as u32 {
        let mut found = None;
        for &vars in &by_size {
            let cert = Certificate {
                vars,
                values: input & vars,
            };
            if cert.forces(f).is_some() {
                found = Some(cert);
                break;
            }
        }
        let cert = found.expect("the full assignment always forces");
        let size = cert.size();
        c = c.max(size);
        if f.get(input as usize) {
            c1 = c1.max(size);
        } else {
            c0 = c0.max(size);
        }
        witnesses.push(cert);
    }
    Ok(CertReport {
        n,
        c,
        c0,
        c1,
        witnesses,
    })
}

/// Exact decision-tree depth by memoized minimax over partial assignments,
/// keyed by ternary encoding (unset / fixed-0 / fixed-1), at most `3^n`
/// states.
pub fn decision_tree_depth(f: &TruthTable) -> Result<usize> {
    check_cap(f.n(), MAX_DEPTH_VARS, "decision_tree_depth")?;
    let n = f.n();
    let pow3: Vec<usize> = (0..n).scan(1usize, |acc, _| {
        let v = *acc;
        *acc *= 3;
        Some(v)
    }).collect();
    let states = pow3.last().copied().unwrap_or(1) * 3;
    let mut memo: Vec<u8> = vec![u8::MAX; states];

    fn solve(
        f: &TruthTable,
        set: u32,
        values: u32,
        pow3: &[usize],
        memo: &mut [u8],
    ) -> u8 {
        let n = f.n();
        let code: usize = (0..n)
            .map(|i| {
                let trit = if set & (1 << i) == 0 {
                    0
                } else if values & (1 << i) == 0 {
                    1
                } else {
                    2
                };
                trit * pow3[i]
            })
            .sum();
        if memo[code] != u8::MAX {
            return memo[code];
        }
        let free = ((1u32 << n) - 1) & !set;
        // Constant on the remaining subcube?
        let first = f.get(values as usize);
        let mut constant = true;
        let mut t = free;
        loop {
            if f.get((values | t) as usize) != first {
                constant = false;
                break;
            }
            if t == 0 {
                break;
            }
            t = (t - 1) & free;
        }
        let result = if constant {
            0
        } else {
            let mut best = u8::MAX;
            for i in 0..n {
                let bit = 1u32 << i;
                if set & bit != 0 {
                    continue;
                }
                let zero = solve(f, set | bit, values, pow3, memo);
                let one = solve(f, set | bit, values | bit, pow3, memo);
                best = best.min(1 + zero.max(one));
            }
            best
        };
        memo[code] = result;
        result
    }

    Ok(solve(f, 0, 0, &pow3, &mut memo) as usize)
}

/// How the approximate degree in a [`BoundReport`] was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdegMethod {
    GeneralLp,
    SymmetricLp,
    Skipped,
}

/// Per-inequality verdicts. `None` means the check did not apply (the
/// approximate degree was unavailable, or the function is not monotone).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InequalityChecks {
    pub c1_le_c: bool,
    pub c_le_bs_squared: bool,
    pub d_le_c1_bs: bool,
    pub d_le_bs_cubed: bool,
    pub deg_le_d: bool,
    pub d_le_n: bool,
    pub d_le_2_deg4: bool,
    pub adeg_le_deg: Option<bool>,
    pub bs_le_6_adeg_squared: Option<bool>,
    pub d_le_216_adeg6: Option<bool>,
    pub monotone_bs_eq_c: Option<bool>,
}

impl InequalityChecks {
    /// Named flags in stable order (the CSV column order).
    pub fn as_named(&self) -> Vec<(&'static str, Option<bool>)> {
        vec![
            ("c1_le_c", Some(self.c1_le_c)),
            ("c_le_bs_squared", Some(self.c_le_bs_squared)),
            ("d_le_c1_bs", Some(self.d_le_c1_bs)),
            ("d_le_bs_cubed", Some(self.d_le_bs_cubed)),
            ("deg_le_d", Some(self.deg_le_d)),
            ("d_le_n", Some(self.d_le_n)),
            ("d_le_2_deg4", Some(self.d_le_2_deg4)),
            ("adeg_le_deg", self.adeg_le_deg),
            ("bs_le_6_adeg_squared", self.bs_le_6_adeg_squared),
            ("d_le_216_adeg6", self.d_le_216_adeg6),
            ("monotone_bs_eq_c", self.monotone_bs_eq_c),
        ]
    }

    /// True iff no evaluated check failed.
    pub fn all_pass(&self) -> bool {
        self.as_named().iter().all(|(_, v)| *v != Some(false))
    }

    fn evaluate(
        n: usize,
        deg: usize,
        adeg: Option<usize>,
        bs: usize,
        cert: &CertReport,
        d: usize,
        monotone: bool,
    ) -> Self {
        InequalityChecks {
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
        }
    }
}

/// All measures of one function, the derived query lower bounds, and the
/// inequality verdicts.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub deg: usize,
    /// Set when the function is constant (the representing polynomial of
    /// constant zero is the zero polynomial; degree is reported as 0).
    pub constant: Option<bool>,
    pub adeg: Option<usize>,
    pub adeg_method: AdegMethod,
    pub bs: usize,
    pub c: usize,
    pub c0: usize,
    pub c1: usize,
    pub d: usize,
    pub monotone: bool,
    /// Jump statistic, present for non-constant symmetric functions.
    pub gamma: Option<usize>,
    /// `max(deg/2, sqrt(bs/8))`: no exact-semantics network with fewer
    /// queries can compute the function.
    pub q_exact_lower: f64,
    /// `max(adeg/2, sqrt(bs/16))` (the adeg part only when available).
    pub q_bounded_lower: f64,
    pub checks: InequalityChecks,
}

impl BoundReport {
    /// Markdown table row; pair with [`BoundReport::markdown_header`].
    pub fn markdown_row(&self, label: &str) -> String {
        let opt = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
        format!(
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {:.4} | {:.4} | {} |",
            label,
            self.n,
            self.deg,
            opt(self.adeg),
            self.bs,
            self.c,
            self.c1,
            self.d,
            opt(self.gamma),
            self.q_exact_lower,
            self.q_bounded_lower,
            if self.checks.all_pass() { "ok" } else { "VIOLATION" },
        )
    }

    pub fn markdown_header() -> String {
        "| function | n | deg | adeg | bs | C | C1 | D | gamma | QE lower | Q2 lower | checks |\n\
         |---|---|---|---|---|---|---|---|---|---|---|---|"
            .to_string()
    }
}

/// Compute every measure of `f`, evaluate the inequality chain, and derive
/// the query lower bounds. The approximate degree comes from the general
/// LP when `n <= 4`, from the univariate LP when `f` is symmetric, and is
/// skipped otherwise.
pub fn bound_report(f: &TruthTable) -> Result<BoundReport> {
    let n = f.n();
    let poly = interpolate(f);
    let deg = poly.degree();
    let constant = f.constant_value();

    let (adeg, adeg_method) = if n <= polynomial::MAX_GENERAL_LP_VARS {
        (
            Some(polynomial::approx_degree(f, &polynomial::default_eps())?),
            AdegMethod::GeneralLp,
        )
    } else if let Some(profile) = f.symmetric_profile() {
        (
            Some(polynomial::symmetric_approx_degree(
                &profile,
                &polynomial::default_eps(),
            )?),
            AdegMethod::SymmetricLp,
        )
    } else {
        (None, AdegMethod::Skipped)
    };

    let bs = block_sensitivity(f)?;
    let cert = certificate_complexity(f)?;
    let d = decision_tree_depth(f)?;
    let monotone = f.is_monotone();
    let gamma = f
        .symmetric_profile()
        .and_then(|p| p.gamma().ok());

    let q_exact_lower = (deg as f64 / 2.0).max((bs.value as f64 / 8.0).sqrt());
    let mut q_bounded_lower = (bs.value as f64 / 16.0).sqrt();
    if let Some(a) = adeg {
        q_bounded_lower = q_bounded_lower.max(a as f64 / 2.0);
    }

    let checks = InequalityChecks::evaluate(n, deg, adeg, bs.value, &cert, d, monotone);

    Ok(BoundReport {
        n,
        deg,
        constant,
        adeg,
        adeg_method,
        bs: bs.value,
        c: cert.c,
        c0: cert.c0,
        c1: cert.c1,
        d,
        monotone,
        gamma,
        q_exact_lower,
        q_bounded_lower,
        checks,
    })
}

/// Constant-free scale of the bounded-error query cost of a non-constant
/// symmetric function: `sqrt(n (n - Gamma))`.
pub fn symmetric_query_scale(n: usize, gamma: usize) -> f64 {
    ((n * (n - gamma)) as f64).sqrt()
}

/// Constant-free scale for THRESHOLD at level `m`: `sqrt(m (n - m + 1))`.
pub fn threshold_query_scale(n: usize, m: usize) -> f64 {
    ((m * (n - m + 1)) as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::Family;

    fn table(family: Family, n: usize) -> TruthTable {
        TruthTable::from_family(family, n, None).unwrap()
    }

    #[test]
    fn block_sensitivity_named_cases() {
        for n in 2..=6usize {
            let w = block_sensitivity(&table(Family::Or, n)).unwrap();
            assert_eq!(w.value, n);
            assert_eq!(w.input, 0);
            assert!(w.blocks.iter().all(|b| b.count_ones() == 1));
            assert!(w.verify(&table(Family::Or, n)));
        }
        let constant = TruthTable::new_constant(3, false).unwrap();
        assert_eq!(block_sensitivity(&constant).unwrap().value, 0);
        let parity4 = table(Family::Parity, 4);
        let w = block_sensitivity(&parity4).unwrap();
        assert_eq!(w.value, 4);
        assert!(w.verify(&parity4));
    }

    #[test]
    fn block_sensitivity_brute_force_oracle_n4() {
        // Independent oracle: try all block families over all inputs.
        fn brute(f: &TruthTable) -> usize {
            let n = f.n();
            let masks: Vec<u32> = (1..1u32 << n).collect();
            let mut best = 0;
            for input in 0..f.size() as u32 {
                fn go(
                    f: &TruthTable,
                    input: u32,
                    masks: &[u32],
                    pos: usize,
                    used: u32,
                    count: usize,
                    best: &mut usize,
                ) {
                    *best = (*best).max(count);
                    for p in pos..masks.len() {
                        let b = masks[p];
                        if b & used == 0
                            && f.get((input ^ b) as usize) != f.get(input as usize)
                        {
                            go(f, input, masks, p + 1, used | b, count + 1, best);
                        }
                    }
                }
                go(f, input, &masks, 0, 0, 0, &mut best);
            }
            best
        }
        let mut rng = crate::rng::SplitMix64::new(0xb5);
        for _ in 0..40 {
            let code = rng.next_u64() & 0xffff;
            let f = TruthTable::from_fn(4, |i| (code >> i) & 1 == 1).unwrap();
            let fast = block_sensitivity(&f).unwrap();
            assert_eq!(fast.value, brute(&f), "code={code:#x}");
            assert!(fast.verify(&f));
        }
        assert_eq!(brute(&table(Family::Parity, 4)), 4);
    }

    #[test]
    fn certificate_named_cases() {
        for n in 2..=6usize {
            let or = table(Family::Or, n);
            let r = certificate_complexity(&or).unwrap();
            assert_eq!(r.c1, 1);
            assert_eq!(r.c, n);
            // The all-zeros input needs everything fixed.
            assert_eq!(r.witnesses[0].size(), n);
        }
        let parity4 = table(Family::Parity, 4);
        let r = certificate_complexity(&parity4).unwrap();
        assert_eq!((r.c, r.c0, r.c1), (4, 4, 4));
        let one = TruthTable::new_constant(3, true).unwrap();
        let r = certificate_complexity(&one).unwrap();
        assert_eq!((r.c, r.c0, r.c1), (0, 0, 0));
    }

    #[test]
    fn certificate_witnesses_verify() {
        let mut rng = crate::rng::SplitMix64::new(0xce87);
        for _ in 0..25 {
            let code = rng.next_u64() & 0xffff;
            let f = TruthTable::from_fn(4, |i| (code >> i) & 1 == 1).unwrap();
            let r = certificate_complexity(&f).unwrap();
            for (input, cert) in r.witnesses.iter().enumerate() {
                assert!(cert.consistent_with_index(input as u32));
                assert_eq!(cert.forces(&f), Some(f.get(input)));
            }
        }
    }

    #[test]
    fn decision_tree_named_cases() {
        for n in 2..=6usize {
            assert_eq!(decision_tree_depth(&table(Family::Or, n)).unwrap(), n);
            assert_eq!(decision_tree_depth(&table(Family::Parity, n)).unwrap(), n);
        }
        let constant = TruthTable::new_constant(4, true).unwrap();
        assert_eq!(decision_tree_depth(&constant).unwrap(), 0);
        // Address function on 3 vars: x2 selects between x0 and x1 -> depth 2.
        let mux = TruthTable::from_fn(3, |i| {
            if i & 0b100 != 0 {
                i & 0b010 != 0
            } else {
                i & 0b001 != 0
            }
        })
        .unwrap();
        assert_eq!(decision_tree_depth(&mux).unwrap(), 2);
    }

    #[test]
    fn caps_fail_loudly() {
        let f = TruthTable::new_constant(13, false).unwrap();
        assert!(matches!(block_sensitivity(&f), Err(Error::Capability(_))));
        assert!(matches!(decision_tree_depth(&f), Err(Error::Capability(_))));
        let g = TruthTable::new_constant(11, false).unwrap();
        assert!(matches!(
            certificate_complexity(&g),
            Err(Error::Capability(_))
        ));
    }

    #[test]
    fn bound_report_or4_tightness() {
        let r = bound_report(&table(Family::Or, 4)).unwrap();
        assert_eq!((r.deg, r.bs, r.c1, r.d), (4, 4, 1, 4));
        assert_eq!(r.adeg, Some(2));
        assert_eq!(r.d, r.c1 * r.bs);
        assert!(r.monotone);
        assert_eq!(r.gamma, Some(3));
        assert!(r.checks.all_pass());
        assert_eq!(r.checks.monotone_bs_eq_c, Some(true));
    }

    #[test]
    fn bound_report_parity4() {
        let r = bound_report(&table(Family::Parity, 4)).unwrap();
        assert_eq!(r.adeg, Some(4));
        assert_eq!(r.q_bounded_lower, 2.0);
        assert!(r.checks.all_pass());
    }

    #[test]
    fn bound_report_larger_symmetric_uses_profile_lp() {
        let r = bound_report(&table(Family::Or, 6)).unwrap();
        assert_eq!(r.adeg_method, AdegMethod::SymmetricLp);
        assert!(r.adeg.is_some());
        assert!(r.checks.all_pass());
    }

    #[test]
    fn every_function_on_three_variables_passes() {
        for code in 0u64..256 {
            let f = TruthTable::from_fn(3, |i| (code >> i) & 1 == 1).unwrap();
            let r = bound_report(&f).unwrap();
            assert!(r.checks.all_pass(), "code={code:#x} report={r:?}");
        }
    }

    #[test]
    fn query_scales() {
        assert_eq!(symmetric_query_scale(4, 3), 2.0);
        assert_eq!(threshold_query_scale(4, 2), (6.0f64).sqrt());
    }
}
