//! Quantum counting: phase estimation on the Grover iterate recovers the
//! Hamming weight of the black box exactly with probability at least 3/4,
//! and the symmetric-function driver built on it computes any non-constant
//! symmetric function with bounded error.
//!
//! The controlled Grover iterate is assembled from the plain (uncontrolled)
//! oracle: querying into a fresh target bit, phasing it against the control
//! with CZ, and uncomputing costs two oracle calls per application but
//! needs no controlled black box. The inverse Fourier transform uses
//! CUSTOM phase gates, so counting circuits run in numeric mode only.

use crate::boolfn::{index_of_bits, SymmetricProfile};
use crate::error::{Error, Result};
use crate::qsim::{ceil_log2, simulate_index, Circuit, CircuitBuilder};
use crate::rng::SplitMix64;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub const SUPPORTED_N: [usize; 2] = [4, 8];

/// Smallest precision (ancilla count) accepted for `n` variables.
pub fn default_precision(n: usize) -> usize {
    ceil_log2(n) + 3
}

fn controlled_phase(builder: &mut CircuitBuilder, control: usize, target: usize, angle: f64) {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let phase = Complex64::from_polar(1.0, angle);
    builder.custom(
        vec![control, target],
        vec![
            vec![one, zero, zero, zero],
            vec![zero, one, zero, zero],
            vec![zero, zero, one, zero],
            vec![zero, zero, zero, phase],
        ],
    );
}

fn swap(builder: &mut CircuitBuilder, a: usize, b: usize) {
    builder.cnot(a, b).cnot(b, a).cnot(a, b);
}

/// Inverse Fourier transform on the ancilla register `qubits` (bit `k` of
/// the measured value lives on `qubits[k]`).
fn inverse_qft(builder: &mut CircuitBuilder, qubits: &[usize]) {
    let p = qubits.len();
    for i in 0..p / 2 {
        swap(builder, qubits[i], qubits[p - 1 - i]);
    }
    for k in 0..p {
        for j in 0..k {
            let angle = -2.0 * PI / (1u64 << (k - j + 1)) as f64;
            controlled_phase(builder, qubits[j], qubits[k], angle);
        }
        builder.h(qubits[k]);
    }
}

/// Phase flip controlled on every listed qubit (3 or 4 controls), using
/// `work` for the 4-control case.
fn controlled_phase_flip(builder: &mut CircuitBuilder, controls: &[usize], work: Option<usize>) {
    match controls.len() {
        3 => {
            let (a, b, c) = (controls[0], controls[1], controls[2]);
            builder.h(c);
            builder.ccnot(a, b, c);
            builder.h(c);
        }
        4 => {
            let w = work.expect("4-control phase flip needs a work qubit");
            builder.ccnot(controls[0], controls[1], w);
            builder.h(controls[3]);
            builder.ccnot(w, controls[2], controls[3]);
            builder.h(controls[3]);
            builder.ccnot(controls[0], controls[1], w);
        }
        other => panic!("unsupported control count {other}"),
    }
}

/// One controlled Grover iterate: controlled phase-marking (two oracle
/// calls around a CZ against the control) followed by controlled
/// inversion about the mean. The trailing Z on the control cancels the
/// global sign the circuit-style diffusion carries, so each application
/// is exactly the rotation whose eigenphase encodes the solution count.
fn controlled_grover(
    builder: &mut CircuitBuilder,
    n: usize,
    control: usize,
    work: Option<usize>,
) {
    let r = ceil_log2(n);
    let b = r;
    builder.oracle();
    builder.cz(control, b);
    builder.oracle();
    for q in 0..r {
        builder.h(q);
    }
    for q in 0..r {
        builder.x(q);
    }
    let mut controls = vec![control];
    controls.extend(0..r);
    controlled_phase_flip(builder, &controls, work);
    for q in 0..r {
        builder.x(q);
    }
    for q in 0..r {
        builder.h(q);
    }
    builder.z(control);
}

/// Phase-estimation counter over `n` variables with `precision` ancilla
/// qubits.
#[derive(Clone, Debug)]
pub struct QuantumCounter {
    n: usize,
    precision: usize,
    circuit: Circuit,
}

/// The counting claim at one Hamming weight: the probability of decoding
/// exactly `estimate` for every input of that weight.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CountingOutcome {
    /// The weight being estimated (success means decoding exactly this).
    pub estimate: usize,
    /// `(input index, P(decoded weight = estimate))` for every input of
    /// weight `estimate`.
    pub success_by_input: Vec<(usize, f64)>,
    /// Controlled-Grover applications in the circuit: `2^precision - 1`.
    pub grover_applications: usize,
}

pub fn counting_circuit(n: usize, precision: Option<usize>) -> Result<QuantumCounter> {
    if !SUPPORTED_N.contains(&n) {
        return Err(Error::Capability(format!(
            "counting supports n in {SUPPORTED_N:?}, got {n}"
        )));
    }
    let p = precision.unwrap_or_else(|| default_precision(n));
    if p < default_precision(n) {
        return Err(Error::Parameter(format!(
            "precision {p} below the minimum {} for n = {n}",
            default_precision(n)
        )));
    }
    if p > 12 {
        return Err(Error::Capability(format!(
            "precision {p} exceeds the supported maximum 12"
        )));
    }
    let r = ceil_log2(n);
    let anc0 = r + 1;
    let work = if r >= 3 { Some(anc0 + p) } else { None };
    let m = anc0 + p + usize::from(work.is_some());

    let mut builder = CircuitBuilder::new();
    for q in 0..r {
        builder.h(q);
    }
    for k in 0..p {
        builder.h(anc0 + k);
    }
    for k in 0..p {
        for _ in 0..1usize << k {
            controlled_grover(&mut builder, n, anc0 + k, work);
        }
    }
    let ancillas: Vec<usize> = (0..p).map(|k| anc0 + k).collect();
    inverse_qft(&mut builder, &ancillas);
    let circuit = builder.build(m, n)?;
    Ok(QuantumCounter {
        n,
        precision: p,
        circuit,
    })
}

impl QuantumCounter {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn circuit(&self) -> &Circuit {
        &self.circuit
    }

    /// Oracle calls in the circuit (two per controlled-Grover application).
    pub fn query_count(&self) -> usize {
        self.circuit.query_count()
    }

    pub fn grover_applications(&self) -> usize {
        (1usize << self.precision) - 1
    }

    /// Map a measured ancilla value to a weight estimate:
    /// `round(n sin^2(pi y / 2^p))`.
    pub fn decode(&self, y: usize) -> usize {
        let phase = y as f64 / (1u64 << self.precision) as f64;
        let estimate = self.n as f64 * (PI * phase).sin().powi(2);
        (estimate.round() as usize).min(self.n)
    }

    /// Full decoder table `(y, estimate)`.
    pub fn decoder_table(&self) -> Vec<(usize, usize)> {
        (0..1usize << self.precision)
            .map(|y| (y, self.decode(y)))
            .collect()
    }

    /// Distribution over measured ancilla values for one input, computed
    /// exactly from the statevector.
    pub fn phase_distribution(&self, x_index: usize) -> Vec<f64> {
        let state = simulate_index(&self.circuit, x_index);
        let r = ceil_log2(self.n);
        let anc0 = r + 1;
        let anc_mask = ((1usize << self.precision) - 1) << anc0;
        let mut dist = vec![0.0f64; 1 << self.precision];
        for (k, amp) in state.amplitudes().iter().enumerate() {
            dist[(k & anc_mask) >> anc0] += amp.norm_sqr();
        }
        dist
    }

    /// Distribution over decoded weight estimates for one input.
    pub fn distribution(&self, x_index: usize) -> Vec<f64> {
        let mut out = vec![0.0f64; self.n + 1];
        for (y, p) in self.phase_distribution(x_index).into_iter().enumerate() {
            out[self.decode(y)] += p;
        }
        out
    }

    /// `P(decoded estimate = |x|)` for one input.
    pub fn success_probability(&self, x_index: usize) -> f64 {
        let t = (x_index as u32).count_ones() as usize;
        self.distribution(x_index)[t]
    }

    /// Success probabilities across every input of weight `t`.
    pub fn outcome_at_weight(&self, t: usize) -> Result<CountingOutcome> {
        if t > self.n {
            return Err(Error::Parameter(format!(
                "weight {t} out of range for n = {}",
                self.n
            )));
        }
        let success_by_input = (0..1usize << self.n)
            .filter(|x| x.count_ones() as usize == t)
            .map(|x| (x, self.success_probability(x)))
            .collect();
        Ok(CountingOutcome {
            estimate: t,
            success_by_input,
            grover_applications: self.grover_applications(),
        })
    }
}

/// Transcript of the symmetric-function driver.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SymmetricEvalRun {
    pub output: bool,
    /// Total oracle calls across all repetitions.
    pub queries: usize,
    /// The weight estimate sampled in each repetition.
    pub estimates: Vec<usize>,
    /// Votes for output 1 across the repetitions.
    pub votes_for_one: usize,
}

/// The flat middle band of a non-constant symmetric function: the weights
/// where the profile is forced constant by its jump statistic. Empty when
/// the jump statistic leaves no slack.
pub fn constant_band(n: usize, gamma: usize) -> Option<(usize, usize)> {
    let lo = (n - gamma).div_ceil(2);
    let hi = (n + gamma).saturating_sub(2) / 2;
    (lo <= hi).then_some((lo, hi))
}

/// Evaluate a non-constant symmetric function with bounded error: run the
/// exact counting subroutine, trust the estimate outside the flat middle
/// band and the band's constant value inside it, and take a majority vote
/// over `repetitions` runs. Estimates are sampled from the exact counting
/// distribution with a seeded generator, so runs are reproducible.
pub fn symmetric_eval(
    profile: &SymmetricProfile,
    x: &[bool],
    seed: u64,
    repetitions: usize,
) -> Result<SymmetricEvalRun> {
    let n = profile.n();
    if profile.is_constant() {
        return Err(Error::Domain(
            "the counting driver needs a non-constant profile".into(),
        ));
    }
    if x.len() != n {
        return Err(Error::Parameter(format!(
            "input has {} bits, profile has {n} variables",
            x.len()
        )));
    }
    if repetitions == 0 {
        return Err(Error::Parameter("at least one repetition required".into()));
    }
    let gamma = profile.gamma()?;
    let band = constant_band(n, gamma);
    let counter = counting_circuit(n, None)?;
    let x_index = index_of_bits(x);
    let dist = counter.distribution(x_index);

    let mut rng = SplitMix64::new(seed);
    let mut estimates = Vec::with_capacity(repetitions);
    let mut votes_for_one = 0usize;
    for _ in 0..repetitions {
        let mut u = rng.next_f64();
        let mut estimate = n;
        for (t, p) in dist.iter().enumerate() {
            if u < *p {
                estimate = t;
                break;
            }
            u -= p;
        }
        estimates.push(estimate);
        let decision = match band {
            Some((lo, hi)) if (lo..=hi).contains(&estimate) => profile.value_at(lo),
            _ => profile.value_at(estimate),
        };
        if decision {
            votes_for_one += 1;
        }
    }
    Ok(SymmetricEvalRun {
        output: 2 * votes_for_one > repetitions,
        queries: repetitions * counter.query_count(),
        estimates,
        votes_for_one,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::Family;
    use crate::qsim::StateVector;

    #[test]
    fn inverse_qft_recovers_encoded_phase() {
        // Prepare sum_y e^{2 pi i j y / 2^p} |y> / sqrt(2^p) one qubit at a
        // time, run the inverse transform, and expect |j> exactly.
        let p = 4usize;
        for j in [0usize, 1, 5, 11, 15] {
            let mut builder = CircuitBuilder::new();
            for k in 0..p {
                builder.h(k);
                let angle = 2.0 * PI * (j as f64) * (1u64 << k) as f64
                    / (1u64 << p) as f64;
                let one = Complex64::new(1.0, 0.0);
                let zero = Complex64::new(0.0, 0.0);
                builder.custom(
                    vec![k],
                    vec![
                        vec![one, zero],
                        vec![zero, Complex64::from_polar(1.0, angle)],
                    ],
                );
            }
            let ancillas: Vec<usize> = (0..p).collect();
            inverse_qft(&mut builder, &ancillas);
            let c = builder.build(p, 1).unwrap();
            let state = crate::qsim::simulate(&c, &[false]).unwrap();
            let amp = state.amplitudes()[j];
            assert!(
                (amp.norm() - 1.0).abs() < 1e-9,
                "j={j}: amplitude {amp:?}"
            );
        }
    }

    #[test]
    fn counting_exact_at_the_extremes() {
        let counter = counting_circuit(4, None).unwrap();
        // t = 0 and t = n have exactly representable eigenphases.
        assert!((counter.success_probability(0) - 1.0).abs() < 1e-9);
        assert!((counter.success_probability(0b1111) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn counting_meets_three_quarters_n4() {
        let counter = counting_circuit(4, None).unwrap();
        for x in 0..16usize {
            let p = counter.success_probability(x);
            assert!(p >= 0.75 - 1e-9, "x={x}: {p}");
        }
    }

    #[test]
    fn decoder_table_shape() {
        let counter = counting_circuit(4, None).unwrap();
        let table = counter.decoder_table();
        assert_eq!(table.len(), 1 << counter.precision());
        assert_eq!(table[0], (0, 0));
        // y = 2^{p-1} corresponds to phase 1/2: estimate n.
        assert_eq!(table[1 << (counter.precision() - 1)].1, 4);
    }

    #[test]
    fn counter_norm_is_preserved() {
        let counter = counting_circuit(4, None).unwrap();
        let state: StateVector = simulate_index(counter.circuit(), 0b0101);
        assert!((state.norm_sqr() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn band_logic() {
        // OR on 8 variables: gamma = 7, band = weights 1..=6 (all value 1).
        assert_eq!(constant_band(8, 7), Some((1, 6)));
        // PARITY on 4: gamma = 1, empty band.
        assert_eq!(constant_band(4, 1), None);
        // MAJORITY on 8: gamma = 1, empty band.
        assert_eq!(constant_band(8, 1), None);
    }

    #[test]
    fn symmetric_eval_parity4_is_exact_counting() {
        let profile = SymmetricProfile::from_family(Family::Parity, 4, None).unwrap();
        for x_index in [0usize, 0b1010, 0b1111] {
            let x = crate::boolfn::bits_of_index(x_index, 4);
            let run = symmetric_eval(&profile, &x, 7, 3).unwrap();
            let want = x_index.count_ones() % 2 == 1;
            assert_eq!(run.output, want, "x={x_index:b}");
        }
    }

    #[test]
    fn symmetric_eval_success_at_n8() {
        // Single-run correctness probability, computed exactly from the
        // counting distribution and the band decision rule.
        let single_run_success = |profile: &SymmetricProfile, x_index: usize| -> f64 {
            let n = profile.n();
            let gamma = profile.gamma().unwrap();
            let band = constant_band(n, gamma);
            let counter = counting_circuit(n, None).unwrap();
            let want = profile.value_at(x_index.count_ones() as usize);
            counter
                .distribution(x_index)
                .iter()
                .enumerate()
                .filter(|(estimate, _)| {
                    let decision = match band {
                        Some((lo, hi)) if (lo..=hi).contains(estimate) => profile.value_at(lo),
                        _ => profile.value_at(*estimate),
                    };
                    decision == want
                })
                .map(|(_, p)| p)
                .sum()
        };

        let majority8 = SymmetricProfile::from_family(Family::Majority, 8, None).unwrap();
        let x_weight5 = 0b00011111usize;
        assert!(single_run_success(&majority8, x_weight5) >= 2.0 / 3.0);
        let run = symmetric_eval(
            &majority8,
            &crate::boolfn::bits_of_index(x_weight5, 8),
            11,
            3,
        )
        .unwrap();
        assert!(run.output);

        let or8 = SymmetricProfile::from_family(Family::Or, 8, None).unwrap();
        assert!(single_run_success(&or8, 0) >= 2.0 / 3.0);
        let run = symmetric_eval(&or8, &[false; 8], 13, 3).unwrap();
        assert!(!run.output);
    }

    #[test]
    fn symmetric_eval_rejects_constant_profiles() {
        let constant = SymmetricProfile::new(vec![true; 5]).unwrap();
        let x = vec![false; 4];
        assert!(matches!(
            symmetric_eval(&constant, &x, 1, 3),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn unsupported_sizes_fail_loudly() {
        assert!(matches!(
            counting_circuit(6, None),
            Err(Error::Capability(_))
        ));
        assert!(matches!(
            counting_circuit(4, Some(3)),
            Err(Error::Parameter(_))
        ));
    }
}
