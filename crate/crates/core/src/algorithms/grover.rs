//! Grover search driver for OR: run a fixed schedule of Grover rounds,
//! measure a candidate index after each, and spend one classical query to
//! verify it. The driver never errs on the all-zeros input (verification
//! cannot find a 1), and the shipped schedules achieve success at least
//! 2/3 on every input within the `ceil(3 sqrt(n))` query budget.

use crate::error::{Error, Result};
use crate::qsim::{ceil_log2, simulate_index, Circuit, CircuitBuilder};
use crate::rng::SplitMix64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const SUPPORTED_N: [usize; 3] = [4, 8, 16];

/// Per-round Grover iteration counts. Each round also spends one
/// verification query, so the total budget is `sum(iterations) + rounds`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroverSchedule {
    pub iterations: Vec<usize>,
}

impl GroverSchedule {
    pub fn new(iterations: Vec<usize>) -> Self {
        GroverSchedule { iterations }
    }

    pub fn rounds(&self) -> usize {
        self.iterations.len()
    }

    /// Oracle queries inside the rounds plus one verification query each.
    pub fn total_queries(&self) -> usize {
        self.iterations.iter().sum::<usize>() + self.rounds()
    }
}

/// Query budget the schedules must respect: `ceil(3 sqrt(n))`.
pub fn query_budget(n: usize) -> usize {
    (3.0 * (n as f64).sqrt()).ceil() as usize
}

/// Success probability of measuring a marked index after `j` iterations
/// with `t` of `n` items marked (the exact rotation formula).
fn hit_probability(n: usize, t: usize, j: usize) -> f64 {
    if t == 0 {
        return 0.0;
    }
    let theta = ((t as f64 / n as f64).sqrt()).asin();
    ((2 * j + 1) as f64 * theta).sin().powi(2)
}

fn schedule_min_success(n: usize, iterations: &[usize]) -> f64 {
    (1..=n)
        .map(|t| {
            let miss: f64 = iterations
                .iter()
                .map(|&j| 1.0 - hit_probability(n, t, j))
                .product();
            1.0 - miss
        })
        .fold(f64::INFINITY, f64::min)
}

/// Exhaustive offline search for the cheapest schedule (up to three
/// rounds) whose worst-case success over all solution counts meets the
/// threshold. Deterministic: lowest budget first, then lexicographic.
pub fn find_schedule(n: usize, threshold: f64) -> Option<GroverSchedule> {
    let j_max = (std::f64::consts::FRAC_PI_4 * (n as f64).sqrt()).ceil() as usize + 1;
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    for j1 in 0..=j_max {
        candidates.push(vec![j1]);
        for j2 in 0..=j_max {
            candidates.push(vec![j1, j2]);
            for j3 in 0..=j_max {
                candidates.push(vec![j1, j2, j3]);
            }
        }
    }
    candidates.sort_by_key(|c| (c.iter().sum::<usize>() + c.len(), c.clone()));
    candidates
        .into_iter()
        .filter(|c| c.iter().sum::<usize>() + c.len() <= query_budget(n))
        .find(|c| schedule_min_success(n, c) >= threshold)
        .map(GroverSchedule::new)
}

/// Fixed schedules found by [`find_schedule`] at threshold 2/3.
pub fn shipped_schedule(n: usize) -> Result<GroverSchedule> {
    match n {
        4 => Ok(GroverSchedule::new(vec![1, 0])),
        8 => Ok(GroverSchedule::new(vec![2, 1, 0])),
        16 => Ok(GroverSchedule::new(vec![3, 1, 0])),
        other => Err(Error::Capability(format!(
            "grover driver supports n in {SUPPORTED_N:?}, got {other}"
        ))),
    }
}

/// Phase flip of the all-ones index pattern, with the target bit `b`
/// (already in `|->`) absorbing the oracle's phase; `work` is the spare
/// qubit used by the 4-control decomposition.
fn multi_controlled_z(builder: &mut CircuitBuilder, qubits: &[usize], work: Option<usize>) {
    match qubits.len() {
        1 => {
            builder.z(qubits[0]);
        }
        2 => {
            builder.cz(qubits[0], qubits[1]);
        }
        3 => {
            builder.h(qubits[2]);
            builder.ccnot(qubits[0], qubits[1], qubits[2]);
            builder.h(qubits[2]);
        }
        4 => {
            let w = work.expect("4-control phase flip needs a work qubit");
            builder.ccnot(qubits[0], qubits[1], w);
            builder.h(qubits[3]);
            builder.ccnot(w, qubits[2], qubits[3]);
            builder.h(qubits[3]);
            builder.ccnot(qubits[0], qubits[1], w);
        }
        other => panic!("unsupported control count {other}"),
    }
}

fn grover_round_circuit(n: usize, iterations: usize) -> Result<Circuit> {
    let r = ceil_log2(n);
    let b = r;
    let work = if r >= 4 { Some(r + 1) } else { None };
    let m = r + 1 + usize::from(work.is_some());
    let index: Vec<usize> = (0..r).collect();

    let mut builder = CircuitBuilder::new();
    builder.x(b).h(b); // b into |-> so the oracle phase-marks solutions
    for &q in &index {
        builder.h(q);
    }
    for _ in 0..iterations {
        builder.oracle();
        // Inversion about the mean: H X (phase-flip all-zeros) X H.
        for &q in &index {
            builder.h(q);
        }
        for &q in &index {
            builder.x(q);
        }
        multi_controlled_z(&mut builder, &index, work);
        for &q in &index {
            builder.x(q);
        }
        for &q in &index {
            builder.h(q);
        }
    }
    builder.build(m, n)
}

/// Circuit family plus classical driver for computing OR with bounded
/// error via search-and-verify.
#[derive(Clone, Debug)]
pub struct GroverOr {
    n: usize,
    schedule: GroverSchedule,
    rounds: Vec<Circuit>,
}

/// Transcript of one sampled run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroverRun {
    pub output: bool,
    /// Oracle queries spent: iterations of the executed rounds plus one
    /// verification query each.
    pub queries: usize,
    /// Candidate index measured in each executed round.
    pub candidates: Vec<usize>,
}

pub fn grover_or(n: usize, schedule: Option<GroverSchedule>) -> Result<GroverOr> {
    if !SUPPORTED_N.contains(&n) {
        return Err(Error::Capability(format!(
            "grover driver supports n in {SUPPORTED_N:?}, got {n}"
        )));
    }
    let schedule = match schedule {
        Some(s) => s,
        None => shipped_schedule(n)?,
    };
    if schedule.iterations.is_empty() {
        return Err(Error::Parameter("schedule needs at least one round".into()));
    }
    let rounds = schedule
        .iterations
        .iter()
        .map(|&j| grover_round_circuit(n, j))
        .collect::<Result<Vec<_>>>()?;
    Ok(GroverOr {
        n,
        schedule,
        rounds,
    })
}

impl GroverOr {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn schedule(&self) -> &GroverSchedule {
        &self.schedule
    }

    pub fn round_circuits(&self) -> &[Circuit] {
        &self.rounds
    }

    pub fn total_queries(&self) -> usize {
        self.schedule.total_queries()
    }

    /// Distribution over measured candidate indices for one round.
    fn candidate_distribution(&self, round: usize, x_index: usize) -> Vec<f64> {
        let circuit = &self.rounds[round];
        let state = simulate_index(circuit, x_index);
        let r = ceil_log2(self.n);
        let index_mask = (1usize << r) - 1;
        let mut dist = vec![0.0f64; 1 << r];
        for (k, amp) in state.amplitudes().iter().enumerate() {
            dist[k & index_mask] += amp.norm_sqr();
        }
        dist
    }

    /// Exact success probability on one input, marginalizing over every
    /// round's measurement.
    pub fn success_probability(&self, x_index: usize) -> f64 {
        if x_index == 0 {
            // Every verification reads a 0; the driver answers 0, which
            // is correct with certainty.
            return 1.0;
        }
        let mut miss = 1.0f64;
        for round in 0..self.rounds.len() {
            let dist = self.candidate_distribution(round, x_index);
            let hit: f64 = (0..self.n)
                .filter(|&i| x_index >> i & 1 == 1)
                .map(|i| dist[i])
                .sum();
            miss *= 1.0 - hit.clamp(0.0, 1.0);
        }
        1.0 - miss
    }

    /// Exhaustive worst case over all `2^n` inputs.
    pub fn min_success_probability(&self) -> (usize, f64) {
        (0..1usize << self.n)
            .into_par_iter()
            .map(|x| (x, self.success_probability(x)))
            .reduce(
                || (usize::MAX, f64::INFINITY),
                |a, b| {
                    if b.1 < a.1 || (b.1 == a.1 && b.0 < a.0) {
                        b
                    } else {
                        a
                    }
                },
            )
    }

    /// Sample one full driver run with a seeded generator.
    pub fn run(&self, x_index: usize, seed: u64) -> GroverRun {
        let mut rng = SplitMix64::new(seed);
        let mut queries = 0usize;
        let mut candidates = Vec::with_capacity(self.rounds.len());
        for (round, &j) in self.schedule.iterations.iter().enumerate() {
            let dist = self.candidate_distribution(round, x_index);
            let mut u = rng.next_f64();
            let mut candidate = dist.len() - 1;
            for (i, p) in dist.iter().enumerate() {
                if u < *p {
                    candidate = i;
                    break;
                }
                u -= p;
            }
            queries += j + 1; // iterations plus the verification query
            candidates.push(candidate);
            if candidate < self.n && x_index >> candidate & 1 == 1 {
                return GroverRun {
                    output: true,
                    queries,
                    candidates,
                };
            }
        }
        GroverRun {
            output: false,
            queries,
            candidates,
        }
    }
}
