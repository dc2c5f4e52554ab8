//! Numeric statevector execution.

use super::{ceil_log2, Circuit, CircuitOp, GateKind, GateOp};
use crate::boolfn::index_of_bits;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

/// Dense complex statevector over `m` qubits.
#[derive(Clone, Debug)]
pub struct StateVector {
    m: usize,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// The all-zeros basis state.
    pub fn zero_state(m: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << m];
        amps[0] = Complex64::new(1.0, 0.0);
        StateVector { m, amps }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Probability mass of the basis states selected by the predicate.
    pub fn probability_where(&self, pred: impl Fn(usize) -> bool) -> f64 {
        let p: f64 = self
            .amps
            .iter()
            .enumerate()
            .filter(|(k, _)| pred(*k))
            .map(|(_, a)| a.norm_sqr())
            .sum();
        p.clamp(0.0, 1.0)
    }

    /// Probability that measuring `qubit` yields 1.
    pub fn probability_bit(&self, qubit: usize) -> f64 {
        self.probability_where(|k| k >> qubit & 1 == 1)
    }

    fn apply_one_qubit(&mut self, t: usize, matrix: [[Complex64; 2]; 2]) {
        let bit = 1usize << t;
        for k in 0..self.amps.len() {
            if k & bit == 0 {
                let a = self.amps[k];
                let b = self.amps[k | bit];
                self.amps[k] = matrix[0][0] * a + matrix[0][1] * b;
                self.amps[k | bit] = matrix[1][0] * a + matrix[1][1] * b;
            }
        }
    }

    pub fn apply_gate(&mut self, gate: &GateOp) {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        match gate.kind {
            GateKind::H => {
                let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
                self.apply_one_qubit(gate.targets[0], [[s, s], [s, -s]]);
            }
            GateKind::X => {
                let bit = 1usize << gate.targets[0];
                for k in 0..self.amps.len() {
                    if k & bit == 0 {
                        self.amps.swap(k, k | bit);
                    }
                }
            }
            GateKind::Z => {
                let bit = 1usize << gate.targets[0];
                for (k, amp) in self.amps.iter_mut().enumerate() {
                    if k & bit != 0 {
                        *amp = -*amp;
                    }
                }
            }
            GateKind::S => {
                let bit = 1usize << gate.targets[0];
                let i = Complex64::new(0.0, 1.0);
                for (k, amp) in self.amps.iter_mut().enumerate() {
                    if k & bit != 0 {
                        *amp *= i;
                    }
                }
            }
            GateKind::T => {
                let bit = 1usize << gate.targets[0];
                let w = Complex64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2);
                for (k, amp) in self.amps.iter_mut().enumerate() {
                    if k & bit != 0 {
                        *amp *= w;
                    }
                }
            }
            GateKind::Cnot => {
                let c = 1usize << gate.targets[0];
                let t = 1usize << gate.targets[1];
                for k in 0..self.amps.len() {
                    if k & c != 0 && k & t == 0 {
                        self.amps.swap(k, k | t);
                    }
                }
            }
            GateKind::Ccnot => {
                let c1 = 1usize << gate.targets[0];
                let c2 = 1usize << gate.targets[1];
                let t = 1usize << gate.targets[2];
                for k in 0..self.amps.len() {
                    if k & c1 != 0 && k & c2 != 0 && k & t == 0 {
                        self.amps.swap(k, k | t);
                    }
                }
            }
            GateKind::Cz => {
                let a = 1usize << gate.targets[0];
                let b = 1usize << gate.targets[1];
                for (k, amp) in self.amps.iter_mut().enumerate() {
                    if k & a != 0 && k & b != 0 {
                        *amp = -*amp;
                    }
                }
            }
            GateKind::Custom => {
                let matrix = gate.matrix.as_ref().expect("validated at construction");
                let kq = gate.targets.len();
                let dim = 1usize << kq;
                let mut scratch = vec![zero; dim];
                let target_bits: Vec<usize> = gate.targets.iter().map(|&t| 1usize << t).collect();
                // Iterate base states with all target bits clear.
                let all_targets: usize = target_bits.iter().sum();
                for base in 0..self.amps.len() {
                    if base & all_targets != 0 {
                        continue;
                    }
                    for (row, slot) in scratch.iter_mut().enumerate() {
                        let mut acc = zero;
                        for (col, entry) in matrix[row].iter().enumerate() {
                            let mut k = base;
                            for (t, &tb) in target_bits.iter().enumerate() {
                                if col >> t & 1 == 1 {
                                    k |= tb;
                                }
                            }
                            acc += entry * self.amps[k];
                        }
                        *slot = acc;
                    }
                    for (row, value) in scratch.iter().enumerate() {
                        let mut k = base;
                        for (t, &tb) in target_bits.iter().enumerate() {
                            if row >> t & 1 == 1 {
                                k |= tb;
                            }
                        }
                        self.amps[k] = *value;
                    }
                }
                let _ = one;
            }
        }
    }

    /// Oracle call with the black box fixed to the input with the given
    /// index: `b ^= x_i`, identity on out-of-range indices.
    pub fn apply_oracle(&mut self, n: usize, x_index: usize) {
        let r = ceil_log2(n);
        let index_mask = (1usize << r) - 1;
        let b_bit = 1usize << r;
        for k in 0..self.amps.len() {
            if k & b_bit == 0 {
                let i = k & index_mask;
                if i < n && x_index >> i & 1 == 1 {
                    self.amps.swap(k, k | b_bit);
                }
            }
        }
    }

    pub fn apply_op(&mut self, op: &CircuitOp, n: usize, x_index: usize) {
        match op {
            CircuitOp::Gate(gate) => self.apply_gate(gate),
            CircuitOp::Oracle => self.apply_oracle(n, x_index),
        }
    }
}

/// Run the network on the black box `x` from the all-zeros initial state.
pub fn simulate(circuit: &Circuit, x: &[bool]) -> Result<StateVector> {
    if x.len() != circuit.n() {
        return Err(Error::Validation(format!(
            "input has {} bits, circuit expects {}",
            x.len(),
            circuit.n()
        )));
    }
    Ok(simulate_index(circuit, index_of_bits(x)))
}

/// As [`simulate`], with the input packed as an index.
pub fn simulate_index(circuit: &Circuit, x_index: usize) -> StateVector {
    let mut state = StateVector::zero_state(circuit.m());
    for op in circuit.ops() {
        state.apply_op(op, circuit.n(), x_index);
    }
    state
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::CircuitBuilder;

    const EPS: f64 = 1e-12;

    #[test]
    fn hadamard_splits_amplitude() {
        let mut b = CircuitBuilder::new();
        b.h(0);
        let c = b.build(1, 1).unwrap();
        let state = simulate(&c, &[false]).unwrap();
        assert!((state.amplitudes()[0].re - FRAC_1_SQRT_2).abs() < EPS);
        assert!((state.amplitudes()[1].re - FRAC_1_SQRT_2).abs() < EPS);
    }

    #[test]
    fn oracle_flips_target_bit() {
        // n = 2, m = 2, initial |i=0, b=0>, x = "10" (x_0 = 1): b flips.
        let mut b = CircuitBuilder::new();
        b.oracle();
        let c = b.build(2, 2).unwrap();
        let state = simulate(&c, &[true, false]).unwrap();
        assert!((state.amplitudes()[0b10].re - 1.0).abs() < EPS);

        // x_0 = 0 leaves the state alone.
        let state = simulate(&c, &[false, true]).unwrap();
        assert!((state.amplitudes()[0b00].re - 1.0).abs() < EPS);
    }

    #[test]
    fn oracle_identity_beyond_n() {
        // n = 3 uses a 2-qubit index register; index 3 is out of range.
        let mut b = CircuitBuilder::new();
        b.x(0).x(1).oracle(); // set index register to 3, then query
        let c = b.build(3, 3).unwrap();
        let state = simulate(&c, &[true, true, true]).unwrap();
        // b must remain 0 even though every real variable is 1.
        assert!((state.amplitudes()[0b011].re - 1.0).abs() < EPS);
    }

    #[test]
    fn norm_preserved_through_random_ops() {
        let mut rng = crate::rng::SplitMix64::new(0x57a7e);
        for _ in 0..20 {
            let c = crate::qsim::random_exact_circuit(2, 4, 2, &mut rng).unwrap();
            let mut state = StateVector::zero_state(4);
            for op in c.ops() {
                state.apply_op(op, 2, 0b01);
                assert!((state.norm_sqr() - 1.0).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn custom_gate_matches_named_equivalent() {
        // CUSTOM X gate equals the named X gate.
        let x_matrix = vec![
            vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        ];
        let mut b1 = CircuitBuilder::new();
        b1.h(0).custom(vec![1], x_matrix).cnot(0, 1);
        let c1 = b1.build(2, 1).unwrap();
        let mut b2 = CircuitBuilder::new();
        b2.h(0).x(1).cnot(0, 1);
        let c2 = b2.build(2, 1).unwrap();
        let s1 = simulate(&c1, &[false]).unwrap();
        let s2 = simulate(&c2, &[false]).unwrap();
        for (a, b) in s1.amplitudes().iter().zip(s2.amplitudes()) {
            assert!((a - b).norm() < EPS);
        }
    }
}
