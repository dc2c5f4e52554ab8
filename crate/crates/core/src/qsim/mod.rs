//! Quantum query networks: alternating unitary layers and oracle calls.
//!
//! Register layout, shared by the oracle, the checkers and the file
//! format: the index register is the low `ceil(log2 n)` qubits
//! (little-endian within the index), the oracle target bit `b` sits right
//! above it, and everything else is workspace. Basis state `k` assigns
//! qubit `q` the bit `(k >> q) & 1`. The output bit of a network is its
//! last qubit `m-1`; the zero-error output pair is `(m-2, m-1)` with
//! qubit `m-2` read as the "conclusive" flag.
//!
//! The oracle maps `|i, b, z>` to `|i, b xor x_i, z>`. When `n` is not a
//! power of two the index register still has `ceil(log2 n)` qubits and
//! the oracle acts as the identity on out-of-range indices, which keeps
//! it unitary and the amplitude-degree bounds intact.

mod check;
mod ring;
mod state;
mod symbolic;

pub use check::{
    check_bounded_error, check_exact, check_zero_error, BoundedErrorCheck, CheckReport,
    ExactCheck, Semantics, ZeroErrorCheck, TOL,
};
pub use ring::RingElem;
pub use state::{simulate, simulate_index, StateVector};
pub use symbolic::{
    acceptance_polynomial, symbolic_run, zero_error_witness_poly, RingPoly, SymbolicState,
    ZeroErrorWitness,
};

use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Statevectors hold `2^m` amplitudes; larger networks are out of scope.
pub const MAX_QUBITS: usize = 22;

pub fn ceil_log2(n: usize) -> usize {
    debug_assert!(n >= 1);
    (usize::BITS - (n - 1).leading_zeros()) as usize
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    H,
    X,
    Z,
    S,
    T,
    Cnot,
    Ccnot,
    Cz,
    Custom,
}

impl GateKind {
    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::X => "X",
            GateKind::Z => "Z",
            GateKind::S => "S",
            GateKind::T => "T",
            GateKind::Cnot => "CNOT",
            GateKind::Ccnot => "CCNOT",
            GateKind::Cz => "CZ",
            GateKind::Custom => "CUSTOM",
        }
    }

    fn parse(name: &str) -> Result<Self> {
        Ok(match name {
            "H" => GateKind::H,
            "X" => GateKind::X,
            "Z" => GateKind::Z,
            "S" => GateKind::S,
            "T" => GateKind::T,
            "CNOT" => GateKind::Cnot,
            "CCNOT" => GateKind::Ccnot,
            "CZ" => GateKind::Cz,
            "CUSTOM" => GateKind::Custom,
            other => return Err(Error::Validation(format!("unknown gate '{other}'"))),
        })
    }

    fn arity(self) -> Option<usize> {
        match self {
            GateKind::H | GateKind::X | GateKind::Z | GateKind::S | GateKind::T => Some(1),
            GateKind::Cnot | GateKind::Cz => Some(2),
            GateKind::Ccnot => Some(3),
            GateKind::Custom => None,
        }
    }

    /// True for the gates whose entries lie in the exact coefficient ring.
    pub fn is_exact(self) -> bool {
        self != GateKind::Custom
    }
}

/// A gate application. `matrix` is set exactly for CUSTOM gates: a
/// `2^k x 2^k` unitary over the `k` listed targets, with target 0 as the
/// least significant bit of the matrix index.
#[derive(Clone, Debug, PartialEq)]
pub struct GateOp {
    pub kind: GateKind,
    pub targets: Vec<usize>,
    pub matrix: Option<Vec<Vec<Complex64>>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum CircuitOp {
    Gate(GateOp),
    Oracle,
}

/// A quantum query network over `m` qubits and `n` oracle variables.
/// Immutable once built; validation happens at construction.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    m: usize,
    n: usize,
    ops: Vec<CircuitOp>,
}

fn unitarity_defect(matrix: &[Vec<Complex64>]) -> f64 {
    let dim = matrix.len();
    let mut worst = 0.0f64;
    for r in 0..dim {
        for c in 0..dim {
            // (U U^dagger)[r][c]
            let acc: Complex64 = matrix[r]
                .iter()
                .zip(&matrix[c])
                .map(|(a, b)| a * b.conj())
                .sum();
            let want = if r == c { 1.0 } else { 0.0 };
            worst = worst.max((acc - Complex64::new(want, 0.0)).norm());
        }
    }
    worst
}

impl Circuit {
    pub fn new(m: usize, n: usize, ops: Vec<CircuitOp>) -> Result<Self> {
        if m == 0 || m > MAX_QUBITS {
            return Err(Error::Validation(format!(
                "qubit count must be in 1..={MAX_QUBITS}, got {m}"
            )));
        }
        if n == 0 || n > crate::boolfn::MAX_VARS {
            return Err(Error::Validation(format!(
                "oracle variable count must be in 1..={}, got {n}",
                crate::boolfn::MAX_VARS
            )));
        }
        let needs_oracle_room = ops.iter().any(|op| matches!(op, CircuitOp::Oracle));
        if needs_oracle_room && m < ceil_log2(n) + 1 {
            return Err(Error::Validation(format!(
                "oracle on n = {n} variables needs at least {} qubits, circuit has {m}",
                ceil_log2(n) + 1
            )));
        }
        for (pos, op) in ops.iter().enumerate() {
            let CircuitOp::Gate(gate) = op else { continue };
            let k = gate.targets.len();
            if let Some(arity) = gate.kind.arity() {
                if k != arity {
                    return Err(Error::Validation(format!(
                        "op {pos}: {} takes {arity} target(s), got {k}",
                        gate.kind.name()
                    )));
                }
            }
            let mut seen = vec![false; m];
            for &t in &gate.targets {
                if t >= m {
                    return Err(Error::Validation(format!(
                        "op {pos}: target qubit {t} out of range for m = {m}"
                    )));
                }
                if std::mem::replace(&mut seen[t], true) {
                    return Err(Error::Validation(format!(
                        "op {pos}: duplicate target qubit {t}"
                    )));
                }
            }
            match (gate.kind, &gate.matrix) {
                (GateKind::Custom, Some(matrix)) => {
                    if k == 0 || k > 10 {
                        return Err(Error::Validation(format!(
                            "op {pos}: CUSTOM gates take 1..=10 targets, got {k}"
                        )));
                    }
                    let dim = 1usize << k;
                    if matrix.len() != dim || matrix.iter().any(|row| row.len() != dim) {
                        return Err(Error::Validation(format!(
                            "op {pos}: CUSTOM matrix must be {dim}x{dim}"
                        )));
                    }
                    let defect = unitarity_defect(matrix);
                    if defect > check::TOL {
                        return Err(Error::Validation(format!(
                            "op {pos}: CUSTOM matrix deviates from unitarity by {defect:.3e}"
                        )));
                    }
                }
                (GateKind::Custom, None) => {
                    return Err(Error::Validation(format!(
                        "op {pos}: CUSTOM gate needs a matrix"
                    )));
                }
                (_, Some(_)) => {
                    return Err(Error::Validation(format!(
                        "op {pos}: only CUSTOM gates carry a matrix"
                    )));
                }
                _ => {}
            }
        }
        Ok(Circuit { m, n, ops })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ops(&self) -> &[CircuitOp] {
        &self.ops
    }

    /// Width of the index register.
    pub fn index_qubits(&self) -> usize {
        ceil_log2(self.n)
    }

    /// Qubit holding the oracle target bit `b`.
    pub fn oracle_bit(&self) -> usize {
        self.index_qubits()
    }

    /// The output bit: the last qubit.
    pub fn output_qubit(&self) -> usize {
        self.m - 1
    }

    /// The zero-error "conclusive" flag: second-to-last qubit.
    pub fn flag_qubit(&self) -> Result<usize> {
        if self.m < 2 {
            return Err(Error::Validation(
                "zero-error semantics needs at least two qubits".into(),
            ));
        }
        Ok(self.m - 2)
    }

    /// Number of oracle calls.
    pub fn query_count(&self) -> usize {
        self.ops
            .iter()
            .filter(|op| matches!(op, CircuitOp::Oracle))
            .count()
    }

    pub fn has_custom_gates(&self) -> bool {
        self.ops.iter().any(|op| {
            matches!(op, CircuitOp::Gate(g) if g.kind == GateKind::Custom)
        })
    }
}

/// Incremental circuit construction; validation happens once at `build`.
#[derive(Clone, Debug, Default)]
pub struct CircuitBuilder {
    ops: Vec<CircuitOp>,
}

impl CircuitBuilder {
    pub fn new() -> Self {
        CircuitBuilder::default()
    }

    fn gate(&mut self, kind: GateKind, targets: Vec<usize>) -> &mut Self {
        self.ops.push(CircuitOp::Gate(GateOp {
            kind,
            targets,
            matrix: None,
        }));
        self
    }

    pub fn h(&mut self, t: usize) -> &mut Self {
        self.gate(GateKind::H, vec![t])
    }

    pub fn x(&mut self, t: usize) -> &mut Self {
        self.gate(GateKind::X, vec![t])
    }

    pub fn z(&mut self, t: usize) -> &mut Self {
        self.gate(GateKind::Z, vec![t])
    }

    pub fn s(&mut self, t: usize) -> &mut Self {
        self.gate(GateKind::S, vec![t])
    }

    pub fn t(&mut self, t: usize) -> &mut Self {
        self.gate(GateKind::T, vec![t])
    }

    pub fn cnot(&mut self, control: usize, target: usize) -> &mut Self {
        self.gate(GateKind::Cnot, vec![control, target])
    }

    pub fn ccnot(&mut self, c1: usize, c2: usize, target: usize) -> &mut Self {
        self.gate(GateKind::Ccnot, vec![c1, c2, target])
    }

    pub fn cz(&mut self, a: usize, b: usize) -> &mut Self {
        self.gate(GateKind::Cz, vec![a, b])
    }

    pub fn custom(&mut self, targets: Vec<usize>, matrix: Vec<Vec<Complex64>>) -> &mut Self {
        self.ops.push(CircuitOp::Gate(GateOp {
            kind: GateKind::Custom,
            targets,
            matrix: Some(matrix),
        }));
        self
    }

    pub fn oracle(&mut self) -> &mut Self {
        self.ops.push(CircuitOp::Oracle);
        self
    }

    pub fn build(&self, m: usize, n: usize) -> Result<Circuit> {
        Circuit::new(m, n, self.ops.clone())
    }
}

/// Random circuit over the exact gate set with the requested number of
/// oracle calls, for the amplitude-degree audits. Gates and targets are
/// drawn uniformly; each oracle call is preceded and followed by a short
/// random gate layer.
pub fn random_exact_circuit(
    n: usize,
    m: usize,
    oracle_calls: usize,
    rng: &mut SplitMix64,
) -> Result<Circuit> {
    let mut builder = CircuitBuilder::new();
    let random_layer = |builder: &mut CircuitBuilder, rng: &mut SplitMix64| {
        let gates = 1 + rng.next_below(4) as usize;
        for _ in 0..gates {
            match rng.next_below(8) {
                0 => builder.h(rng.next_below(m as u64) as usize),
                1 => builder.x(rng.next_below(m as u64) as usize),
                2 => builder.z(rng.next_below(m as u64) as usize),
                3 => builder.s(rng.next_below(m as u64) as usize),
                4 => builder.t(rng.next_below(m as u64) as usize),
                5 if m >= 2 => {
                    let a = rng.next_below(m as u64) as usize;
                    let mut b = rng.next_below(m as u64) as usize;
                    while b == a {
                        b = rng.next_below(m as u64) as usize;
                    }
                    builder.cnot(a, b)
                }
                6 if m >= 2 => {
                    let a = rng.next_below(m as u64) as usize;
                    let mut b = rng.next_below(m as u64) as usize;
                    while b == a {
                        b = rng.next_below(m as u64) as usize;
                    }
                    builder.cz(a, b)
                }
                _ if m >= 3 => {
                    let a = rng.next_below(m as u64) as usize;
                    let mut b = rng.next_below(m as u64) as usize;
                    while b == a {
                        b = rng.next_below(m as u64) as usize;
                    }
                    let mut c = rng.next_below(m as u64) as usize;
                    while c == a || c == b {
                        c = rng.next_below(m as u64) as usize;
                    }
                    builder.ccnot(a, b, c)
                }
                _ => builder.h(rng.next_below(m as u64) as usize),
            };
        }
    };
    random_layer(&mut builder, rng);
    for _ in 0..oracle_calls {
        builder.oracle();
        random_layer(&mut builder, rng);
    }
    builder.build(m, n)
}

// Circuit JSON:
//   {"m": int, "n": int, "ops": [
//       {"gate": "H", "targets": [0]}
//     | {"gate": "CUSTOM", "targets": [...], "matrix": [[[re, im], ...], ...]}
//     | {"oracle": true}, ...]}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum OpRepr {
    Oracle {
        oracle: bool,
    },
    Gate {
        gate: String,
        targets: Vec<usize>,
        #[serde(skip_serializing_if = "Option::is_none")]
        matrix: Option<Vec<Vec<[f64; 2]>>>,
    },
}

impl Serialize for Circuit {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let ops: Vec<OpRepr> = self
            .ops
            .iter()
            .map(|op| match op {
                CircuitOp::Oracle => OpRepr::Oracle { oracle: true },
                CircuitOp::Gate(g) => OpRepr::Gate {
                    gate: g.kind.name().to_string(),
                    targets: g.targets.clone(),
                    matrix: g.matrix.as_ref().map(|m| {
                        m.iter()
                            .map(|row| row.iter().map(|z| [z.re, z.im]).collect())
                            .collect()
                    }),
                },
            })
            .collect();
        let mut s = serializer.serialize_struct("Circuit", 3)?;
        s.serialize_field("m", &self.m)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("ops", &ops)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for Circuit {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            m: usize,
            n: usize,
            ops: Vec<OpRepr>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let mut ops = Vec::with_capacity(repr.ops.len());
        for (pos, op) in repr.ops.into_iter().enumerate() {
            match op {
                OpRepr::Oracle { oracle } => {
                    if !oracle {
                        return Err(D::Error::custom(format!(
                            "op {pos}: \"oracle\" must be true when present"
                        )));
                    }
                    ops.push(CircuitOp::Oracle);
                }
                OpRepr::Gate {
                    gate,
                    targets,
                    matrix,
                } => {
                    let kind = GateKind::parse(&gate).map_err(D::Error::custom)?;
                    let matrix = matrix.map(|m| {
                        m.into_iter()
                            .map(|row| {
                                row.into_iter()
                                    .map(|[re, im]| Complex64::new(re, im))
                                    .collect()
                            })
                            .collect()
                    });
                    ops.push(CircuitOp::Gate(GateOp {
                        kind,
                        targets,
                        matrix,
                    }));
                }
            }
        }
        Circuit::new(repr.m, repr.n, ops).map_err(D::Error::custom)
    }
}
