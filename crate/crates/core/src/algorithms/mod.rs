//! Concrete quantum query algorithms as circuit values or classical
//! drivers around them.
//!
//! All circuits follow the shared register layout: index register in the
//! low qubits, oracle target bit `b` above it, workspace on top, with the
//! output bit last (and the zero-error flag second to last where used).

mod counting;
mod grover;

pub use counting::{counting_circuit, symmetric_eval, CountingOutcome, QuantumCounter, SymmetricEvalRun};
pub use grover::{find_schedule, grover_or, shipped_schedule, GroverOr, GroverRun, GroverSchedule};

use crate::error::{Error, Result};
use crate::qsim::{ceil_log2, Circuit, CircuitBuilder};

/// One-query circuit computing `x_i xor x_j` exactly by phase kickback:
/// query the superposition of indices `i` and `j` against a target bit in
/// the `|0> - |1>` state, then read the relative phase back out.
pub fn xor_circuit(n: usize, i: usize, j: usize) -> Result<Circuit> {
    if i == j {
        return Err(Error::Parameter("xor gadget needs two distinct indices".into()));
    }
    if i >= n || j >= n {
        return Err(Error::Parameter(format!(
            "indices {i}, {j} out of range for n = {n}"
        )));
    }
    let r = ceil_log2(n).max(1);
    let b = r;
    let out = r + 1;
    let m = r + 2;

    // Pick the branch qubit p at a bit where i and j differ, oriented so
    // the p = 0 branch carries `lo` and the p = 1 branch carries `hi`.
    let p = (i ^ j).trailing_zeros() as usize;
    let (lo, hi) = if i >> p & 1 == 0 { (i, j) } else { (j, i) };

    let mut builder = CircuitBuilder::new();
    builder.x(b).h(b); // b into |->
    builder.h(p);
    // Map the two p-branches onto |lo> and |hi>.
    let mut mapping: Vec<(bool, usize)> = Vec::new(); // (is_cnot_from_p, qubit)
    for q in 0..r {
        if q == p {
            continue;
        }
        let lo_q = lo >> q & 1 == 1;
        let hi_q = hi >> q & 1 == 1;
        match (lo_q, hi_q) {
            (true, true) => mapping.push((false, q)),
            (false, true) => mapping.push((true, q)),
            (true, false) => {
                mapping.push((false, q));
                mapping.push((true, q));
            }
            (false, false) => {}
        }
    }
    for &(is_cnot, q) in &mapping {
        if is_cnot {
            builder.cnot(p, q);
        } else {
            builder.x(q);
        }
    }
    builder.oracle();
    for &(is_cnot, q) in mapping.iter().rev() {
        if is_cnot {
            builder.cnot(p, q);
        } else {
            builder.x(q);
        }
    }
    builder.h(p);
    builder.cnot(p, out);
    builder.h(b).x(b); // restore b to |0>
    builder.build(m, n)
}

/// Exact parity circuit using `ceil(n/2)` queries: one phase-kickback
/// query per variable pair, accumulating each pair's XOR into index qubit
/// 0, plus one raw query for the leftover variable when `n` is odd.
pub fn parity_circuit(n: usize) -> Result<Circuit> {
    if n == 0 {
        return Err(Error::Parameter("variable count must be at least 1".into()));
    }
    let r = ceil_log2(n);
    if n == 1 {
        // Single raw query copied to the output bit.
        let mut builder = CircuitBuilder::new();
        builder.oracle().cnot(0, 1);
        return builder.build(2, 1);
    }
    let b = r;
    let out = r + 1;
    let m = r + 2;
    let mut builder = CircuitBuilder::new();

    if n % 2 == 1 {
        // Raw query for x_{n-1}: set the index register, query, copy out,
        // reset the index, and clear b again (b equals the copied bit).
        let leftover = n - 1;
        for q in 0..r {
            if leftover >> q & 1 == 1 {
                builder.x(q);
            }
        }
        builder.oracle();
        builder.cnot(b, out);
        for q in 0..r {
            if leftover >> q & 1 == 1 {
                builder.x(q);
            }
        }
        builder.cnot(out, b);
    }

    builder.x(b).h(b); // b into |->
    for pair in 0..n / 2 {
        // Pair (2k, 2k+1) differs in index bit 0; the higher index bits
        // spell out k. Index qubit 0 enters holding the parity collected
        // so far and leaves holding it XORed with this pair's value.
        for q in 1..r {
            if pair >> (q - 1) & 1 == 1 {
                builder.x(q);
            }
        }
        builder.h(0);
        builder.oracle();
        builder.h(0);
        for q in 1..r {
            if pair >> (q - 1) & 1 == 1 {
                builder.x(q);
            }
        }
    }
    builder.cnot(0, out);
    builder.h(b).x(b);
    builder.build(m, n)
}

/// Classical-style zero-error circuit for OR with `n` queries: read every
/// variable into workspace (as prefix XORs of the running target bit,
/// which determine the input), then OR the workspace into the output bit
/// and raise the "conclusive" flag. Reference circuit for the witness
/// extraction machinery.
pub fn or_zero_error_circuit(n: usize) -> Result<Circuit> {
    if n == 0 {
        return Err(Error::Parameter("variable count must be at least 1".into()));
    }
    if n > 8 {
        return Err(Error::Capability(
            "the reference OR circuit keeps a workspace bit per variable; n <= 8".into(),
        ));
    }
    if n == 1 {
        // Layout [b, flag, out]: outputs (1, x_0).
        let mut builder = CircuitBuilder::new();
        builder.oracle().cnot(0, 2).x(1);
        return builder.build(3, 1);
    }
    let r = ceil_log2(n);
    let b = r;
    let w0 = r + 1; // workspace bits w_0 .. w_{n-1}
    let anc0 = w0 + n; // AND-cascade ancillas (n - 2 of them)
    let flag = anc0 + n.saturating_sub(2);
    let out = flag + 1;
    let m = out + 1;

    let mut builder = CircuitBuilder::new();
    for i in 0..n {
        for q in 0..r {
            if i >> q & 1 == 1 {
                builder.x(q);
            }
        }
        builder.oracle(); // b now holds x_0 xor .. xor x_i
        builder.cnot(b, w0 + i);
        for q in 0..r {
            if i >> q & 1 == 1 {
                builder.x(q);
            }
        }
    }
    // The w bits are zero exactly when every variable is zero, so
    // OR(x) = OR(w). Compute it as NOT(AND of the negated w bits).
    for i in 0..n {
        builder.x(w0 + i);
    }
    builder.x(out);
    if n == 2 {
        builder.ccnot(w0, w0 + 1, out);
    } else {
        builder.ccnot(w0, w0 + 1, anc0);
        for i in 2..n - 1 {
            builder.ccnot(anc0 + i - 2, w0 + i, anc0 + i - 1);
        }
        builder.ccnot(anc0 + n - 3, w0 + n - 1, out);
    }
    builder.x(flag);
    builder.build(m, n)
}
