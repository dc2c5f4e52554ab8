//! Cross-module properties tying the simulator, the polynomial module and
//! the constructed algorithms together.

use querylab_core::algorithms::{
    grover_or, or_zero_error_circuit, parity_circuit, xor_circuit,
};
use querylab_core::boolfn::{Family, TruthTable};
use querylab_core::polynomial::{
    default_eps, interpolate, symmetric_approx_degree, symmetrize, Rat,
};
use querylab_core::qsim::{
    acceptance_polynomial, check_bounded_error, check_exact, check_zero_error, Circuit,
    CircuitOp, GateKind, GateOp,
};
use num_traits::Zero;

fn family(f: Family, n: usize) -> TruthTable {
    TruthTable::from_family(f, n, None).unwrap()
}

/// Append an X on the flag qubit, turning an exact circuit whose flag
/// qubit ends in |0> into an always-conclusive zero-error circuit.
fn with_conclusive_flag(c: &Circuit) -> Circuit {
    let mut ops: Vec<CircuitOp> = c.ops().to_vec();
    ops.push(CircuitOp::Gate(GateOp {
        kind: GateKind::X,
        targets: vec![c.m() - 2],
        matrix: None,
    }));
    Circuit::new(c.m(), c.n(), ops).unwrap()
}

/// For a circuit passing the zero-error check on a non-constant symmetric
/// function, the symmetrized probability-of-answer-1 polynomial must be
/// non-constant, vanish at every weight where the function is 0, and have
/// degree at least the number of such weights.
#[test]
fn symmetrized_acceptance_vanishes_on_zero_weights() {
    let cases: Vec<(Circuit, TruthTable)> = vec![
        (or_zero_error_circuit(2).unwrap(), family(Family::Or, 2)),
        (or_zero_error_circuit(3).unwrap(), family(Family::Or, 3)),
        (or_zero_error_circuit(4).unwrap(), family(Family::Or, 4)),
        (
            with_conclusive_flag(&parity_circuit(4).unwrap()),
            family(Family::Parity, 4),
        ),
    ];
    for (circuit, f) in cases {
        let n = f.n();
        assert!(check_zero_error(&circuit, &f).unwrap().pass);
        let flag = circuit.flag_qubit().unwrap();
        let out = circuit.output_qubit();
        // Probability of a conclusive answer 1.
        let accept = acceptance_polynomial(&circuit, |k| {
            k >> flag & 1 == 1 && k >> out & 1 == 1
        })
        .unwrap();
        let q = symmetrize(&accept.to_multilinear().unwrap());
        assert!(!q.is_zero());
        let profile = f.symmetric_profile().unwrap();
        let zero_weights: Vec<usize> =
            (0..=n).filter(|&k| !profile.value_at(k)).collect();
        for &k in &zero_weights {
            assert!(q.evaluate_int(k).is_zero(), "n={n} weight {k}");
        }
        // Non-constant with that many zeros forces the degree up.
        assert!(
            q.degree() >= zero_weights.len(),
            "n={n}: degree {} < {}",
            q.degree(),
            zero_weights.len()
        );
    }
}

/// Exact circuits obey the polynomial lower bound
/// `2 * queries >= deg(f)`; the parity construction meets it with
/// equality.
#[test]
fn exact_circuits_respect_degree_lower_bound() {
    for n in [2usize, 4, 6, 8] {
        let c = parity_circuit(n).unwrap();
        let deg = interpolate(&family(Family::Parity, n)).degree();
        assert!(2 * c.query_count() >= deg);
        assert_eq!(2 * c.query_count(), deg, "parity is tight");
    }
    for (n, i, j) in [(2usize, 0usize, 1usize), (4, 1, 3)] {
        let c = xor_circuit(n, i, j).unwrap();
        let f = TruthTable::from_fn(n, |x| (x >> i & 1) ^ (x >> j & 1) == 1).unwrap();
        assert!(2 * c.query_count() >= interpolate(&f).degree());
    }
    for n in 1..=4usize {
        let c = or_zero_error_circuit(n).unwrap();
        assert!(2 * c.query_count() >= interpolate(&family(Family::Or, n)).degree());
    }
}

/// Bounded-error circuits are consistent with the approximate-degree
/// bound: `adeg(f) <= 2 * queries`.
#[test]
fn bounded_circuits_respect_approximate_degree() {
    for n in [4usize, 8] {
        let driver = grover_or(n, None).unwrap();
        let profile = family(Family::Or, n).symmetric_profile().unwrap();
        let adeg = symmetric_approx_degree(&profile, &default_eps()).unwrap();
        let queries = driver.total_queries();
        assert!(
            adeg <= 2 * queries,
            "n={n}: adeg {adeg} > 2 * {queries}"
        );
    }
}

/// An exact circuit's acceptance polynomial represents the function it
/// computes, with exact ring/rational equality.
#[test]
fn exact_acceptance_polynomials_represent() {
    let cases: Vec<(Circuit, TruthTable)> = vec![
        (xor_circuit(2, 0, 1).unwrap(), family(Family::Parity, 2)),
        (parity_circuit(4).unwrap(), family(Family::Parity, 4)),
        (parity_circuit(6).unwrap(), family(Family::Parity, 6)),
        (or_zero_error_circuit(3).unwrap(), family(Family::Or, 3)),
    ];
    for (circuit, f) in cases {
        assert!(check_exact(&circuit, &f).unwrap().pass);
        let out = circuit.output_qubit();
        let p = acceptance_polynomial(&circuit, |k| k >> out & 1 == 1).unwrap();
        assert_eq!(p.to_multilinear().unwrap(), interpolate(&f));
    }
}

/// The exact parity circuit also passes the weaker semantics: an exact
/// computation is bounded-error for free.
#[test]
fn exact_implies_bounded() {
    let c = parity_circuit(4).unwrap();
    let parity4 = family(Family::Parity, 4);
    let bounded = check_bounded_error(&c, &parity4, 2.0 / 3.0).unwrap();
    assert!(bounded.pass);
    assert_eq!(bounded.min_success, 1.0);
}

/// A single Grover round is bounded-error at best: the exact checker must
/// reject it for OR.
#[test]
fn grover_round_is_not_exact() {
    let driver = grover_or(4, None).unwrap();
    let round = &driver.round_circuits()[0];
    let or4 = family(Family::Or, 4);
    // The round circuit's last qubit is not a meaningful output bit, but
    // exactness must fail regardless of how the output is read.
    assert!(!check_exact(round, &or4).unwrap().pass);
}

/// The exact xor gadget with its conclusive flag hardwired to 1 passes
/// the zero-error check (its flag qubit ends in |0>, so the X makes every
/// answer conclusive, and exactness implies zero-error).
#[test]
fn flag_wrapped_xor_gadget_is_zero_error() {
    let gadget = xor_circuit(2, 0, 1).unwrap();
    let wrapped = with_conclusive_flag(&gadget);
    let parity2 = family(Family::Parity, 2);
    let r = check_zero_error(&wrapped, &parity2).unwrap();
    assert!(r.pass);
    assert_eq!(r.max_inconclusive, 0.0);
}

/// The wrapped-flag trick on a non-exact circuit must fail the zero-error
/// check: claiming certainty is only sound for exact circuits.
#[test]
fn hardwired_flag_on_noisy_circuit_fails() {
    // A circuit that ignores the oracle and guesses by coin flip.
    let mut builder = querylab_core::qsim::CircuitBuilder::new();
    builder.h(3); // random output bit
    let c = builder.build(4, 2).unwrap();
    let wrapped = with_conclusive_flag(&c);
    let or2 = family(Family::Or, 2);
    let r = check_zero_error(&wrapped, &or2).unwrap();
    assert!(!r.pass);
    assert!(r.max_wrong > 0.1);
}

/// LP sanity across modules: a degree-1 rational witness for AND_2 stays
/// within 1/3 everywhere (re-evaluated through the polynomial module).
#[test]
fn lp_witness_reevaluates_exactly() {
    use querylab_core::polynomial::{lp_min_error, LpWitness};
    let and2 = family(Family::And, 2);
    let r = lp_min_error(&and2, 1).unwrap();
    let LpWitness::Multilinear(p) = r.witness.unwrap() else {
        panic!("expected multilinear witness")
    };
    for idx in 0..4usize {
        let fx = if and2.get(idx) { Rat::new(1.into(), 1.into()) } else { Rat::zero() };
        let dev = p.evaluate_index(idx) - fx;
        let dev = if dev < Rat::zero() { -dev } else { dev };
        assert!(dev <= r.min_error);
    }
}
