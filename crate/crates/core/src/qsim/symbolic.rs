//! Symbolic execution: amplitudes as exact multilinear polynomials in the
//! oracle variables.
//!
//! After `T` oracle calls every amplitude is a multilinear polynomial of
//! degree at most `T` in `x_0..x_{n-1}`; the probability of any basis-state
//! event is therefore a real multilinear polynomial of degree at most `2T`.
//! Tracking the coefficients in the exact ring keeps those degree claims
//! sound: no floating-point "zero" threshold is involved.

use super::ring::RingElem;
use super::{ceil_log2, Circuit, CircuitOp, GateKind, GateOp};
use crate::boolfn::TruthTable;
use crate::error::{Error, Result};
use crate::polynomial::{MultilinearPoly, Rat};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

/// Multilinear polynomial with [`RingElem`] coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct RingPoly {
    n: usize,
    terms: BTreeMap<u32, RingElem>,
}

impl RingPoly {
    pub fn zero(n: usize) -> Self {
        RingPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, value: RingElem) -> Self {
        let mut p = Self::zero(n);
        if !value.is_zero() {
            p.terms.insert(0, value);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn coeff(&self, mask: u32) -> RingElem {
        self.terms.get(&mask).copied().unwrap_or(RingElem::ZERO)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &RingElem)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    fn insert(&mut self, mask: u32, value: RingElem) {
        if value.is_zero() {
            self.terms.remove(&mask);
        } else {
            self.terms.insert(mask, value);
        }
    }

    pub fn add(&self, other: &RingPoly) -> RingPoly {
        let mut out = self.clone();
        for (&mask, &c) in &other.terms {
            out.insert(mask, out.coeff(mask) + c);
        }
        out
    }

    pub fn sub(&self, other: &RingPoly) -> RingPoly {
        let mut out = self.clone();
        for (&mask, &c) in &other.terms {
            out.insert(mask, out.coeff(mask) - c);
        }
        out
    }

    pub fn neg(&self) -> RingPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -*c;
        }
        out
    }

    pub fn scale(&self, factor: RingElem) -> RingPoly {
        if factor.is_zero() {
            return RingPoly::zero(self.n);
        }
        let mut out = RingPoly::zero(self.n);
        for (&mask, &c) in &self.terms {
            out.insert(mask, c * factor);
        }
        out
    }

    /// Multiply by `x_i`, reducing `x_i^2` to `x_i`.
    pub fn mul_var(&self, i: usize) -> RingPoly {
        let bit = 1u32 << i;
        let mut out = RingPoly::zero(self.n);
        for (&mask, &c) in &self.terms {
            out.insert(mask | bit, out.coeff(mask | bit) + c);
        }
        out
    }

    /// Multilinear product.
    pub fn mul(&self, other: &RingPoly) -> RingPoly {
        let mut out = RingPoly::zero(self.n);
        for (&ma, &ca) in &self.terms {
            for (&mb, &cb) in &other.terms {
                let mask = ma | mb;
                out.insert(mask, out.coeff(mask) + ca * cb);
            }
        }
        out
    }

    pub fn conj(&self) -> RingPoly {
        let mut out = RingPoly::zero(self.n);
        for (&mask, c) in &self.terms {
            out.insert(mask, c.conj());
        }
        out
    }

    /// Coefficient-wise real part.
    pub fn real_part(&self) -> RingPoly {
        let mut out = RingPoly::zero(self.n);
        for (&mask, c) in &self.terms {
            let (a, b, _, _, e) = c.parts();
            let re = RingElem::ZERO + reconstruct(a, b, 0, 0, e);
            out.insert(mask, re);
        }
        out
    }

    /// Coefficient-wise imaginary part (as a real polynomial).
    pub fn imag_part(&self) -> RingPoly {
        let mut out = RingPoly::zero(self.n);
        for (&mask, c) in &self.terms {
            let (_, _, cc, d, e) = c.parts();
            let im = RingElem::ZERO + reconstruct(cc, d, 0, 0, e);
            out.insert(mask, im);
        }
        out
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(|c| c.is_real())
    }

    /// Exact evaluation at a Boolean point.
    pub fn evaluate_index(&self, index: usize) -> RingElem {
        let idx = index as u32;
        let mut acc = RingElem::ZERO;
        for (&mask, &c) in &self.terms {
            if mask & !idx == 0 {
                acc = acc + c;
            }
        }
        acc
    }

    pub fn evaluate_complex(&self, index: usize) -> Complex64 {
        self.evaluate_index(index).to_complex()
    }

    /// Convert to an exact-rational multilinear polynomial. Fails when any
    /// coefficient has an imaginary or irrational (`sqrt 2`) component.
    pub fn to_multilinear(&self) -> Result<MultilinearPoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (&mask, c) in &self.terms {
            let (a, b, cc, d, e) = c.parts();
            if cc != 0 || d != 0 {
                return Err(Error::Inconsistency(format!(
                    "coefficient of mask {mask:#x} has an imaginary part"
                )));
            }
            // (a + b sqrt2)/sqrt2^e is rational iff b = 0 and e is even
            // (canonical form already rules out a = 0 with e odd cases
            // reducing further).
            if b != 0 || e % 2 == 1 {
                return Err(Error::Inconsistency(format!(
                    "coefficient of mask {mask:#x} is irrational"
                )));
            }
            let denom: BigInt = BigInt::one() << (e / 2);
            terms.push((mask, Rat::new(BigInt::from(a), denom)));
        }
        MultilinearPoly::from_terms(self.n, terms)
    }
}

fn reconstruct(a: i128, b: i128, c: i128, d: i128, e: u32) -> RingElem {
    // Rebuild a ring element from raw parts (normalizing).
    let sqrt2 = RingElem::inv_sqrt2() * RingElem::from_int(2); // sqrt2 = 2/sqrt2
    let from_i128 = |v: i128| -> RingElem {
        // Components stay far below i64 range at desk scale.
        debug_assert!(v.abs() <= i64::MAX as i128);
        RingElem::from_int(v as i64)
    };
    let mut num = from_i128(a) + from_i128(b) * sqrt2
        + RingElem::I * (from_i128(c) + from_i128(d) * sqrt2);
    for _ in 0..e {
        num = num * RingElem::inv_sqrt2();
    }
    num
}

/// Per-basis-state amplitude polynomials after running the network.
#[derive(Clone, Debug)]
pub struct SymbolicState {
    n: usize,
    m: usize,
    amps: Vec<RingPoly>,
}

impl SymbolicState {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn amplitude(&self, k: usize) -> &RingPoly {
        &self.amps[k]
    }

    pub fn amplitudes(&self) -> &[RingPoly] {
        &self.amps
    }

    pub fn max_degree(&self) -> usize {
        self.amps.iter().map(|p| p.degree()).max().unwrap_or(0)
    }

    /// Substitute a concrete input, yielding the numeric statevector.
    pub fn eval_state(&self, x_index: usize) -> Vec<Complex64> {
        self.amps
            .iter()
            .map(|p| p.evaluate_complex(x_index))
            .collect()
    }
}

fn apply_gate_symbolic(amps: &mut [RingPoly], gate: &GateOp) -> Result<()> {
    match gate.kind {
        GateKind::H => {
            let s = RingElem::inv_sqrt2();
            let bit = 1usize << gate.targets[0];
            for k in 0..amps.len() {
                if k & bit == 0 {
                    let a = amps[k].clone();
                    let b = amps[k | bit].clone();
                    amps[k] = a.add(&b).scale(s);
                    amps[k | bit] = a.sub(&b).scale(s);
                }
            }
        }
        GateKind::X => {
            let bit = 1usize << gate.targets[0];
            for k in 0..amps.len() {
                if k & bit == 0 {
                    amps.swap(k, k | bit);
                }
            }
        }
        GateKind::Z => {
            let bit = 1usize << gate.targets[0];
            for (k, p) in amps.iter_mut().enumerate() {
                if k & bit != 0 {
                    *p = p.neg();
                }
            }
        }
        GateKind::S => {
            let bit = 1usize << gate.targets[0];
            for (k, p) in amps.iter_mut().enumerate() {
                if k & bit != 0 {
                    *p = p.scale(RingElem::I);
                }
            }
        }
        GateKind::T => {
            let bit = 1usize << gate.targets[0];
            let w = RingElem::omega();
            for (k, p) in amps.iter_mut().enumerate() {
                if k & bit != 0 {
                    *p = p.scale(w);
                }
            }
        }
        GateKind::Cnot => {
            let c = 1usize << gate.targets[0];
            let t = 1usize << gate.targets[1];
            for k in 0..amps.len() {
                if k & c != 0 && k & t == 0 {
                    amps.swap(k, k | t);
                }
            }
        }
        GateKind::Ccnot => {
            let c1 = 1usize << gate.targets[0];
            let c2 = 1usize << gate.targets[1];
            let t = 1usize << gate.targets[2];
            for k in 0..amps.len() {
                if k & c1 != 0 && k & c2 != 0 && k & t == 0 {
                    amps.swap(k, k | t);
                }
            }
        }
        GateKind::Cz => {
            let a = 1usize << gate.targets[0];
            let b = 1usize << gate.targets[1];
            for (k, p) in amps.iter_mut().enumerate() {
                if k & a != 0 && k & b != 0 {
                    *p = p.neg();
                }
            }
        }
        GateKind::Custom => {
            return Err(Error::Capability(
                "CUSTOM gates have entries outside the exact ring; \
                 symbolic mode supports H, X, Z, S, T, CNOT, CCNOT, CZ only"
                    .into(),
            ));
        }
    }
    Ok(())
}

fn apply_oracle_symbolic(amps: &mut [RingPoly], n: usize) {
    let r = ceil_log2(n);
    let index_mask = (1usize << r) - 1;
    let b_bit = 1usize << r;
    for k in 0..amps.len() {
        if k & b_bit == 0 {
            let i = k & index_mask;
            if i >= n {
                continue;
            }
            let p0 = amps[k].clone();
            let p1 = amps[k | b_bit].clone();
            let xd = p1.sub(&p0).mul_var(i);
            amps[k] = p0.add(&xd);
            amps[k | b_bit] = p1.sub(&xd);
        }
    }
}

/// Run the network symbolically. Every amplitude polynomial has degree at
/// most the number of oracle calls; substituting any concrete input
/// reproduces the numeric simulation.
pub fn symbolic_run(circuit: &Circuit) -> Result<SymbolicState> {
    if circuit.has_custom_gates() {
        return Err(Error::Capability(
            "CUSTOM gates have entries outside the exact ring; \
             symbolic mode supports H, X, Z, S, T, CNOT, CCNOT, CZ only"
                .into(),
        ));
    }
    let n = circuit.n();
    let m = circuit.m();
    let mut amps = vec![RingPoly::zero(n); 1 << m];
    amps[0] = RingPoly::constant(n, RingElem::ONE);
    let mut oracles_so_far = 0usize;
    for op in circuit.ops() {
        match op {
            CircuitOp::Gate(gate) => apply_gate_symbolic(&mut amps, gate)?,
            CircuitOp::Oracle => {
                apply_oracle_symbolic(&mut amps, n);
                oracles_so_far += 1;
            }
        }
        debug_assert!(
            amps.iter().all(|p| p.degree() <= oracles_so_far),
            "amplitude degree exceeded the oracle count"
        );
    }
    Ok(SymbolicState { n, m, amps })
}

/// The probability of observing a basis state from `accept` as an exact
/// real multilinear polynomial of degree at most twice the query count.
pub fn acceptance_polynomial(
    circuit: &Circuit,
    accept: impl Fn(usize) -> bool,
) -> Result<RingPoly> {
    let state = symbolic_run(circuit)?;
    let mut p = RingPoly::zero(circuit.n());
    for (k, amp) in state.amps.iter().enumerate() {
        if accept(k) && !amp.is_zero() {
            p = p.add(&amp.mul(&amp.conj()));
        }
    }
    if !p.is_real() {
        return Err(Error::Inconsistency(
            "acceptance polynomial has a nonzero imaginary component".into(),
        ));
    }
    Ok(p)
}

/// Exact complex number over Q(sqrt2, i), used only to divide amplitude
/// polynomials by a constant when extracting the zero-error witness.
#[derive(Clone, Debug, PartialEq)]
struct Qc {
    ra: Rat,
    rb: Rat,
    ia: Rat,
    ib: Rat,
}

impl Qc {
    fn zero() -> Self {
        Qc {
            ra: Rat::zero(),
            rb: Rat::zero(),
            ia: Rat::zero(),
            ib: Rat::zero(),
        }
    }

    fn one() -> Self {
        Qc {
            ra: Rat::one(),
            ..Qc::zero()
        }
    }

    fn from_ring(v: &RingElem) -> Self {
        let (a, b, c, d, e) = v.parts();
        let big = |x: i128| BigInt::from(x);
        if e % 2 == 0 {
            let denom: BigInt = BigInt::one() << (e as usize / 2);
            Qc {
                ra: Rat::new(big(a), denom.clone()),
                rb: Rat::new(big(b), denom.clone()),
                ia: Rat::new(big(c), denom.clone()),
                ib: Rat::new(big(d), denom),
            }
        } else {
            // Multiply numerator and denominator by sqrt2 first.
            let denom: BigInt = BigInt::one() << (e as usize).div_ceil(2);
            Qc {
                ra: Rat::new(big(2 * b), denom.clone()),
                rb: Rat::new(big(a), denom.clone()),
                ia: Rat::new(big(2 * d), denom.clone()),
                ib: Rat::new(big(c), denom),
            }
        }
    }

    fn sub(&self, other: &Qc) -> Qc {
        Qc {
            ra: &self.ra - &other.ra,
            rb: &self.rb - &other.rb,
            ia: &self.ia - &other.ia,
            ib: &self.ib - &other.ib,
        }
    }

    fn mul(&self, other: &Qc) -> Qc {
        // Components in Q(sqrt2): (x0, x1) stands for x0 + x1 sqrt2.
        let mul2 = |x: (&Rat, &Rat), y: (&Rat, &Rat)| -> (Rat, Rat) {
            (
                x.0 * y.0 + Rat::from_integer(BigInt::from(2)) * x.1 * y.1,
                x.0 * y.1 + x.1 * y.0,
            )
        };
        let re1 = (&self.ra, &self.rb);
        let im1 = (&self.ia, &self.ib);
        let re2 = (&other.ra, &other.rb);
        let im2 = (&other.ia, &other.ib);
        let (p0, p1) = mul2(re1, re2);
        let (q0, q1) = mul2(im1, im2);
        let (r0, r1) = mul2(re1, im2);
        let (s0, s1) = mul2(im1, re2);
        Qc {
            ra: p0 - q0,
            rb: p1 - q1,
            ia: r0 + s0,
            ib: r1 + s1,
        }
    }

    fn conj(&self) -> Qc {
        Qc {
            ra: self.ra.clone(),
            rb: self.rb.clone(),
            ia: -&self.ia,
            ib: -&self.ib,
        }
    }

    fn is_zero(&self) -> bool {
        self.ra.is_zero() && self.rb.is_zero() && self.ia.is_zero() && self.ib.is_zero()
    }

    fn div(&self, den: &Qc) -> Qc {
        // z / w = z conj(w) / |w|^2, and |w|^2 = r + s sqrt2 is real;
        // divide by it via the Q(sqrt2) conjugate.
        let num = self.mul(&den.conj());
        let norm = den.mul(&den.conj());
        debug_assert!(norm.ia.is_zero() && norm.ib.is_zero());
        let (r, s) = (&norm.ra, &norm.rb);
        let two = Rat::from_integer(BigInt::from(2));
        let scale = r * r - &two * s * s; // zero only for w = 0
        let div2 = |x: &Rat, y: &Rat| -> (Rat, Rat) {
            ((x * r - &two * y * s) / &scale, (y * r - x * s) / &scale)
        };
        let (ra, rb) = div2(&num.ra, &num.rb);
        let (ia, ib) = div2(&num.ia, &num.ib);
        Qc { ra, rb, ia, ib }
    }
}

/// Witness extracted from a zero-error circuit for OR: an exact-rational
/// multilinear polynomial representing OR whose degree (necessarily `n`)
/// lower-bounds the circuit's query count.
#[derive(Clone, Debug)]
pub struct ZeroErrorWitness {
    pub poly: MultilinearPoly,
    pub degree: usize,
    /// Basis state whose amplitude polynomial produced the witness.
    pub state_index: usize,
}

/// Extract the representing polynomial of OR from a circuit that computes
/// it with zero error: take a basis state reading "conclusive, answer 0"
/// whose amplitude at the all-zeros input is nonzero, and form the real
/// part of `1 - p(X)/p(0)`.
pub fn zero_error_witness_poly(circuit: &Circuit, f: &TruthTable) -> Result<ZeroErrorWitness> {
    if circuit.n() != f.n() {
        return Err(Error::Validation(format!(
            "circuit has {} oracle variables, function has {}",
            circuit.n(),
            f.n()
        )));
    }
    // The construction needs the all-zeros input to be the unique 0-input,
    // which pins f to OR.
    if f.get(0) || (1..f.size()).any(|i| !f.get(i)) {
        return Err(Error::Validation(
            "the witness construction applies to OR (all-zeros is the only 0-input)".into(),
        ));
    }
    let zero_check = super::check_zero_error(circuit, f)?;
    if !zero_check.pass {
        return Err(Error::Inconsistency(
            "circuit does not compute OR with zero error".into(),
        ));
    }

    let state = symbolic_run(circuit)?;
    let flag_bit = 1usize << circuit.flag_qubit()?;
    let out_bit = 1usize << circuit.output_qubit();
    // Conclusive answer-0 states.
    let chosen = (0..state.amps.len())
        .filter(|&k| k & flag_bit != 0 && k & out_bit == 0)
        .find(|&k| !state.amps[k].coeff(0).is_zero());
    let Some(k_star) = chosen else {
        return Err(Error::Inconsistency(
            "no conclusive answer-0 state has nonzero amplitude on the all-zeros input"
                .into(),
        ));
    };

    let p = &state.amps[k_star];
    let p0 = Qc::from_ring(&p.coeff(0));
    let n = circuit.n();
    let mut terms: Vec<(u32, Rat)> = Vec::new();
    for mask in 0..(1u32 << n) {
        let c = p.coeff(mask);
        let mut w = if c.is_zero() {
            Qc::zero()
        } else {
            Qc::from_ring(&c).div(&p0)
        };
        if mask == 0 {
            w = Qc::one().sub(&w);
        } else if !w.is_zero() {
            w = Qc::zero().sub(&w);
        }
        // Real part of the coefficient; an honest zero-error OR circuit
        // leaves no sqrt2 component behind.
        if !w.rb.is_zero() {
            return Err(Error::Inconsistency(
                "witness coefficient is irrational; the circuit is not exactly zero-error"
                    .into(),
            ));
        }
        if !w.ra.is_zero() {
            terms.push((mask, w.ra));
        }
    }
    let poly = MultilinearPoly::from_terms(n, terms)?;
    if !poly.represents(f) {
        return Err(Error::Inconsistency(
            "extracted witness does not represent OR; the circuit is not exactly zero-error"
                .into(),
        ));
    }
    let degree = poly.degree();
    Ok(ZeroErrorWitness {
        poly,
        degree,
        state_index: k_star,
    })
}
