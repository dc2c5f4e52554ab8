//! Approximate degree via exact linear programming.
//!
//! The LP minimizes the worst-case deviation `eps` of a degree-bounded
//! polynomial from `f` over all Boolean points. Coefficients are free
//! variables, so each is split into a nonnegative pair for the solver.

use super::simplex::{minimize, Constraint, LpOutcome, Rel};
use super::{MultilinearPoly, Rat, UnivariatePoly};
use crate::boolfn::{SymmetricProfile, TruthTable};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Cap for the general (multilinear) LP. The variable count is
/// `sum_{j<=d} binom(n, j)` and the constraint count `2 * 2^n`.
pub const MAX_GENERAL_LP_VARS: usize = 4;

/// Result of a min-error LP solve.
#[derive(Clone, Debug)]
pub struct LpResult {
    pub feasible: bool,
    /// Exact optimum of `max_X |p(X) - f(X)|` over the degree budget.
    pub min_error: Rat,
    pub witness: Option<LpWitness>,
}

#[derive(Clone, Debug)]
pub enum LpWitness {
    Multilinear(MultilinearPoly),
    Univariate(UnivariatePoly),
}

/// The approximation threshold used throughout: exactly 1/3.
pub fn default_eps() -> Rat {
    Rat::new(BigInt::one(), BigInt::from(3))
}

fn masks_up_to_degree(n: usize, d: usize) -> Vec<u32> {
    (0..1u32 << n)
        .filter(|m| (m.count_ones() as usize) <= d)
        .collect()
}

/// Exact minimum of `max_X |p(X) - f(X)|` over multilinear `p` of degree
/// at most `d`, with a witness polynomial attaining it.
pub fn lp_min_error(f: &TruthTable, d: usize) -> Result<LpResult> {
    let n = f.n();
    if n > MAX_GENERAL_LP_VARS {
        return Err(Error::Capability(format!(
            "the general min-error LP supports n <= {MAX_GENERAL_LP_VARS}, got {n}; \
             symmetric functions go through the univariate LP instead"
        )));
    }
    if d > n {
        return Err(Error::Parameter(format!(
            "degree budget {d} exceeds variable count {n}"
        )));
    }
    let masks = masks_up_to_degree(n, d);
    let k = masks.len();
    // Variables: [eps, u_0..u_{k-1}, v_0..v_{k-1}], coefficient = u - v.
    let cols = 1 + 2 * k;
    let mut objective = vec![Rat::zero(); cols];
    objective[0] = Rat::one();

    let mut constraints = Vec::with_capacity(2 * f.size());
    for index in 0..f.size() {
        let fx = if f.get(index) { Rat::one() } else { Rat::zero() };
        let mut up = vec![Rat::zero(); cols];
        let mut down = vec![Rat::zero(); cols];
        up[0] = -Rat::one();
        down[0] = -Rat::one();
        for (t, &mask) in masks.iter().enumerate() {
            if mask & !(index as u32) == 0 {
                up[1 + t] = Rat::one();
                up[1 + k + t] = -Rat::one();
                down[1 + t] = -Rat::one();
                down[1 + k + t] = Rat::one();
            }
        }
        // p(X) - eps <= f(X)  and  -p(X) - eps <= -f(X)
        constraints.push(Constraint::new(up, Rel::Le, fx.clone()));
        constraints.push(Constraint::new(down, Rel::Le, -fx));
    }

    match minimize(&objective, &constraints) {
        LpOutcome::Optimal {
            objective: value,
            solution,
        } => {
            let mut poly = MultilinearPoly::zero(n);
            for (t, &mask) in masks.iter().enumerate() {
                let c = &solution[1 + t] - &solution[1 + k + t];
                poly.set_coeff(mask, c);
            }
            Ok(LpResult {
                feasible: true,
                min_error: value,
                witness: Some(LpWitness::Multilinear(poly)),
            })
        }
        // minimize eps with eps >= 0 and the constant-1/2 point feasible.
        other => Err(Error::Inconsistency(format!(
            "min-error LP cannot fail, solver said {other:?}"
        ))),
    }
}

/// Smallest degree budget whose min-error LP meets `eps`, searched upward
/// from zero. Feasibility is monotone in `d` and `d = n` is exact, so the
/// search always terminates.
pub fn approx_degree(f: &TruthTable, eps: &Rat) -> Result<usize> {
    if eps.is_negative() {
        return Err(Error::Parameter("approximation threshold must be >= 0".into()));
    }
    for d in 0..=f.n() {
        if lp_min_error(f, d)?.min_error <= *eps {
            return Ok(d);
        }
    }
    unreachable!("degree n interpolates exactly");
}

/// Univariate variant for symmetric functions: minimize
/// `max_k |q(k) - f_k|` over degree-`d` polynomials `q`.
pub fn symmetric_lp_min_error(profile: &SymmetricProfile, d: usize) -> Result<LpResult> {
    let n = profile.n();
    if d > n {
        return Err(Error::Parameter(format!(
            "degree budget {d} exceeds variable count {n}"
        )));
    }
    let k_vars = d + 1;
    let cols = 1 + 2 * k_vars;
    let mut objective = vec![Rat::zero(); cols];
    objective[0] = Rat::one();

    let mut constraints = Vec::with_capacity(2 * (n + 1));
    for k in 0..=n {
        let fk = if profile.value_at(k) {
            Rat::one()
        } else {
            Rat::zero()
        };
        // Powers k^j, exact.
        let mut powers = Vec::with_capacity(k_vars);
        let mut p = BigInt::one();
        for _ in 0..k_vars {
            powers.push(Rat::from_integer(p.clone()));
            p *= BigInt::from(k);
        }
        let mut up = vec![Rat::zero(); cols];
        let mut down = vec![Rat::zero(); cols];
        up[0] = -Rat::one();
        down[0] = -Rat::one();
        for j in 0..k_vars {
            up[1 + j] = powers[j].clone();
            up[1 + k_vars + j] = -&powers[j];
            down[1 + j] = -&powers[j];
            down[1 + k_vars + j] = powers[j].clone();
        }
        constraints.push(Constraint::new(up, Rel::Le, fk.clone()));
        constraints.push(Constraint::new(down, Rel::Le, -fk));
    }

    match minimize(&objective, &constraints) {
        LpOutcome::Optimal {
            objective: value,
            solution,
        } => {
            let coeffs: Vec<Rat> = (0..k_vars)
                .map(|j| &solution[1 + j] - &solution[1 + k_vars + j])
                .collect();
            Ok(LpResult {
                feasible: true,
                min_error: value,
                witness: Some(LpWitness::Univariate(UnivariatePoly::from_coeffs(coeffs))),
            })
        }
        other => Err(Error::Inconsistency(format!(
            "min-error LP cannot fail, solver said {other:?}"
        ))),
    }
}

/// Approximate degree of a symmetric function via the univariate LP.
/// Agrees with [`approx_degree`] of the corresponding truth table because
/// symmetrizing preserves both the degree bound and the approximation.
pub fn symmetric_approx_degree(profile: &SymmetricProfile, eps: &Rat) -> Result<usize> {
    if eps.is_negative() {
        return Err(Error::Parameter("approximation threshold must be >= 0".into()));
    }
    for d in 0..=profile.n() {
        if symmetric_lp_min_error(profile, d)?.min_error <= *eps {
            return Ok(d);
        }
    }
    unreachable!("degree n interpolates exactly");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::Family;
    use crate::polynomial::{interpolate, rat};

    fn table(family: Family, n: usize) -> TruthTable {
        TruthTable::from_family(family, n, None).unwrap()
    }

    fn check_witness(f: &TruthTable, result: &LpResult) {
        let Some(LpWitness::Multilinear(p)) = &result.witness else {
            panic!("expected multilinear witness");
        };
        for index in 0..f.size() {
            let fx = if f.get(index) { Rat::one() } else { Rat::zero() };
            let dev = (p.evaluate_index(index) - fx).abs();
            assert!(dev <= result.min_error, "witness violates bound at {index}");
        }
    }

    #[test]
    fn and2_degree_one_approximation() {
        let and2 = table(Family::And, 2);
        let r = lp_min_error(&and2, 1).unwrap();
        assert!(r.min_error <= rat(1, 3));
        check_witness(&and2, &r);

        let r0 = lp_min_error(&and2, 0).unwrap();
        assert_eq!(r0.min_error, rat(1, 2));
    }

    #[test]
    fn parity4_needs_full_degree() {
        let parity4 = table(Family::Parity, 4);
        let r = lp_min_error(&parity4, 3).unwrap();
        assert!(r.min_error >= rat(1, 2));
        check_witness(&parity4, &r);
    }

    #[test]
    fn approx_degree_named_cases() {
        assert_eq!(approx_degree(&table(Family::And, 2), &default_eps()).unwrap(), 1);
        for n in 2..=4usize {
            assert_eq!(
                approx_degree(&table(Family::Parity, n), &default_eps()).unwrap(),
                n
            );
        }
        let one = TruthTable::new_constant(3, true).unwrap();
        assert_eq!(approx_degree(&one, &default_eps()).unwrap(), 0);
    }

    #[test]
    fn lp_error_monotone_and_exact_at_full_degree() {
        for code in [0x6u64, 0x8, 0x96, 0x1e] {
            let f = TruthTable::from_fn(3, |i| (code >> i) & 1 == 1).unwrap();
            let mut prev: Option<Rat> = None;
            for d in 0..=3 {
                let e = lp_min_error(&f, d).unwrap().min_error;
                if let Some(p) = prev {
                    assert!(e <= p);
                }
                prev = Some(e);
            }
            assert!(prev.unwrap().is_zero());
        }
    }

    #[test]
    fn symmetric_route_agrees_with_general_route() {
        // Every symmetric function on n <= 4.
        for n in 1..=4usize {
            for code in 0u64..(1 << (n + 1)) {
                let values: Vec<bool> = (0..=n).map(|k| (code >> k) & 1 == 1).collect();
                let profile = SymmetricProfile::new(values).unwrap();
                let f = profile.to_truth_table().unwrap();
                let general = approx_degree(&f, &default_eps()).unwrap();
                let fast = symmetric_approx_degree(&profile, &default_eps()).unwrap();
                assert_eq!(general, fast, "n={n} code={code}");
            }
        }
    }

    #[test]
    fn symmetric_named_cases() {
        let or4 = SymmetricProfile::from_family(Family::Or, 4, None).unwrap();
        assert_eq!(symmetric_approx_degree(&or4, &default_eps()).unwrap(), 2);
        let parity8 = SymmetricProfile::from_family(Family::Parity, 8, None).unwrap();
        assert_eq!(symmetric_approx_degree(&parity8, &default_eps()).unwrap(), 8);
        let maj4 = SymmetricProfile::from_family(Family::Majority, 4, None).unwrap();
        let maj4_table = table(Family::Majority, 4);
        assert_eq!(
            symmetric_approx_degree(&maj4, &default_eps()).unwrap(),
            approx_degree(&maj4_table, &default_eps()).unwrap()
        );
    }

    #[test]
    fn approx_degree_never_exceeds_degree_small_n() {
        for n in 1..=3usize {
            for code in 0u64..(1 << (1usize << n)) {
                let f = TruthTable::from_fn(n, |i| (code >> i) & 1 == 1).unwrap();
                let adeg = approx_degree(&f, &default_eps()).unwrap();
                assert!(adeg <= interpolate(&f).degree(), "n={n} code={code}");
            }
        }
    }

    #[test]
    fn caps_and_parameter_errors() {
        let f = table(Family::Or, 5);
        assert!(matches!(lp_min_error(&f, 2), Err(Error::Capability(_))));
        let g = table(Family::Or, 3);
        assert!(matches!(lp_min_error(&g, 4), Err(Error::Parameter(_))));
    }
}
