//! Exact multilinear and univariate polynomial arithmetic.
//!
//! Everything here is exact rational (arbitrary-precision integers); no
//! floating point. Degree and feasibility claims made by this module are
//! certificates, not approximations.

mod lp;
mod simplex;

pub use lp::{
    approx_degree, default_eps, lp_min_error, symmetric_approx_degree, symmetric_lp_min_error,
    LpResult, LpWitness, MAX_GENERAL_LP_VARS,
};
pub use simplex::{minimize, Constraint, LpOutcome, Rel};

use crate::boolfn::TruthTable;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// Exact rational scalar used across the crate.
pub type Rat = BigRational;

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Multilinear polynomial over `n` Boolean variables, keyed by monomial:
/// the monomial `x_{i1}..x_{ik}` is the bitmask with those bits set.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultilinearPoly {
    n: usize,
    coeffs: BTreeMap<u32, Rat>,
}

impl MultilinearPoly {
    pub fn zero(n: usize) -> Self {
        MultilinearPoly {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, value: Rat) -> Self {
        let mut p = Self::zero(n);
        p.set_coeff(0, value);
        p
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (u32, Rat)>) -> Result<Self> {
        let mut p = Self::zero(n);
        for (mask, c) in terms {
            if mask >= (1u32 << n) {
                return Err(Error::Parameter(format!(
                    "monomial mask {mask:#x} out of range for n = {n}"
                )));
            }
            let cur = p.coeff(mask) + c;
            p.set_coeff(mask, cur);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, mask: u32) -> Rat {
        self.coeffs.get(&mask).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn set_coeff(&mut self, mask: u32, value: Rat) {
        if value.is_zero() {
            self.coeffs.remove(&mask);
        } else {
            self.coeffs.insert(mask, value);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Rat)> {
        self.coeffs.iter().map(|(&m, c)| (m, c))
    }

    pub fn term_count(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Max monomial size with nonzero coefficient; 0 for constants and for
    /// the zero polynomial (see [`MultilinearPoly::is_zero`] for the flag).
    pub fn degree(&self) -> usize {
        self.coeffs
            .keys()
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// Evaluate at the Boolean point given by an index: the sum of the
    /// coefficients of all monomials contained in the point's support.
    pub fn evaluate_index(&self, index: usize) -> Rat {
        let idx = index as u32;
        let mut acc = Rat::zero();
        for (&mask, c) in &self.coeffs {
            if mask & !idx == 0 {
                acc += c;
            }
        }
        acc
    }

    pub fn evaluate_bits(&self, x: &[bool]) -> Result<Rat> {
        if x.len() != self.n {
            return Err(Error::Parameter(format!(
                "input has {} bits, polynomial has {} variables",
                x.len(),
                self.n
            )));
        }
        Ok(self.evaluate_index(crate::boolfn::index_of_bits(x)))
    }

    /// Evaluate at an arbitrary real-valued (rational) point.
    pub fn evaluate_rational(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.n {
            return Err(Error::Parameter(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.n
            )));
        }
        let mut acc = Rat::zero();
        for (&mask, c) in &self.coeffs {
            let mut term = c.clone();
            for (i, coord) in point.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    term *= coord;
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// True iff the polynomial takes `f`'s value at every Boolean point.
    pub fn represents(&self, f: &TruthTable) -> bool {
        self.n == f.n()
            && (0..f.size()).all(|i| {
                let want = if f.get(i) { Rat::one() } else { Rat::zero() };
                self.evaluate_index(i) == want
            })
    }
}

impl fmt::Debug for MultilinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&mask, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for i in 0..self.n {
                if mask & (1 << i) != 0 {
                    write!(f, "*x{i}")?;
                }
            }
        }
        Ok(())
    }
}

/// The unique multilinear polynomial representing `f`, computed by Mobius
/// inversion over the subset lattice: `c_S = sum_{T subseteq S} (-1)^{|S\T|} f(T)`.
/// Its degree is the function degree of `f`.
pub fn interpolate(f: &TruthTable) -> MultilinearPoly {
    let size = f.size();
    // Coefficients of a 0/1-valued function are integers bounded by 2^n,
    // so the transform runs over machine integers.
    let mut vals: Vec<i64> = (0..size).map(|i| f.get(i) as i64).collect();
    for i in 0..f.n() {
        let bit = 1usize << i;
        for mask in 0..size {
            if mask & bit != 0 {
                vals[mask] -= vals[mask ^ bit];
            }
        }
    }
    let mut coeffs = BTreeMap::new();
    for (mask, v) in vals.into_iter().enumerate() {
        if v != 0 {
            coeffs.insert(mask as u32, Rat::from_integer(BigInt::from(v)));
        }
    }
    MultilinearPoly { n: f.n(), coeffs }
}

/// Univariate polynomial with exact rational coefficients, monomial basis,
/// low degree first. The zero polynomial stores no coefficients; otherwise
/// the trailing coefficient is nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct UnivariatePoly {
    coeffs: Vec<Rat>,
}

impl UnivariatePoly {
    pub fn zero() -> Self {
        UnivariatePoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UnivariatePoly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// 0 for constants and for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn evaluate(&self, at: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * at + c;
        }
        acc
    }

    pub fn evaluate_int(&self, k: usize) -> Rat {
        self.evaluate(&Rat::from_integer(BigInt::from(k)))
    }
}

impl fmt::Debug for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| if i == 0 { format!("({c})") } else { format!("({c})*k^{i}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// The univariate polynomial `q` with `q(|X|)` equal to the average of `p`
/// over all permutations of the input, with `deg(q) <= deg(p)`.
///
/// Averaging sends every coefficient of monomial size `j` to the mean `a_j`
/// of that size class, so the symmetrized polynomial is
/// `sum_j a_j * V_j` where `V_j` is the sum of all size-`j` monomials, and
/// `V_j` takes the value `binom(|X|, j)`. Expanding `binom(k, j)` in the
/// monomial basis yields `q`.
pub fn symmetrize(p: &MultilinearPoly) -> UnivariatePoly {
    let n = p.n();
    let mut size_sums: Vec<Rat> = vec![Rat::zero(); n + 1];
    for (mask, c) in p.terms() {
        size_sums[mask.count_ones() as usize] += c;
    }

    // q(k) = sum_j a_j * binom(k, j) with a_j = size_sums[j] / binom(n, j);
    // binom(k, j) = k (k-1) .. (k-j+1) / j! expanded via falling factorials.
    let mut q = vec![Rat::zero(); n + 2];
    let mut falling: Vec<Rat> = vec![Rat::one()]; // j = 0
    let mut j_factorial = BigInt::one();
    for (j, size_sum) in size_sums.iter().enumerate() {
        if j > 0 {
            // falling *= (k - (j-1))
            let shift = Rat::from_integer(BigInt::from(j as i64 - 1));
            let mut next = vec![Rat::zero(); falling.len() + 1];
            for (i, c) in falling.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * &shift;
            }
            falling = next;
            j_factorial *= BigInt::from(j);
        }
        if size_sum.is_zero() {
            continue;
        }
        let a_j = size_sum / Rat::from_integer(binomial(n, j));
        let scale = a_j / Rat::from_integer(j_factorial.clone());
        for (i, c) in falling.iter().enumerate() {
            q[i] += c * &scale;
        }
    }
    UnivariatePoly::from_coeffs(q)
}

/// Lower bound on the degree of a polynomial that stays within `[b1, b2]`
/// on the integers `0..=n` yet has derivative magnitude at least `c`
/// somewhere in `[0, n]`: `sqrt(c * n / (c + b2 - b1))`.
pub fn markov_bound(b1: &Rat, b2: &Rat, c: &Rat, n: usize) -> Result<f64> {
    if !c.is_positive() {
        return Err(Error::Domain("derivative bound c must be positive".into()));
    }
    if b2 < b1 {
        return Err(Error::Parameter("range bounds require b2 >= b1".into()));
    }
    let ratio = c * Rat::from_integer(BigInt::from(n)) / (c + b2 - b1);
    Ok(ratio.to_f64().expect("finite ratio").sqrt())
}

/// Substitute block-flip variables into `p` at base point `x`: the result
/// `q` over one variable per block satisfies `q(0,..,0) = p(x)` and
/// `q(e_i) = p(x with block B_i flipped)`, with `deg(q) <= deg(p)`.
///
/// Coordinates inside block `B_i` become `y_i` where `x_j = 0` and
/// `1 - y_i` where `x_j = 1`; coordinates outside every block stay pinned
/// at `x_j`.
pub fn restrict_blocks(
    p: &MultilinearPoly,
    x: &[bool],
    blocks: &[Vec<usize>],
) -> Result<MultilinearPoly> {
    let n = p.n();
    if x.len() != n {
        return Err(Error::Parameter(format!(
            "base point has {} bits, polynomial has {n} variables",
            x.len()
        )));
    }
    let b = blocks.len();
    if b > 32 {
        return Err(Error::Capability("at most 32 blocks supported".into()));
    }
    // block_of[j] = Some(i) iff j is in B_i.
    let mut block_of: Vec<Option<usize>> = vec![None; n];
    for (i, block) in blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(Error::Parameter(format!("block {i} is empty")));
        }
        for &j in block {
            if j >= n {
                return Err(Error::Parameter(format!(
                    "block {i} contains out-of-range index {j}"
                )));
            }
            if block_of[j].replace(i).is_some() {
                return Err(Error::Parameter(format!(
                    "blocks overlap at variable {j}"
                )));
            }
        }
    }

    let mut result: BTreeMap<u32, Rat> = BTreeMap::new();
    for (mask, c) in p.terms() {
        // Expand the product of per-variable substitutions for this monomial,
        // reducing y_i^2 to y_i as we go.
        let mut partial: BTreeMap<u32, Rat> = BTreeMap::new();
        partial.insert(0, c.clone());
        for j in 0..n {
            if mask & (1 << j) == 0 {
                continue;
            }
            match (block_of[j], x[j]) {
                (None, true) => {}
                (None, false) => {
                    partial.clear();
                }
                (Some(i), false) => {
                    // factor y_i
                    let mut next: BTreeMap<u32, Rat> = BTreeMap::new();
                    for (m, v) in partial {
                        *next.entry(m | (1 << i)).or_insert_with(Rat::zero) += v;
                    }
                    partial = next;
                }
                (Some(i), true) => {
                    // factor (1 - y_i); terms already containing y_i vanish
                    let mut next: BTreeMap<u32, Rat> = BTreeMap::new();
                    for (m, v) in partial {
                        if m & (1 << i) == 0 {
                            *next.entry(m | (1 << i)).or_insert_with(Rat::zero) -= &v;
                            *next.entry(m).or_insert_with(Rat::zero) += v;
                        }
                    }
                    partial = next;
                }
            }
            if partial.is_empty() {
                break;
            }
        }
        for (m, v) in partial {
            *result.entry(m).or_insert_with(Rat::zero) += v;
        }
    }
    result.retain(|_, v| !v.is_zero());
    Ok(MultilinearPoly {
        n: b,
        coeffs: result,
    })
}

// JSON forms:
//   multilinear: {"n": int, "terms": [{"mask": int, "num": string, "den": string}]}
//   univariate:  {"coeffs": [["num", "den"], ...]}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    mask: u32,
    num: String,
    den: String,
}

impl Serialize for MultilinearPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let terms: Vec<TermRepr> = self
            .terms()
            .map(|(mask, c)| TermRepr {
                mask,
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect();
        let mut s = serializer.serialize_struct("MultilinearPoly", 2)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("terms", &terms)?;
        s.end()
    }
}

fn parse_rat<E: serde::de::Error>(num: &str, den: &str) -> std::result::Result<Rat, E> {
    let num: BigInt = num
        .parse()
        .map_err(|_| E::custom(format!("invalid numerator '{num}'")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| E::custom(format!("invalid denominator '{den}'")))?;
    if den.is_zero() {
        return Err(E::custom("denominator is zero"));
    }
    Ok(Rat::new(num, den))
}

impl<'de> Deserialize<'de> for MultilinearPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            n: usize,
            terms: Vec<TermRepr>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let terms: Vec<(u32, Rat)> = repr
            .terms
            .iter()
            .map(|t| Ok((t.mask, parse_rat::<D::Error>(&t.num, &t.den)?)))
            .collect::<std::result::Result<_, D::Error>>()?;
        MultilinearPoly::from_terms(repr.n, terms).map_err(D::Error::custom)
    }
}

impl Serialize for UnivariatePoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let coeffs: Vec<[String; 2]> = self
            .coeffs
            .iter()
            .map(|c| [c.numer().to_string(), c.denom().to_string()])
            .collect();
        let mut s = serializer.serialize_struct("UnivariatePoly", 1)?;
        s.serialize_field("coeffs", &coeffs)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for UnivariatePoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            coeffs: Vec<[String; 2]>,
        }
        let repr = Repr::deserialize(deserializer)?;
        let coeffs: Vec<Rat> = repr
            .coeffs
            .iter()
            .map(|[num, den]| parse_rat::<D::Error>(num, den))
            .collect::<std::result::Result<_, D::Error>>()?;
        Ok(UnivariatePoly::from_coeffs(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolfn::Family;
    use crate::rng::SplitMix64;

    fn table(family: Family, n: usize) -> TruthTable {
        TruthTable::from_family(family, n, None).unwrap()
    }

    #[test]
    fn interpolate_named_cases() {
        // AND_2 -> x0 x1
        let p = interpolate(&table(Family::And, 2));
        assert_eq!(p.term_count(), 1);
        assert_eq!(p.coeff(0b11), Rat::one());

        // OR_2 -> x0 + x1 - x0 x1
        let p = interpolate(&table(Family::Or, 2));
        assert_eq!(p.coeff(0b01), Rat::one());
        assert_eq!(p.coeff(0b10), Rat::one());
        assert_eq!(p.coeff(0b11), -Rat::one());
        assert_eq!(p.term_count(), 3);

        // PARITY_2 -> x0 + x1 - 2 x0 x1
        let p = interpolate(&table(Family::Parity, 2));
        assert_eq!(p.coeff(0b01), Rat::one());
        assert_eq!(p.coeff(0b10), Rat::one());
        assert_eq!(p.coeff(0b11), rat(-2, 1));
    }

    #[test]
    fn degree_named_cases() {
        for n in 2..=4usize {
            assert_eq!(interpolate(&table(Family::Parity, n)).degree(), n);
            assert_eq!(interpolate(&table(Family::Or, n)).degree(), n);
        }
        let zero = interpolate(&TruthTable::new_constant(3, false).unwrap());
        assert!(zero.is_zero());
        assert_eq!(zero.degree(), 0);
        let one = interpolate(&TruthTable::new_constant(3, true).unwrap());
        assert!(!one.is_zero());
        assert_eq!(one.degree(), 0);
    }

    #[test]
    fn interpolate_round_trips_exhaustively() {
        for n in 1..=4usize {
            let count: usize = if n == 4 { 1 << 16 } else { 1 << (1usize << n) };
            for code in 0..count {
                let f = TruthTable::from_fn(n, |i| (code >> i) & 1 == 1).unwrap();
                let p = interpolate(&f);
                assert!(p.represents(&f), "n={n} code={code}");
            }
        }
        for n in [8usize, 12] {
            for fam in [Family::Or, Family::And, Family::Parity, Family::Majority] {
                let f = table(fam, n);
                assert!(interpolate(&f).represents(&f));
            }
        }
    }

    #[test]
    fn symmetrize_named_cases() {
        // x0 - x1 symmetrizes to zero.
        let p = MultilinearPoly::from_terms(2, [(0b01, Rat::one()), (0b10, -Rat::one())]).unwrap();
        assert!(symmetrize(&p).is_zero());

        // x0 x1 on n=2 symmetrizes to k(k-1)/2.
        let p = MultilinearPoly::from_terms(2, [(0b11, Rat::one())]).unwrap();
        let q = symmetrize(&p);
        assert_eq!(q.evaluate_int(0), Rat::zero());
        assert_eq!(q.evaluate_int(1), Rat::zero());
        assert_eq!(q.evaluate_int(2), Rat::one());
        assert_eq!(q.coeffs(), &[Rat::zero(), rat(-1, 2), rat(1, 2)]);

        // Symmetrizing the representing polynomial of OR_4 reproduces its profile.
        let q = symmetrize(&interpolate(&table(Family::Or, 4)));
        assert_eq!(q.evaluate_int(0), Rat::zero());
        for k in 1..=4 {
            assert_eq!(q.evaluate_int(k), Rat::one());
        }
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        let mut out = vec![];
        let mut current: Vec<usize> = (0..n).collect();
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
        heap(n, &mut current, &mut out);
        out
    }

    fn random_sparse(n: usize, rng: &mut SplitMix64) -> MultilinearPoly {
        let terms = 1 + rng.next_below(6) as usize;
        let mut p = MultilinearPoly::zero(n);
        for _ in 0..terms {
            let mask = rng.next_below(1 << n) as u32;
            let num = rng.next_below(21) as i64 - 10;
            let den = 1 + rng.next_below(4) as i64;
            let cur = p.coeff(mask) + rat(num, den);
            p.set_coeff(mask, cur);
        }
        p
    }

    #[test]
    fn symmetrize_matches_permutation_average() {
        let mut rng = SplitMix64::new(0x5ca1ab1e);
        for n in 2..=5usize {
            let perms = permutations(n);
            for _ in 0..20 {
                let p = random_sparse(n, &mut rng);
                let q = symmetrize(&p);
                for index in 0..1usize << n {
                    let mut avg = Rat::zero();
                    for perm in &perms {
                        // permuted input: position i takes x_{perm[i]}
                        let mut permuted = 0usize;
                        for (i, &pi) in perm.iter().enumerate() {
                            if index >> pi & 1 == 1 {
                                permuted |= 1 << i;
                            }
                        }
                        avg += p.evaluate_index(permuted);
                    }
                    avg /= Rat::from_integer(BigInt::from(perms.len()));
                    let k = index.count_ones() as usize;
                    assert_eq!(q.evaluate_int(k), avg, "n={n} index={index}");
                }
            }
        }
    }

    #[test]
    fn symmetrize_never_raises_degree() {
        let mut rng = SplitMix64::new(0xfeed);
        for _ in 0..1000 {
            let n = 1 + rng.next_below(6) as usize;
            let p = random_sparse(n, &mut rng);
            assert!(symmetrize(&p).degree() <= p.degree());
        }
    }

    #[test]
    fn markov_bound_cases() {
        // (0, 1, 1/3, b) -> sqrt(b/4)
        for b in [4usize, 16, 25] {
            let got = markov_bound(&rat(0, 1), &rat(1, 1), &rat(1, 3), b).unwrap();
            assert!((got - (b as f64 / 4.0).sqrt()).abs() < 1e-12);
        }
        // b2 = b1 -> sqrt(n)
        let got = markov_bound(&rat(0, 1), &rat(0, 1), &rat(1, 1), 9).unwrap();
        assert!((got - 3.0).abs() < 1e-12);
        assert_eq!(
            markov_bound(&rat(0, 1), &rat(1, 1), &rat(1, 3), 16).unwrap(),
            2.0
        );
        assert!(matches!(
            markov_bound(&rat(0, 1), &rat(1, 1), &rat(0, 1), 4),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn restrict_blocks_named_cases() {
        let or4 = interpolate(&table(Family::Or, 4));
        let x = vec![false; 4];
        let singletons: Vec<Vec<usize>> = (0..4).map(|i| vec![i]).collect();
        let q = restrict_blocks(&or4, &x, &singletons).unwrap();
        assert_eq!(q, or4);

        // Empty block list pins everything: the constant p(x).
        let q = restrict_blocks(&or4, &[true, false, false, false], &[]).unwrap();
        assert_eq!(q.n(), 0);
        assert_eq!(q.coeff(0), Rat::one());

        // Flipping two bits at a time preserves parity, so the restriction
        // of PARITY_4 to two 2-bit blocks vanishes identically.
        let parity4 = interpolate(&table(Family::Parity, 4));
        let q = restrict_blocks(&parity4, &x, &[vec![0, 1], vec![2, 3]]).unwrap();
        for y in 0..4usize {
            assert_eq!(q.evaluate_index(y), Rat::zero());
        }
    }

    #[test]
    fn restrict_blocks_postconditions() {
        let mut rng = SplitMix64::new(0xb10c);
        for _ in 0..50 {
            let n = 3 + rng.next_below(3) as usize;
            let code = rng.next_u64();
            let f = TruthTable::from_fn(n, |i| (code >> (i % 64)) & 1 == 1).unwrap();
            let p = interpolate(&f);
            let x_index = rng.next_below(1 << n) as usize;
            let x = crate::boolfn::bits_of_index(x_index, n);
            // Two disjoint random blocks.
            let mut blocks: Vec<Vec<usize>> = vec![vec![], vec![]];
            for j in 0..n {
                match rng.next_below(3) {
                    0 => blocks[0].push(j),
                    1 => blocks[1].push(j),
                    _ => {}
                }
            }
            if blocks.iter().any(|b| b.is_empty()) {
                continue;
            }
            let q = restrict_blocks(&p, &x, &blocks).unwrap();
            assert!(q.degree() <= p.degree());
            assert_eq!(q.evaluate_index(0), p.evaluate_index(x_index));
            for (i, block) in blocks.iter().enumerate() {
                let flipped = block.iter().fold(x_index, |acc, &j| acc ^ (1 << j));
                assert_eq!(q.evaluate_index(1 << i), p.evaluate_index(flipped));
            }
        }
    }

    #[test]
    fn restrict_blocks_rejects_overlap() {
        let p = interpolate(&table(Family::Or, 3));
        let err = restrict_blocks(&p, &[false; 3], &[vec![0, 1], vec![1, 2]]);
        assert!(matches!(err, Err(Error::Parameter(_))));
        let err = restrict_blocks(&p, &[false; 3], &[vec![]]);
        assert!(matches!(err, Err(Error::Parameter(_))));
    }

    #[test]
    fn json_round_trip() {
        let p = interpolate(&table(Family::Parity, 3));
        let json = serde_json::to_string(&p).unwrap();
        let back: MultilinearPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(p, back);

        let q = symmetrize(&p);
        let json = serde_json::to_string(&q).unwrap();
        let back: UnivariatePoly = serde_json::from_str(&json).unwrap();
        assert_eq!(q, back);
    }
}
