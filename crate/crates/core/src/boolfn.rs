//! Boolean functions on `{0,1}^n` as explicit truth tables.
//!
//! Index convention, shared by every module in this crate: bit `i` of the
//! integer index encodes variable `x_i` (little-endian). A bitstring written
//! as text (`"1011"`) lists `x_0` first, so `"10"` denotes the input with
//! `x_0 = 1`, `x_1 = 0` and has index 1.

use crate::error::{Error, Result};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

/// Truth tables hold `2^n` bits; `n` is capped here. Operations that blow
/// up faster than the table size declare tighter caps locally.
pub const MAX_VARS: usize = 20;

/// The named function families used throughout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Or,
    And,
    Parity,
    Majority,
    Threshold,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Or => "or",
            Family::And => "and",
            Family::Parity => "parity",
            Family::Majority => "majority",
            Family::Threshold => "threshold",
        }
    }

    /// Value of the family member on inputs of Hamming weight `k`.
    /// MAJORITY uses the strict rule `|X| > n/2`; no tie parameter.
    fn value_at_weight(self, n: usize, m: usize, k: usize) -> bool {
        match self {
            Family::Or => k >= 1,
            Family::And => k == n,
            Family::Parity => k % 2 == 1,
            Family::Majority => 2 * k > n,
            Family::Threshold => k >= m,
        }
    }

    fn check_params(self, n: usize, m: Option<usize>) -> Result<usize> {
        if n == 0 {
            return Err(Error::Parameter("variable count must be at least 1".into()));
        }
        match (self, m) {
            (Family::Threshold, Some(m)) if (1..=n).contains(&m) => Ok(m),
            (Family::Threshold, Some(m)) => Err(Error::Parameter(format!(
                "threshold m = {m} out of range 1..={n}"
            ))),
            (Family::Threshold, None) => {
                Err(Error::Parameter("threshold requires a level m".into()))
            }
            (_, Some(_)) => Err(Error::Parameter(format!(
                "family {} does not take a threshold",
                self.name()
            ))),
            (_, None) => Ok(0),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "or" => Ok(Family::Or),
            "and" => Ok(Family::And),
            "parity" | "xor" => Ok(Family::Parity),
            "majority" | "maj" => Ok(Family::Majority),
            "threshold" => Ok(Family::Threshold),
            other => Err(Error::Parameter(format!("unknown family '{other}'"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A total Boolean function `f: {0,1}^n -> {0,1}` stored as a packed bit
/// vector of length `2^n`; entry at index `X` is `f(X)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: usize,
    bits: Vec<u64>,
}

impl TruthTable {
    fn check_n(n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::Parameter("variable count must be at least 1".into()));
        }
        if n > MAX_VARS {
            return Err(Error::Capability(format!(
                "truth tables support at most {MAX_VARS} variables, got {n}"
            )));
        }
        Ok(())
    }

    fn blocks_for(n: usize) -> usize {
        (1usize << n).div_ceil(64)
    }

    pub fn new_constant(n: usize, value: bool) -> Result<Self> {
        Self::check_n(n)?;
        let blocks = Self::blocks_for(n);
        let mut bits = vec![if value { u64::MAX } else { 0 }; blocks];
        if value {
            Self::mask_tail(n, &mut bits);
        }
        Ok(TruthTable { n, bits })
    }

    fn mask_tail(n: usize, bits: &mut [u64]) {
        let size = 1usize << n;
        if !size.is_multiple_of(64) {
            let last = bits.len() - 1;
            bits[last] &= (1u64 << (size % 64)) - 1;
        }
    }

    /// Build a table by evaluating `f` on every index.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize) -> bool) -> Result<Self> {
        Self::check_n(n)?;
        let mut bits = vec![0u64; Self::blocks_for(n)];
        for index in 0..1usize << n {
            if f(index) {
                bits[index / 64] |= 1u64 << (index % 64);
            }
        }
        Ok(TruthTable { n, bits })
    }

    pub fn from_bools(n: usize, values: &[bool]) -> Result<Self> {
        Self::check_n(n)?;
        if values.len() != 1usize << n {
            return Err(Error::Parameter(format!(
                "table for n = {n} needs {} entries, got {}",
                1usize << n,
                values.len()
            )));
        }
        Self::from_fn(n, |i| values[i])
    }

    /// Table of a named family. `m` is the THRESHOLD level and is rejected
    /// for the other families.
    pub fn from_family(family: Family, n: usize, m: Option<usize>) -> Result<Self> {
        Self::check_n(n)?;
        let m = family.check_params(n, m)?;
        Self::from_fn(n, |i| family.value_at_weight(n, m, i.count_ones() as usize))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of table entries, `2^n`.
    pub fn size(&self) -> usize {
        1usize << self.n
    }

    /// `f` at the given index. Panics if out of range.
    #[inline]
    pub fn get(&self, index: usize) -> bool {
        debug_assert!(index < self.size());
        (self.bits[index / 64] >> (index % 64)) & 1 == 1
    }

    /// `f` at a bitstring input; the slice lists `x_0` first.
    pub fn evaluate(&self, x: &[bool]) -> Result<bool> {
        if x.len() != self.n {
            return Err(Error::Parameter(format!(
                "input has {} bits, function has {} variables",
                x.len(),
                self.n
            )));
        }
        Ok(self.get(index_of_bits(x)))
    }

    /// `Some(v)` iff the function is constantly `v`.
    pub fn constant_value(&self) -> Option<bool> {
        let first = self.get(0);
        for i in 1..self.size() {
            if self.get(i) != first {
                return None;
            }
        }
        Some(first)
    }

    /// The weight profile `f_0..f_n` iff `f(X)` depends only on `|X|`.
    pub fn symmetric_profile(&self) -> Option<SymmetricProfile> {
        let mut values: Vec<Option<bool>> = vec![None; self.n + 1];
        for index in 0..self.size() {
            let k = index.count_ones() as usize;
            let v = self.get(index);
            match values[k] {
                None => values[k] = Some(v),
                Some(prev) if prev != v => return None,
                Some(_) => {}
            }
        }
        let values: Vec<bool> = values.into_iter().map(|v| v.unwrap()).collect();
        Some(SymmetricProfile { values })
    }

    /// The `(n-1)`-variable function with `x_i` fixed to `b`. Remaining
    /// variables keep their relative order.
    pub fn restrict(&self, i: usize, b: bool) -> Result<TruthTable> {
        if i >= self.n {
            return Err(Error::Parameter(format!(
                "variable index {i} out of range for n = {}",
                self.n
            )));
        }
        if self.n == 1 {
            return Err(Error::Parameter(
                "cannot restrict a 1-variable function to 0 variables".into(),
            ));
        }
        let low_mask = (1usize << i) - 1;
        TruthTable::from_fn(self.n - 1, |j| {
            let full = (j & low_mask) | ((j & !low_mask) << 1) | ((b as usize) << i);
            self.get(full)
        })
    }

    /// True iff `f` is monotone: either non-decreasing or non-increasing
    /// under setting more input bits to 1.
    pub fn is_monotone(&self) -> bool {
        let mut increasing = true;
        let mut decreasing = true;
        for index in 0..self.size() {
            let v = self.get(index);
            for i in 0..self.n {
                if index & (1 << i) == 0 {
                    let up = self.get(index | (1 << i));
                    if v && !up {
                        increasing = false;
                    }
                    if !v && up {
                        decreasing = false;
                    }
                }
            }
            if !increasing && !decreasing {
                return false;
            }
        }
        increasing || decreasing
    }

    /// Bits packed as little-endian bytes, rendered as lowercase hex.
    /// Byte `j` holds entries `8j..8j+8`, entry `8j+k` at bit `k`.
    pub fn hex_bits(&self) -> String {
        let nbytes = self.size().div_ceil(8);
        let mut out = String::with_capacity(nbytes * 2);
        for byte_idx in 0..nbytes {
            let block = self.bits[byte_idx / 8];
            let byte = ((block >> ((byte_idx % 8) * 8)) & 0xff) as u8;
            out.push_str(&format!("{byte:02x}"));
        }
        out
    }

    pub fn from_hex(n: usize, hex: &str) -> Result<Self> {
        Self::check_n(n)?;
        let size = 1usize << n;
        let nbytes = size.div_ceil(8);
        if hex.len() != nbytes * 2 {
            return Err(Error::Parameter(format!(
                "hex table for n = {n} needs {} digits, got {}",
                nbytes * 2,
                hex.len()
            )));
        }
        let mut bytes = Vec::with_capacity(nbytes);
        for i in 0..nbytes {
            let byte = u8::from_str_radix(&hex[2 * i..2 * i + 2], 16)
                .map_err(|_| Error::Parameter(format!("invalid hex digit in '{hex}'")))?;
            bytes.push(byte);
        }
        let table = Self::from_fn(n, |i| (bytes[i / 8] >> (i % 8)) & 1 == 1)?;
        // Reject stray bits beyond 2^n.
        for (i, &byte) in bytes.iter().enumerate() {
            for k in 0..8 {
                if i * 8 + k >= size && (byte >> k) & 1 == 1 {
                    return Err(Error::Parameter(
                        "hex table has bits set beyond 2^n entries".into(),
                    ));
                }
            }
        }
        Ok(table)
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable(n={}, bits={})", self.n, self.hex_bits())
    }
}

/// Index of a bitstring input under the shared little-endian convention.
pub fn index_of_bits(x: &[bool]) -> usize {
    x.iter()
        .enumerate()
        .fold(0usize, |acc, (i, &b)| acc | ((b as usize) << i))
}

/// Inverse of [`index_of_bits`].
pub fn bits_of_index(index: usize, n: usize) -> Vec<bool> {
    (0..n).map(|i| (index >> i) & 1 == 1).collect()
}

/// Parse a textual bitstring (`x_0` first).
pub fn parse_bits(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::Parameter(format!("invalid bit '{other}'"))),
        })
        .collect()
}

/// Render a bitstring (`x_0` first).
pub fn format_bits(x: &[bool]) -> String {
    x.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Weight profile of a symmetric function: `values[k]` is `f` on inputs of
/// Hamming weight `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymmetricProfile {
    values: Vec<bool>,
}

impl SymmetricProfile {
    /// Profiles may describe functions wider than any explicit table, so the
    /// cap here is looser than [`MAX_VARS`].
    pub const MAX_PROFILE_VARS: usize = 64;

    pub fn new(values: Vec<bool>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::Parameter(
                "a profile needs at least n+1 = 2 entries".into(),
            ));
        }
        if values.len() > Self::MAX_PROFILE_VARS + 1 {
            return Err(Error::Capability(format!(
                "profiles support at most {} variables",
                Self::MAX_PROFILE_VARS
            )));
        }
        Ok(SymmetricProfile { values })
    }

    pub fn from_family(family: Family, n: usize, m: Option<usize>) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("variable count must be at least 1".into()));
        }
        let m = family.check_params(n, m)?;
        Self::new((0..=n).map(|k| family.value_at_weight(n, m, k)).collect())
    }

    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    pub fn value_at(&self, k: usize) -> bool {
        self.values[k]
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|&v| v == self.values[0])
    }

    /// The jump statistic: `min |2k - n + 1|` over weights `k` where the
    /// profile flips between `k` and `k+1`. Undefined for constant profiles.
    pub fn gamma(&self) -> Result<usize> {
        if self.is_constant() {
            return Err(Error::Domain(
                "the jump statistic is undefined for constant profiles".into(),
            ));
        }
        let n = self.n() as i64;
        Ok((0..self.n())
            .filter(|&k| self.values[k] != self.values[k + 1])
            .map(|k| (2 * k as i64 - n + 1).unsigned_abs() as usize)
            .min()
            .unwrap())
    }

    /// Materialize as a truth table (subject to the table-size cap).
    pub fn to_truth_table(&self) -> Result<TruthTable> {
        TruthTable::from_fn(self.n(), |i| self.values[i.count_ones() as usize])
    }
}

/// Embedding of AND on `n` variables into MAJORITY on `2n-1` variables:
/// the first `n-1` majority inputs are pinned to 0 and the AND inputs
/// occupy the remaining `n` positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AndEmbedding {
    pub and_vars: usize,
    pub majority_vars: usize,
    pub fixed_zero_vars: usize,
}

impl AndEmbedding {
    /// Pad an AND input out to a MAJORITY input.
    pub fn embed(&self, x: &[bool]) -> Result<Vec<bool>> {
        if x.len() != self.and_vars {
            return Err(Error::Parameter(format!(
                "embedding expects {} bits, got {}",
                self.and_vars,
                x.len()
            )));
        }
        let mut full = vec![false; self.fixed_zero_vars];
        full.extend_from_slice(x);
        Ok(full)
    }
}

/// MAJORITY on `2n-1` variables together with the input padding that turns
/// it into AND on `n` variables.
pub fn and_to_majority(n: usize) -> Result<(TruthTable, AndEmbedding)> {
    if n == 0 {
        return Err(Error::Parameter("variable count must be at least 1".into()));
    }
    let majority_vars = 2 * n - 1;
    let table = TruthTable::from_family(Family::Majority, majority_vars, None)?;
    let embedding = AndEmbedding {
        and_vars: n,
        majority_vars,
        fixed_zero_vars: n - 1,
    };
    Ok((table, embedding))
}

// JSON form: {"n": int, "bits": hex} with {"family": name, "n": int, "m": int?}
// accepted on input.
impl Serialize for TruthTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("TruthTable", 2)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("bits", &self.hex_bits())?;
        s.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TableRepr {
    Bits { n: usize, bits: String },
    Family {
        family: String,
        n: usize,
        #[serde(default)]
        m: Option<usize>,
    },
}

impl<'de> Deserialize<'de> for TruthTable {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match TableRepr::deserialize(deserializer)? {
            TableRepr::Bits { n, bits } => {
                TruthTable::from_hex(n, &bits).map_err(D::Error::custom)
            }
            TableRepr::Family { family, n, m } => {
                let family: Family = family.parse().map_err(D::Error::custom)?;
                TruthTable::from_family(family, n, m).map_err(D::Error::custom)
            }
        }
    }
}
