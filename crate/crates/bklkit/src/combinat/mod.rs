// SPDX-License-Identifier: MIT OR Apache-2.0

//! Index-level combinatorics: `0^m1^n`-sequences, weight functions, the
//! Bruhat ordering, weights of `gl(m|n)`, adjacency maps, partitions and the
//! super-duality bijection.
//!
//! Public functions that take a position use 1-based positions, mirroring the
//! usual notation `f(1), ..., f(m+n)`. Internally everything is 0-based.

mod bruhat;
mod wedge;
mod weights;

pub use bruhat::{bruhat_leq, bruhat_potential, down_moves, ideal, interval, move_closure, sharp, PotentialRange};
pub use wedge::{natural_bij, Partition, Side, Tail, TailKind, WedgeIndex};
pub use weights::{
    antidominant, f_to_weight, lambda_l, lambda_u, odd_root, supertrace, typical, weight_to_f, weyl_rho, SuperWeight,
};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{BklError, Result};

/// A `0^m1^n`-sequence: the tensor order of natural (`0`) and dual (`1`) factors.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SignedSeq {
    bits: Vec<u8>,
}

impl SignedSeq {
    /// Build from bits; every entry must be 0 or 1.
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(BklError::Parse(format!(
                "sequence entries must be 0 or 1, got {bits:?}"
            )));
        }
        Ok(SignedSeq { bits })
    }

    /// The standard sequence `0^m 1^n`.
    pub fn standard(m: usize, n: usize) -> Self {
        let mut bits = vec![0; m];
        bits.extend(std::iter::repeat(1).take(n));
        SignedSeq { bits }
    }

    /// All sequences with `m` zeros and `n` ones, in lexicographic order.
    pub fn all_with(m: usize, n: usize) -> Vec<SignedSeq> {
        let len = m + n;
        (0u32..(1u32 << len))
            .filter(|mask| mask.count_ones() as usize == n)
            .map(|mask| SignedSeq {
                bits: (0..len).map(|i| ((mask >> (len - 1 - i)) & 1) as u8).collect(),
            })
            .collect()
    }

    /// All sequences of total length `len`.
    pub fn all_of_len(len: usize) -> Vec<SignedSeq> {
        (0..=len).flat_map(|n| Self::all_with(len - n, n)).collect()
    }

    /// The bits.
    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Total length `m + n`.
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    /// True for the empty sequence.
    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Number of zeros.
    pub fn m(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 0).count()
    }

    /// Number of ones.
    pub fn n(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    /// Bit at 0-based position `i`.
    pub fn bit(&self, i: usize) -> u8 {
        self.bits[i]
    }

    /// `(-1)^{b_i}` at 0-based position `i`.
    pub fn sign(&self, i: usize) -> i32 {
        if self.bits[i] == 0 {
            1
        } else {
            -1
        }
    }

    /// True for `0^m 1^n`.
    pub fn is_standard(&self) -> bool {
        self.bits.windows(2).all(|w| w[0] <= w[1])
    }

    /// Append `k` copies of `bit`.
    pub fn extended(&self, bit: u8, k: usize) -> SignedSeq {
        let mut bits = self.bits.clone();
        bits.extend(std::iter::repeat(bit).take(k));
        SignedSeq { bits }
    }

    /// The prefix of length `len`.
    pub fn prefix(&self, len: usize) -> SignedSeq {
        SignedSeq {
            bits: self.bits[..len].to_vec(),
        }
    }

    /// The suffix starting at 0-based position `start`.
    pub fn suffix(&self, start: usize) -> SignedSeq {
        SignedSeq {
            bits: self.bits[start..].to_vec(),
        }
    }

    /// Swap the entries at 0-based positions `i` and `i + 1`.
    pub fn swapped(&self, i: usize) -> SignedSeq {
        let mut bits = self.bits.clone();
        bits.swap(i, i + 1);
        SignedSeq { bits }
    }

    /// The 1-based position `kappa` with `self = (.., 0, 1, ..)` and
    /// `other = (.., 1, 0, ..)` at `kappa, kappa + 1`, if the two are adjacent in that order.
    pub fn adjacency_to(&self, other: &SignedSeq) -> Option<usize> {
        if self.len() != other.len() {
            return None;
        }
        let diff: Vec<usize> = (0..self.len()).filter(|&i| self.bits[i] != other.bits[i]).collect();
        match diff.as_slice() {
            [i, j] if *j == i + 1 && self.bits[*i] == 0 && self.bits[*j] == 1 => Some(i + 1),
            _ => None,
        }
    }

    /// Whether the two sequences differ by swapping one neighbouring `(0,1)` pair (either order).
    pub fn is_adjacent(&self, other: &SignedSeq) -> bool {
        self.adjacency_to(other).is_some() || other.adjacency_to(self).is_some()
    }

    /// All adjacent pairs `(b, b')` with `b = (.., 0, 1, ..)` among sequences of the given shape.
    pub fn adjacent_pairs(m: usize, n: usize) -> Vec<AdjacentPair> {
        let mut out = Vec::new();
        for b in Self::all_with(m, n) {
            for i in 0..b.len().saturating_sub(1) {
                if b.bits[i] == 0 && b.bits[i + 1] == 1 {
                    out.push(AdjacentPair::from_kappa(b.clone(), i + 1).expect("constructed adjacent"));
                }
            }
        }
        out
    }
}

impl fmt::Display for SignedSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignedSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b({self})")
    }
}

impl FromStr for SignedSeq {
    type Err = BklError;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(BklError::Parse(format!("invalid sequence {s:?}: only 0 and 1 allowed"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(SignedSeq { bits })
    }
}

impl TryFrom<String> for SignedSeq {
    type Error = BklError;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SignedSeq> for String {
    fn from(b: SignedSeq) -> String {
        b.to_string()
    }
}

/// A function `f: [N] -> Z`, the index of a standard monomial.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct WeightFn(pub Vec<i32>);

impl WeightFn {
    /// Wrap a vector of values.
    pub fn new(v: Vec<i32>) -> Self {
        WeightFn(v)
    }

    /// Number of positions.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// True for the empty function.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Values as a slice.
    pub fn as_slice(&self) -> &[i32] {
        &self.0
    }

    /// `max |f(i)|` (0 for the empty function).
    pub fn max_abs(&self) -> i32 {
        self.0.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    /// Add `p` to every entry (the shift by `p` times the all-ones function).
    pub fn shifted(&self, p: i32) -> WeightFn {
        WeightFn(self.0.iter().map(|x| x + p).collect())
    }

    /// Swap 0-based positions `i` and `j`.
    pub fn swapped(&self, i: usize, j: usize) -> WeightFn {
        let mut v = self.0.clone();
        v.swap(i, j);
        WeightFn(v)
    }

    /// Concatenate with a tail.
    pub fn concat(&self, tail: &[i32]) -> WeightFn {
        let mut v = self.0.clone();
        v.extend_from_slice(tail);
        WeightFn(v)
    }
}

impl fmt::Display for WeightFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for WeightFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for WeightFn {
    type Err = BklError;
    fn from_str(s: &str) -> Result<Self> {
        parse_int_list(s).map(WeightFn)
    }
}

impl TryFrom<String> for WeightFn {
    type Error = BklError;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<WeightFn> for String {
    fn from(f: WeightFn) -> String {
        f.to_string()
    }
}

impl From<Vec<i32>> for WeightFn {
    fn from(v: Vec<i32>) -> Self {
        WeightFn(v)
    }
}

/// Parse `"4,3,5,2,1"`; the empty string is the empty list.
pub(crate) fn parse_int_list(s: &str) -> Result<Vec<i32>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i32>()
                .map_err(|_| BklError::Parse(format!("invalid integer {t:?} in list {s:?}")))
        })
        .collect()
}

/// An adjacent pair `b = (b1, 0, 1, b2)`, `b' = (b1, 1, 0, b2)` with the
/// distinguished 1-based position `kappa` of the swapped `(0, 1)` in `b`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AdjacentPair {
    b: SignedSeq,
    b_prime: SignedSeq,
    kappa: usize,
}

impl AdjacentPair {
    /// Validate that `b` and `b_prime` are adjacent with `b` carrying the `(0, 1)`.
    pub fn new(b: SignedSeq, b_prime: SignedSeq) -> Result<Self> {
        match b.adjacency_to(&b_prime) {
            Some(kappa) => Ok(AdjacentPair { b, b_prime, kappa }),
            None => Err(BklError::NotAdjacent(b.to_string(), b_prime.to_string())),
        }
    }

    /// Swap the `(0, 1)` of `b` at 1-based positions `kappa, kappa + 1`.
    pub fn from_kappa(b: SignedSeq, kappa: usize) -> Result<Self> {
        if kappa == 0 || kappa >= b.len() || b.bit(kappa - 1) != 0 || b.bit(kappa) != 1 {
            return Err(BklError::InvalidInput(format!(
                "sequence {b} has no (0,1) at positions {kappa},{}",
                kappa + 1
            )));
        }
        let b_prime = b.swapped(kappa - 1);
        Ok(AdjacentPair { b, b_prime, kappa })
    }

    /// The sequence with `(0, 1)` at `kappa`.
    pub fn b(&self) -> &SignedSeq {
        &self.b
    }

    /// The sequence with `(1, 0)` at `kappa`.
    pub fn b_prime(&self) -> &SignedSeq {
        &self.b_prime
    }

    /// 1-based position of the swapped pair.
    pub fn kappa(&self) -> usize {
        self.kappa
    }

    /// True when `f(kappa) = f(kappa + 1)`.
    pub fn is_tied(&self, f: &WeightFn) -> bool {
        f.0[self.kappa - 1] == f.0[self.kappa]
    }

    /// Add `delta` to both entries at `kappa, kappa + 1`.
    pub fn bump(&self, f: &WeightFn, delta: i32) -> WeightFn {
        let mut v = f.0.clone();
        v[self.kappa - 1] += delta;
        v[self.kappa] += delta;
        WeightFn(v)
    }

    /// `f^L`: swap the distinguished entries if they differ, otherwise raise both by one.
    pub fn f_l(&self, f: &WeightFn) -> WeightFn {
        if self.is_tied(f) {
            self.bump(f, 1)
        } else {
            f.swapped(self.kappa - 1, self.kappa)
        }
    }

    /// `f^U`: swap the distinguished entries if they differ, otherwise lower both by one.
    pub fn f_u(&self, f: &WeightFn) -> WeightFn {
        if self.is_tied(f) {
            self.bump(f, -1)
        } else {
            f.swapped(self.kappa - 1, self.kappa)
        }
    }
}

/// `f^L` for an adjacent pair given as two sequences.
pub fn adjacent_f_l(b: &SignedSeq, b_prime: &SignedSeq, f: &WeightFn) -> Result<WeightFn> {
    let pair = AdjacentPair::new(b.clone(), b_prime.clone())?;
    check_len(b, f)?;
    Ok(pair.f_l(f))
}

/// `f^U` for an adjacent pair given as two sequences.
pub fn adjacent_f_u(b: &SignedSeq, b_prime: &SignedSeq, f: &WeightFn) -> Result<WeightFn> {
    let pair = AdjacentPair::new(b.clone(), b_prime.clone())?;
    check_len(b, f)?;
    Ok(pair.f_u(f))
}

pub(crate) fn check_len(b: &SignedSeq, f: &WeightFn) -> Result<()> {
    if b.len() != f.len() {
        return Err(BklError::InvalidInput(format!(
            "weight function {f} has length {} but sequence {b} has length {}",
            f.len(),
            b.len()
        )));
    }
    Ok(())
}
