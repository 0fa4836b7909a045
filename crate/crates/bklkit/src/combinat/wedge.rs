// SPDX-License-Identifier: MIT OR Apache-2.0

//! Partitions, wedge indices and the super-duality bijection.
//!
//! A wedge index is a head `f` for the tensor part followed by a strictly
//! monotone tail: strictly decreasing for the natural side `V`, strictly
//! increasing for the dual side `W`. Semi-infinite tails are stored as
//! partitions and only expanded at a caller-chosen finite level:
//! `u_i = lambda_i + 1 - i` on the `V` side and `u_i = i - lambda_i` on the `W` side.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{parse_int_list, WeightFn};
use crate::error::{BklError, Result};

/// Which natural module the wedge part is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    /// Natural module, tails strictly decreasing; extends `b` by zeros.
    V,
    /// Restricted dual, tails strictly increasing; extends `b` by ones.
    W,
}

impl Side {
    /// The bit the wedge factors carry in the extended sequence.
    pub fn bit(self) -> u8 {
        match self {
            Side::V => 0,
            Side::W => 1,
        }
    }

    /// The other side.
    pub fn flip(self) -> Side {
        match self {
            Side::V => Side::W,
            Side::W => Side::V,
        }
    }

    /// True when `tail` is strictly monotone in this side's direction.
    pub fn is_sorted(self, tail: &[i32]) -> bool {
        match self {
            Side::V => tail.windows(2).all(|w| w[0] > w[1]),
            Side::W => tail.windows(2).all(|w| w[0] < w[1]),
        }
    }

    /// Sort `tail` in this side's direction (no duplicate check).
    pub fn sort(self, tail: &mut [i32]) {
        match self {
            Side::V => tail.sort_unstable_by(|a, b| b.cmp(a)),
            Side::W => tail.sort_unstable(),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if *self == Side::V { "V" } else { "W" })
    }
}

impl FromStr for Side {
    type Err = BklError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "V" | "v" => Ok(Side::V),
            "W" | "w" => Ok(Side::W),
            other => Err(BklError::Parse(format!("wedge side must be V or W, got {other:?}"))),
        }
    }
}

/// An integer partition, parts weakly decreasing and positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Validate and build; trailing zeros are dropped.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(BklError::InvalidInput(format!("{parts:?} is not a partition")));
        }
        Ok(Partition(parts))
    }

    /// The empty partition.
    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// Parts.
    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// The i-th part (0-based), 0 beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// True for the empty partition.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|lambda|`.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// The conjugate partition.
    pub fn conjugate(&self) -> Partition {
        let first = self.part(0);
        Partition(
            (1..=first)
                .map(|c| self.0.iter().filter(|&&p| p >= c).count() as u32)
                .collect(),
        )
    }

    /// All partitions of `n`.
    pub fn all_of_size(n: u32) -> Vec<Partition> {
        fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=n.min(max)).rev() {
                cur.push(p);
                rec(n - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    /// The first `level` tail values on the given side, or `None` when the
    /// partition has more than `level` parts.
    pub fn tail(&self, side: Side, level: usize) -> Option<Vec<i32>> {
        if self.len() > level {
            return None;
        }
        Some(
            (1..=level as i32)
                .map(|i| {
                    let p = self.part(i as usize - 1) as i32;
                    match side {
                        Side::V => p + 1 - i,
                        Side::W => i - p,
                    }
                })
                .collect(),
        )
    }

    /// Recover the partition from a finite tail, if the tail is of partition type
    /// (strictly monotone, all implied parts nonnegative).
    pub fn from_tail(side: Side, tail: &[i32]) -> Option<Partition> {
        if !side.is_sorted(tail) {
            return None;
        }
        let parts: Vec<i32> = tail
            .iter()
            .enumerate()
            .map(|(idx, &u)| {
                let i = idx as i32 + 1;
                match side {
                    Side::V => u - 1 + i,
                    Side::W => i - u,
                }
            })
            .collect();
        if parts.iter().any(|&p| p < 0) {
            return None;
        }
        Partition::new(parts.into_iter().map(|p| p as u32).collect()).ok()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Partition {
    type Err = BklError;
    fn from_str(s: &str) -> Result<Self> {
        let v = parse_int_list(s)?;
        if v.iter().any(|&x| x < 0) {
            return Err(BklError::Parse(format!("negative part in partition {s:?}")));
        }
        Partition::new(v.into_iter().map(|x| x as u32).collect())
    }
}

impl TryFrom<String> for Partition {
    type Error = BklError;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Partition> for String {
    fn from(p: Partition) -> String {
        p.to_string()
    }
}

/// The tail of a wedge index.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum Tail {
    /// Finitely many explicit values, strictly monotone in the side's direction.
    Finite(Vec<i32>),
    /// A semi-infinite tail, vacuum beyond the partition's length.
    Partition(Partition),
}

/// A basis index of `T^b (x) wedge^k V` or `T^b (x) wedge^k W`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct WedgeIndex {
    /// Values on the tensor factors.
    pub head: WeightFn,
    /// Natural or dual wedge.
    pub side: Side,
    /// The wedge tail.
    pub tail: Tail,
}

/// Kind of the wedge tail, for callers that only need the discriminant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TailKind {
    /// Finite strictly decreasing tail.
    VPlus,
    /// Finite strictly increasing tail.
    WMinus,
    /// Partition-encoded semi-infinite tail.
    Partition,
}

impl WedgeIndex {
    /// A finite wedge index; errors unless the tail is strictly monotone.
    pub fn finite(head: WeightFn, side: Side, tail: Vec<i32>) -> Result<Self> {
        if !side.is_sorted(&tail) {
            return Err(BklError::InvalidInput(format!(
                "wedge tail {tail:?} is not strictly {} ",
                if side == Side::V { "decreasing" } else { "increasing" }
            )));
        }
        Ok(WedgeIndex {
            head,
            side,
            tail: Tail::Finite(tail),
        })
    }

    /// A semi-infinite wedge index encoded by a partition.
    pub fn partition(head: WeightFn, side: Side, lambda: Partition) -> Self {
        WedgeIndex {
            head,
            side,
            tail: Tail::Partition(lambda),
        }
    }

    /// Discriminant of the tail.
    pub fn tail_kind(&self) -> TailKind {
        match (&self.tail, self.side) {
            (Tail::Partition(_), _) => TailKind::Partition,
            (Tail::Finite(_), Side::V) => TailKind::VPlus,
            (Tail::Finite(_), Side::W) => TailKind::WMinus,
        }
    }

    /// Flat index (head followed by tail) at the given finite level; `None`
    /// for a partition with more parts than `level` or a finite tail of another length.
    pub fn flatten(&self, level: usize) -> Option<WeightFn> {
        let tail = match &self.tail {
            Tail::Finite(t) if t.len() == level => t.clone(),
            Tail::Finite(_) => return None,
            Tail::Partition(p) => p.tail(self.side, level)?,
        };
        Some(self.head.concat(&tail))
    }
}

/// The bijection exchanging `V`-side and `W`-side partition tails by conjugation.
///
/// Works in both directions; the head is unchanged.
pub fn natural_bij(x: &WedgeIndex) -> Result<WedgeIndex> {
    match &x.tail {
        Tail::Partition(p) => Ok(WedgeIndex::partition(x.head.clone(), x.side.flip(), p.conjugate())),
        Tail::Finite(_) => Err(BklError::InvalidInput(
            "the duality bijection needs a partition-encoded tail".into(),
        )),
    }
}
