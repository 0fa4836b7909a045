// SPDX-License-Identifier: MIT OR Apache-2.0

//! The Bruhat ordering of type `b` via the `sharp` statistics, the elementary
//! down moves, interval and ideal enumeration.

use std::collections::{BTreeSet, VecDeque};

use super::{check_len, SignedSeq, WeightFn};
use crate::error::{BklError, Result};

/// `sharp(f, a, j) = sum over i >= j with f(i) <= a of (-1)^{b_i}`, `j` 1-based.
pub fn sharp(b: &SignedSeq, f: &WeightFn, a: i32, j: usize) -> i32 {
    (j.max(1) - 1..f.len())
        .filter(|&i| f.0[i] <= a)
        .map(|i| b.sign(i))
        .sum()
}

/// Suffix sharp table: `table[j][a - lo]` is `sharp(f, a, j + 1)`, with an extra
/// all-zero row for `j = len`.
fn sharp_table(b: &SignedSeq, f: &[i32], lo: i32, hi: i32) -> Vec<Vec<i32>> {
    let width = (hi - lo + 1) as usize;
    let mut table = vec![vec![0; width]; f.len() + 1];
    for i in (0..f.len()).rev() {
        let (head, tail) = table.split_at_mut(i + 1);
        let row = &mut head[i];
        row.copy_from_slice(&tail[0]);
        let s = b.sign(i);
        let start = (f[i] - lo).max(0) as usize;
        if f[i] <= hi {
            for x in row.iter_mut().skip(start) {
                *x += s;
            }
        }
    }
    table
}

fn value_range(f: &[i32], g: &[i32]) -> (i32, i32) {
    let lo = f.iter().chain(g).copied().min().unwrap_or(0) - 1;
    let hi = f.iter().chain(g).copied().max().unwrap_or(0);
    (lo, hi)
}

/// `g <= f` in the Bruhat ordering of type `b`.
///
/// The statistics are constant for `a` below the smallest entry and above the
/// largest, so the scan covers `[min - 1, max]` only.
pub fn bruhat_leq(b: &SignedSeq, g: &WeightFn, f: &WeightFn) -> bool {
    if g.len() != f.len() || f.len() != b.len() {
        return false;
    }
    let (lo, hi) = value_range(&f.0, &g.0);
    let tf = sharp_table(b, &f.0, lo, hi);
    let tg = sharp_table(b, &g.0, lo, hi);
    if tf[0] != tg[0] {
        return false;
    }
    tf.iter()
        .zip(&tg)
        .all(|(rf, rg)| rf.iter().zip(rg).all(|(x, y)| y <= x))
}

/// Fixed value range used to compare potentials across a whole window.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PotentialRange {
    /// Smallest `a` considered.
    pub lo: i32,
    /// Largest `a` considered.
    pub hi: i32,
}

impl PotentialRange {
    /// The range covering every index with entries in `[-k, k]`.
    pub fn for_window(k: i32) -> Self {
        PotentialRange { lo: -k - 1, hi: k }
    }
}

/// `sum over a in range and all j of sharp(f, a, j)`.
///
/// Strictly monotone along the Bruhat ordering (for indices whose entries lie
/// in the range), hence a linear extension key.
pub fn bruhat_potential(b: &SignedSeq, f: &[i32], range: PotentialRange) -> i64 {
    let mut total: i64 = 0;
    let mut suffix = vec![0i32; (range.hi - range.lo + 1) as usize];
    for i in (0..f.len()).rev() {
        let s = b.sign(i);
        let start = (f[i] - range.lo).max(0) as usize;
        if f[i] <= range.hi {
            for x in suffix.iter_mut().skip(start) {
                *x += s;
            }
        }
        total += suffix.iter().map(|&x| x as i64).sum::<i64>();
    }
    total
}

/// All `g` with `f -> g` an elementary down move.
pub fn down_moves(b: &SignedSeq, f: &WeightFn) -> BTreeSet<WeightFn> {
    let mut out = BTreeSet::new();
    let n = f.len().min(b.len());
    for i in 0..n {
        for j in i + 1..n {
            let (fi, fj) = (f.0[i], f.0[j]);
            match (b.bit(i), b.bit(j)) {
                (0, 0) if fi > fj => {
                    out.insert(f.swapped(i, j));
                }
                (1, 1) if fi < fj => {
                    out.insert(f.swapped(i, j));
                }
                (x, y) if x != y && fi == fj => {
                    let mut v = f.0.clone();
                    v[i] -= b.sign(i);
                    v[j] += b.sign(j);
                    out.insert(WeightFn(v));
                }
                _ => {}
            }
        }
    }
    out
}

/// Reachability closure of [`down_moves`] restricted to entries with `|h(i)| <= bound`.
///
/// Exposed as a diagnostic: it is in general strictly smaller than the Bruhat ideal.
pub fn move_closure(b: &SignedSeq, f: &WeightFn, bound: i32) -> BTreeSet<WeightFn> {
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(f.clone());
    queue.push_back(f.clone());
    while let Some(h) = queue.pop_front() {
        for g in down_moves(b, &h) {
            if g.max_abs() <= bound && seen.insert(g.clone()) {
                queue.push_back(g);
            }
        }
    }
    seen
}

/// All `h` with entries in `[-k, k]` and `h <= f`.
///
/// Depth-first from the last position, pruning on the suffix inequalities
/// and on the total-weight equality that must hold at `j = 1`.
pub fn ideal(b: &SignedSeq, f: &WeightFn, k: i32) -> Vec<WeightFn> {
    if f.len() != b.len() {
        return Vec::new();
    }
    let lo = -k - 1;
    let hi = k;
    let tf = sharp_table(b, &f.0, lo, hi);
    let n = f.len();
    // Count of zeros and ones in each prefix [0, j).
    let mut zeros = vec![0i32; n + 1];
    let mut ones = vec![0i32; n + 1];
    for i in 0..n {
        zeros[i + 1] = zeros[i] + i32::from(b.bit(i) == 0);
        ones[i + 1] = ones[i] + i32::from(b.bit(i) == 1);
    }
    let width = (hi - lo + 1) as usize;
    let mut out = Vec::new();
    let mut cur = vec![0i32; n];
    let suffix = vec![0i32; width];
    ideal_dfs(b, &tf, &zeros, &ones, k, lo, n, &mut cur, suffix, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn ideal_dfs(
    b: &SignedSeq,
    tf: &[Vec<i32>],
    zeros: &[i32],
    ones: &[i32],
    k: i32,
    lo: i32,
    pos: usize,
    cur: &mut Vec<i32>,
    suffix: Vec<i32>,
    out: &mut Vec<WeightFn>,
) {
    if pos == 0 {
        if suffix == tf[0] {
            out.push(WeightFn(cur.clone()));
        }
        return;
    }
    let i = pos - 1;
    let s = b.sign(i);
    for v in -k..=k {
        let mut next = suffix.clone();
        let start = (v - lo) as usize;
        for x in next.iter_mut().skip(start) {
            *x += s;
        }
        // Suffix inequality at j = i + 1 and feasibility of the final equality.
        let ok = next.iter().zip(&tf[i]).zip(&tf[0]).all(|((&h, &fv), &target)| {
            let gap = target - h;
            h <= fv && gap <= zeros[i] && gap >= -ones[i]
        });
        if ok {
            cur[i] = v;
            ideal_dfs(b, tf, zeros, ones, k, lo, i, cur, next, out);
        }
    }
}

/// All `h` with `g <= h <= f`; errors unless `g <= f`.
///
/// Every such `h` satisfies `|h(i)| <= max |f(j)|, |g(j)|`, so the enumeration
/// runs over that box.
pub fn interval(b: &SignedSeq, g: &WeightFn, f: &WeightFn) -> Result<Vec<WeightFn>> {
    check_len(b, f)?;
    check_len(b, g)?;
    if !bruhat_leq(b, g, f) {
        return Err(BklError::NotComparable {
            b: b.to_string(),
            g: g.to_string(),
            f: f.to_string(),
        });
    }
    let bound = f.max_abs().max(g.max_abs());
    Ok(ideal(b, f, bound).into_iter().filter(|h| bruhat_leq(b, g, h)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(s: &str) -> SignedSeq {
        s.parse().unwrap()
    }

    fn w(s: &str) -> WeightFn {
        s.parse().unwrap()
    }

    /// Literal definition of the ordering over a generous value range.
    fn bruhat_brute(b: &SignedSeq, g: &WeightFn, f: &WeightFn) -> bool {
        for j in 1..=b.len() {
            for a in -20..=20 {
                let (x, y) = (sharp(b, g, a, j), sharp(b, f, a, j));
                if x > y || (j == 1 && x != y) {
                    return false;
                }
            }
        }
        true
    }

    fn all_in_box(len: usize, r: i32) -> Vec<WeightFn> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|v: Vec<i32>| {
                    (-r..=r).map(move |x| {
                        let mut u = v.clone();
                        u.push(x);
                        u
                    })
                })
                .collect();
        }
        out.into_iter().map(WeightFn).collect()
    }

    #[test]
    fn sharp_examples() {
        assert_eq!(sharp(&b("01"), &w("2,2"), 2, 1), 0);
        assert_eq!(sharp(&b("0"), &w("5"), 4, 1), 0);
        // Literal summation over i in {2..5}.
        let (bb, f) = (b("01010"), w("4,3,5,2,1"));
        let literal: i32 = (1..5)
            .filter(|&i| f.0[i] <= 3)
            .map(|i| if bb.bit(i) == 0 { 1 } else { -1 })
            .sum();
        assert_eq!(sharp(&bb, &f, 3, 2), literal);
        assert_eq!(literal, -1);
    }

    #[test]
    fn bruhat_examples() {
        let bb = b("01010");
        let (f, g) = (w("4,3,5,2,1"), w("1,2,4,3,5"));
        assert!(bruhat_leq(&bb, &g, &f));
        assert!(bruhat_leq(&bb, &f, &f));
        assert!(bruhat_leq(&b("01"), &w("1,1"), &w("2,2")));
        assert!(bruhat_brute(&b("01"), &w("1,1"), &w("2,2")));
        assert!(!bruhat_leq(&b("01"), &w("2,2"), &w("1,1")));
    }

    #[test]
    fn down_move_examples() {
        let moves = down_moves(&b("01"), &w("2,2"));
        assert_eq!(moves.into_iter().collect::<Vec<_>>(), vec![w("1,1")]);
        assert!(down_moves(&b("00"), &w("1,2")).is_empty());
        // The closure misses g although g is below f.
        let bb = b("01010");
        let (f, g) = (w("4,3,5,2,1"), w("1,2,4,3,5"));
        let closure = move_closure(&bb, &f, 5);
        assert!(!closure.contains(&g));
        assert!(closure.iter().all(|h| bruhat_leq(&bb, h, &f)));
    }

    #[test]
    fn interval_examples() {
        let bb = b("01");
        assert_eq!(interval(&bb, &w("2,2"), &w("2,2")).unwrap(), vec![w("2,2")]);
        let mut iv = interval(&bb, &w("1,1"), &w("2,2")).unwrap();
        iv.sort();
        assert_eq!(iv, vec![w("1,1"), w("2,2")]);
        // Brute-force scan of the box |h(i)| <= 2 agrees.
        let brute: Vec<WeightFn> = all_in_box(2, 2)
            .into_iter()
            .filter(|h| bruhat_brute(&bb, &w("1,1"), h) && bruhat_brute(&bb, h, &w("2,2")))
            .collect();
        assert_eq!(brute, iv);
        let mut iv = interval(&b("00"), &w("1,2"), &w("2,1")).unwrap();
        iv.sort();
        assert_eq!(iv, vec![w("1,2"), w("2,1")]);
        assert!(interval(&bb, &w("2,2"), &w("1,1")).is_err());
    }

    #[test]
    fn ideal_matches_brute_force() {
        for len in 1..=3 {
            for bb in SignedSeq::all_of_len(len) {
                let boxed = all_in_box(len, 2);
                for f in boxed.iter().step_by(3) {
                    let mut fast = ideal(&bb, f, 2);
                    fast.sort();
                    let brute: Vec<WeightFn> = boxed.iter().filter(|h| bruhat_brute(&bb, h, f)).cloned().collect();
                    assert_eq!(fast, brute, "b = {bb}, f = {f}");
                }
            }
        }
    }

    #[test]
    fn closure_equals_order_for_standard_and_opposite() {
        for len in 1..=4usize {
            for n in 0..=len {
                let m = len - n;
                let st = SignedSeq::standard(m, n);
                let mut opp_bits = vec![1u8; n];
                opp_bits.extend(std::iter::repeat(0).take(m));
                let opp = SignedSeq::new(opp_bits).unwrap();
                for bb in [st, opp] {
                    let r = if len == 4 { 1 } else { 2 };
                    for f in all_in_box(len, r) {
                        let closure = move_closure(&bb, &f, r);
                        let order: BTreeSet<WeightFn> = ideal(&bb, &f, r).into_iter().collect();
                        assert_eq!(closure, order, "b = {bb}, f = {f}");
                    }
                }
            }
        }
    }

    #[test]
    fn potential_is_strictly_monotone() {
        let bb = b("0110");
        let range = PotentialRange::for_window(2);
        for f in all_in_box(4, 1) {
            for g in ideal(&bb, &f, 2) {
                if g != f {
                    assert!(bruhat_potential(&bb, &g.0, range) < bruhat_potential(&bb, &f.0, range));
                }
            }
        }
    }

    fn arb_case() -> impl Strategy<Value = (SignedSeq, WeightFn, WeightFn, WeightFn)> {
        (1usize..=4).prop_flat_map(|len| {
            (
                proptest::collection::vec(0u8..=1, len),
                proptest::collection::vec(-2i32..=2, len),
                proptest::collection::vec(-2i32..=2, len),
                proptest::collection::vec(-2i32..=2, len),
            )
                .prop_map(|(bits, f, g, h)| (SignedSeq::new(bits).unwrap(), WeightFn(f), WeightFn(g), WeightFn(h)))
        })
    }

    proptest! {
        #[test]
        fn partial_order_axioms((bb, f, g, h) in arb_case()) {
            prop_assert!(bruhat_leq(&bb, &f, &f));
            if bruhat_leq(&bb, &f, &g) && bruhat_leq(&bb, &g, &f) {
                prop_assert_eq!(&f, &g);
            }
            if bruhat_leq(&bb, &f, &g) && bruhat_leq(&bb, &g, &h) {
                prop_assert!(bruhat_leq(&bb, &f, &h));
            }
            prop_assert_eq!(bruhat_leq(&bb, &f, &g), bruhat_brute(&bb, &f, &g));
        }

        #[test]
        fn shift_preserves_order((bb, f, g, _h) in arb_case(), p in -3i32..=3) {
            prop_assert_eq!(bruhat_leq(&bb, &f, &g), bruhat_leq(&bb, &f.shifted(p), &g.shifted(p)));
        }

        #[test]
        fn moves_are_sound((bb, f, _g, _h) in arb_case()) {
            for g in move_closure(&bb, &f, 3) {
                prop_assert!(bruhat_leq(&bb, &g, &f));
            }
        }

        #[test]
        fn intervals_respect_box_bound((bb, f, g, _h) in arb_case()) {
            if bruhat_leq(&bb, &g, &f) {
                let bound = f.max_abs().max(g.max_abs());
                for h in interval(&bb, &g, &f).unwrap() {
                    prop_assert!(h.max_abs() <= bound);
                }
            }
        }
    }
}
