// SPDX-License-Identifier: MIT OR Apache-2.0
//! Property suites over exhaustive or seeded families of small cases.
//!
//! Each check returns the number of items it examined, or the first
//! counterexample as an error. [`run_suite`] drives them from the command
//! line; the acceptance harness calls the individual checks with pinned
//! parameters.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bar::bar_table;
use crate::canonical::{
    bkl, check_adjacency, check_parabolic_bases, check_superduality, check_tensor_wedge, check_truncation,
    lusztig_solve, superduality_bruhat_check, BasisKind, Solver,
};
use crate::characters::{character, odd_reflection_path, CharacterKind};
use crate::combinat::{antidominant, f_to_weight, typical, AdjacentPair, Partition, Side, SignedSeq, WeightFn};
use crate::error::{BklError, Result};
use crate::fock::{act, ChevalleyGen, Window};
use crate::oracle::{brute_bar_uniqueness, kl_dictionary_check, rank2_forms, Rank2Case};

/// A named family of checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    /// Closed forms in the two mixed rank-2 spaces.
    Rank2,
    /// The bar map is a unitriangular involution on every window.
    Involution,
    /// Degree classes, diagonals, and positivity of all coefficients.
    Positivity,
    /// Parabolic coefficients agree across adjacent sequences.
    Adjacency,
    /// Natural and dual wedge tails give the same coefficients.
    Superduality,
    /// Columns are stable under window and wedge truncation.
    Truncation,
    /// Wedge coefficients agree with tensor ones.
    TensorWedge,
    /// Columns commute with shifting all entries.
    Shift,
    /// Agreement with the Hecke algebra oracle and brute-force bar.
    KlOracle,
    /// Character coherence under odd reflections.
    Characters,
    /// Every suite above.
    All,
}

impl Suite {
    /// All individual suites, in running order.
    pub fn each() -> [Suite; 10] {
        use Suite::*;
        [
            Rank2,
            Involution,
            Positivity,
            Adjacency,
            Superduality,
            Truncation,
            TensorWedge,
            Shift,
            KlOracle,
            Characters,
        ]
    }

    /// The command-line name.
    pub fn name(self) -> &'static str {
        match self {
            Suite::Rank2 => "rank2",
            Suite::Involution => "involution",
            Suite::Positivity => "positivity",
            Suite::Adjacency => "adjacency",
            Suite::Superduality => "superduality",
            Suite::Truncation => "truncation",
            Suite::TensorWedge => "tensor-wedge",
            Suite::Shift => "shift",
            Suite::KlOracle => "kl-oracle",
            Suite::Characters => "characters",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = BklError;
    fn from_str(s: &str) -> Result<Self> {
        Suite::each()
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s.trim())
            .ok_or_else(|| BklError::Parse(format!("unknown suite {s:?}")))
    }
}

/// Size limits for [`run_suite`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Largest `m + n` examined.
    pub max_rank: usize,
    /// Largest window level examined.
    pub max_window: i32,
    /// Seed for the randomised suites.
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_rank: 3,
            max_window: 3,
            seed: 2024,
        }
    }
}

/// Result of one suite.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteOutcome {
    /// Which suite ran.
    pub suite: Suite,
    /// Number of items examined.
    pub checked: usize,
    /// Wall-clock time.
    pub elapsed: Duration,
}

/// Sequences of every length in `lo..=hi`.
pub fn sequences(lo: usize, hi: usize) -> Vec<SignedSeq> {
    (lo..=hi).flat_map(SignedSeq::all_of_len).collect()
}

/// Adjacent pairs among sequences of length `2..=max_rank`.
pub fn adjacent_pairs_up_to(max_rank: usize) -> Vec<AdjacentPair> {
    (2..=max_rank)
        .flat_map(|len| (0..=len).flat_map(move |m| SignedSeq::adjacent_pairs(m, len - m)))
        .collect()
}

/// Compare every canonical and dual column of `01` and `10` at each level
/// `1..=max_k` with the closed forms. Returns the number of columns.
pub fn check_rank2(max_k: i32) -> Result<usize> {
    let mut n = 0;
    for case in [Rank2Case::VW, Rank2Case::WV] {
        for k in 1..=max_k {
            let window = Window::tensor(case.seq(), k);
            let table = bar_table(&window)?;
            let t = lusztig_solve(&table, BasisKind::Canonical)?;
            let l = lusztig_solve(&table, BasisKind::Dual)?;
            for f in window.basis() {
                let (ft, fl) = rank2_forms(case, &f, k)?;
                for (got, want, kind) in [(&t.columns[&f], &ft, "canonical"), (&l.columns[&f], &fl, "dual")] {
                    if &got.entries != want.terms() {
                        return Err(BklError::Invariant(format!(
                            "{kind} column {f} over {} at level {k} differs from the closed form",
                            case.seq()
                        )));
                    }
                    n += 1;
                }
            }
        }
    }
    Ok(n)
}

/// Build the bar table of every sequence of length `1..=max_rank` at every
/// level `1..=max_k`; construction checks unitriangularity and that the map
/// squares to the identity on the full window. Returns the number of rows.
pub fn check_involution(max_rank: usize, max_k: i32) -> Result<usize> {
    let mut n = 0;
    for b in sequences(1, max_rank) {
        for k in 1..=max_k {
            n += bar_table(&Window::tensor(b.clone(), k))?.len();
        }
    }
    Ok(n)
}

/// Solve both tables of every sequence of length `1..=max_rank` at every
/// level `1..=max_k` and check unit diagonals, degree classes (`qZ[q]` for
/// canonical, `q^{-1}Z[q^{-1}]` for dual), and Bruhat support. Returns the
/// number of columns.
pub fn check_triangularity(max_rank: usize, max_k: i32) -> Result<usize> {
    let mut n = 0;
    for b in sequences(1, max_rank) {
        for k in 1..=max_k {
            let table = bar_table(&Window::tensor(b.clone(), k))?;
            for kind in BasisKind::both() {
                for col in lusztig_solve(&table, kind)?.columns.values() {
                    col.check_shape()?;
                    n += 1;
                }
            }
        }
    }
    Ok(n)
}

/// Totals from [`check_positivity`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PositivityReport {
    /// Columns whose shape and positivity were checked.
    pub columns: usize,
    /// Off-diagonal coefficients examined.
    pub entries: usize,
}

/// Solve both tables of every sequence of length `1..=max_rank` at level
/// `max_k` and check diagonals, degree classes, support, and positivity:
/// `t ∈ N[q]` and `l(−q^{-1}) ∈ N[q]`.
pub fn check_positivity(max_rank: usize, max_k: i32) -> Result<PositivityReport> {
    let mut report = PositivityReport::default();
    for b in sequences(1, max_rank) {
        let table = bar_table(&Window::tensor(b, max_k))?;
        for kind in BasisKind::both() {
            for col in lusztig_solve(&table, kind)?.columns.values() {
                col.check_shape()?;
                col.check_positivity()?;
                report.columns += 1;
                report.entries += col.len() - 1;
            }
        }
    }
    Ok(report)
}

/// For every sequence of length `1..=max_rank` at level `k`, expand
/// `E_a T_f` and `F_a T_f` in the canonical basis and check that every
/// coefficient lies in `N[q, q^{-1}]`. Returns the number of expansions.
pub fn check_chevalley_positivity(max_rank: usize, k: i32) -> Result<usize> {
    let mut n = 0;
    for b in sequences(1, max_rank) {
        let window = Window::tensor(b.clone(), k);
        let mut solver = Solver::new(window.clone());
        for f in window.basis() {
            let t = solver.column(&f, BasisKind::Canonical)?.to_vector();
            for a in window.generator_range() {
                for gen in [ChevalleyGen::e(a), ChevalleyGen::f(a)] {
                    let v = act(gen, &t)?;
                    for (g, c) in solver.expand(&v, BasisKind::Canonical)? {
                        if !c.is_nonneg() {
                            return Err(BklError::Invariant(format!(
                                "over {b}: {gen:?} T_{f} has coefficient {c} at T_{g}"
                            )));
                        }
                    }
                    n += 1;
                }
            }
        }
    }
    Ok(n)
}

/// Compare `count` random columns with their shifts by a random `p`, on
/// the indices inside both automatically chosen windows. Returns the number of column pairs compared.
pub fn check_shift(count: usize, max_rank: usize, seed: u64) -> Result<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let len = rng.gen_range(1..=max_rank);
        let b = SignedSeq::new((0..len).map(|_| rng.gen_range(0..=1)).collect())?;
        let f = WeightFn::new((0..len).map(|_| rng.gen_range(-2..=2)).collect());
        let p = rng.gen_range(-3..=3);
        let kind = if rng.gen_bool(0.5) {
            BasisKind::Canonical
        } else {
            BasisKind::Dual
        };
        let base = bkl(&b, &f, kind)?;
        let moved = bkl(&b, &f.shifted(p), kind)?;
        // Dual columns can be infinite sums cut off by the window, so compare
        // on the indices that both windows contain.
        let (kb, km) = (base.window.k, moved.window.k);
        let shifted: BTreeMap<WeightFn, _> = base
            .entries
            .iter()
            .map(|(g, c)| (g.shifted(p), c.clone()))
            .filter(|(h, _)| h.max_abs() <= km)
            .collect();
        let common: BTreeMap<WeightFn, _> = moved
            .entries
            .iter()
            .filter(|(h, _)| h.shifted(-p).max_abs() <= kb)
            .map(|(h, c)| (h.clone(), c.clone()))
            .collect();
        if shifted != common {
            return Err(BklError::Invariant(format!(
                "{kind} column {f} over {b} is not shift invariant by {p}"
            )));
        }
    }
    Ok(count)
}

/// Totals from [`check_adjacency_all`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AdjacencySummary {
    /// Adjacent pairs examined.
    pub pairs: usize,
    /// Column pairs compared.
    pub columns: usize,
    /// Coefficient pairs compared.
    pub entries: usize,
}

/// For every adjacent pair with `m + n ≤ max_rank`, compute both parabolic
/// tables on each side at level `k` and compare them under relabelling at all
/// indices bounded by `k − 2`; the parabolic bases on the `b` side are also
/// checked for degree and support.
pub fn check_adjacency_all(max_rank: usize, k: i32) -> Result<AdjacencySummary> {
    let mut s = AdjacencySummary::default();
    for pair in adjacent_pairs_up_to(max_rank) {
        let fs: Vec<WeightFn> = Window::tensor(pair.b().clone(), k - 2).basis();
        let r = check_adjacency(&pair, k, &fs, &BasisKind::both())?;
        check_parabolic_bases(&pair, k, &fs)?;
        s.pairs += 1;
        s.columns += r.columns;
        s.entries += r.entries;
    }
    Ok(s)
}

/// Totals from [`check_superduality_all`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SuperdualitySummary {
    /// Columns transported and compared.
    pub columns: usize,
    /// Coefficients in those columns.
    pub entries: usize,
    /// Random index pairs tested for order preservation.
    pub order_pairs: usize,
    /// How many of those pairs were comparable.
    pub comparable: usize,
}

/// For every head sequence of length `0..=max_rank` and every partition of
/// size at most `max_size`, compare both bases with natural and with dual
/// wedge tails (`max_size` factors each, level `k`). The Bruhat ordering is
/// compared on `order_pairs` random pairs for each nonempty head sequence.
pub fn check_superduality_all(
    max_rank: usize,
    max_size: usize,
    k: i32,
    order_pairs: usize,
    seed: u64,
) -> Result<SuperdualitySummary> {
    let parts: Vec<Partition> = (0..=max_size as u32).flat_map(Partition::all_of_size).collect();
    let mut s = SuperdualitySummary::default();
    for b in sequences(0, max_rank) {
        let heads = Window::tensor(b.clone(), 1).basis();
        let r = check_superduality(&b, &heads, &parts, max_size, max_size, k)?;
        s.columns += r.columns;
        s.entries += r.entries;
    }
    for (i, b) in sequences(1, max_rank).into_iter().enumerate() {
        s.comparable += superduality_bruhat_check(&b, order_pairs, seed.wrapping_add(i as u64), 4)?;
        s.order_pairs += order_pairs;
    }
    Ok(s)
}

/// Totals from [`check_truncation_all`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TruncationSummary {
    /// Tensor columns compared between levels `k` and `k + 1`.
    pub window_columns: usize,
    /// Wedge columns compared between `kw + 1` and `kw` wedge factors.
    pub wedge_columns: usize,
}

/// Window truncation: for every sequence of length `1..=max_rank`, every
/// level `k ≤ max_k` and every index of level `k`, the level-`(k+1)` column
/// cut down to level `k` equals the level-`k` column. Wedge truncation: for
/// every total length (head plus `kw + 1` wedge factors) at most
/// `max_rank + 1`, on both wedge sides, at level `max_k`.
pub fn check_truncation_all(max_rank: usize, max_k: i32) -> Result<TruncationSummary> {
    let mut s = TruncationSummary::default();
    for b in sequences(1, max_rank) {
        for k in 1..=max_k {
            let small = Window::tensor(b.clone(), k);
            let big = small.with_k(k + 1);
            let lo = bar_table(&small)?;
            let hi = bar_table(&big)?;
            for kind in BasisKind::both() {
                let tl = lusztig_solve(&lo, kind)?;
                let th = lusztig_solve(&hi, kind)?;
                for (f, col) in &tl.columns {
                    let cut = th.columns[f].restricted(k);
                    if cut != col.entries {
                        return Err(BklError::Invariant(format!(
                            "{kind} column {f} over {b}: level {} cut to level {k} differs",
                            k + 1
                        )));
                    }
                    s.window_columns += 1;
                }
            }
        }
    }
    for b in sequences(0, max_rank.saturating_sub(1)) {
        for kw in 1..=max_rank.saturating_sub(b.len()) {
            for side in [Side::V, Side::W] {
                s.wedge_columns += check_truncation(&b, side, kw, max_k, &BasisKind::both())?;
            }
        }
    }
    Ok(s)
}

/// Compare wedge and tensor coefficients for every head sequence of length
/// `0..=max_rank` and `1..=max_kw` natural wedge factors at level `k`, on
/// every wedge index. Returns the number of coefficient pairs compared.
pub fn check_tensor_wedge_all(max_rank: usize, max_kw: usize, k: i32) -> Result<usize> {
    let mut n = 0;
    for b in sequences(0, max_rank) {
        for kw in 1..=max_kw {
            let fs = Window::wedge(b.clone(), k, Side::V, kw).basis();
            n += check_tensor_wedge(&b, kw, k, &fs)?;
        }
    }
    Ok(n)
}

/// Totals from [`check_classical_endpoint`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassicalSummary {
    /// Permutations whose canonical column matched the Hecke oracle.
    pub permutations: usize,
    /// Windows on which the brute-force bar solve matched.
    pub brute_windows: usize,
    /// Typical antidominant weights whose characters were single Vermas.
    pub typical_weights: usize,
}

/// The purely even endpoint and typical weights: canonical columns on
/// `V^{⊗m}` for `m ≤ max_m` match Kazhdan–Lusztig elements; the bar table
/// on the rank-2 windows of level 2 matches a brute-force solve; and for the
/// standard sequence with `(m, n) ≤ (2, 2)` every typical antidominant weight
/// whose index is bounded by `bound` has single-term irreducible and tilting
/// characters.
pub fn check_classical_endpoint(max_m: usize, bound: i32) -> Result<ClassicalSummary> {
    let mut s = ClassicalSummary::default();
    for m in 1..=max_m {
        s.permutations += kl_dictionary_check(m)?;
    }
    for bits in [vec![0, 1], vec![1, 0], vec![0, 0]] {
        brute_bar_uniqueness(&Window::tensor(SignedSeq::new(bits)?, 2))?;
        s.brute_windows += 1;
    }
    for m in 0..=2 {
        for n in 0..=2 {
            if m + n == 0 {
                continue;
            }
            let b = SignedSeq::standard(m, n);
            for f in Window::tensor(b.clone(), bound).basis() {
                let lambda = f_to_weight(&b, &f)?;
                if !typical(&b, &lambda)? || !antidominant(&b, &lambda)? {
                    continue;
                }
                for kind in [CharacterKind::Irreducible, CharacterKind::Tilting] {
                    let e = character(&b, kind, &lambda, None)?;
                    if e.terms.len() != 1 || e.mult(&lambda) != 1.into() {
                        return Err(BklError::Invariant(format!(
                            "{kind} character of typical antidominant {lambda} over {b} has {} terms",
                            e.terms.len()
                        )));
                    }
                }
                s.typical_weights += 1;
            }
        }
    }
    Ok(s)
}

/// Odd-reflection coherence of irreducible and tilting characters along the
/// chains `01 → 10` and `001 → 010 → 100`, for weights with index bounded by
/// `bound` at window level `k`. Returns the number of multiplicities compared.
pub fn check_odd_reflections(bound: i32, k: i32) -> Result<usize> {
    let p = |s: &str, kappa: usize| -> Result<AdjacentPair> { AdjacentPair::from_kappa(s.parse()?, kappa) };
    let mut n = odd_reflection_path(&[p("01", 1)?], bound, k)?;
    n += odd_reflection_path(&[p("001", 2)?, p("010", 1)?], bound, k)?;
    n += odd_reflection_path(&[p("011", 1)?, p("101", 2)?], bound, k)?;
    Ok(n)
}

/// Run one suite (or all of them) within the given limits.
pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<Vec<SuiteOutcome>> {
    if suite == Suite::All {
        let mut out = Vec::new();
        for s in Suite::each() {
            out.extend(run_suite(s, opts)?);
        }
        return Ok(out);
    }
    let r = opts.max_rank.max(1);
    let k = opts.max_window.max(1);
    let start = Instant::now();
    let checked = match suite {
        Suite::Rank2 => check_rank2(k.max(2))?,
        Suite::Involution => check_involution(r, k)?,
        Suite::Positivity => check_positivity(r, k)?.columns + check_chevalley_positivity(r.min(3), k.min(2))?,
        Suite::Adjacency => check_adjacency_all(r, k.max(3))?.columns,
        Suite::Superduality => check_superduality_all(r.min(2), 2, k.max(2), 50, opts.seed)?.columns,
        Suite::Truncation => {
            let s = check_truncation_all(r.min(3), k.min(3))?;
            s.window_columns + s.wedge_columns
        }
        Suite::TensorWedge => check_tensor_wedge_all(r.min(2), 2, k.clamp(2, 3))?,
        Suite::Shift => check_shift(20, r, opts.seed)?,
        Suite::KlOracle => {
            let s = check_classical_endpoint(r.min(3), 1)?;
            s.permutations + s.brute_windows + s.typical_weights
        }
        Suite::Characters => check_odd_reflections(1, k.max(4))?,
        Suite::All => unreachable!("handled above"),
    };
    Ok(vec![SuiteOutcome {
        suite,
        checked,
        elapsed: start.elapsed(),
    }])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::each().into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn pair_enumeration() {
        // Pairs with a 01 at some position: for length 2 just 01 -> 10.
        assert_eq!(adjacent_pairs_up_to(2).len(), 1);
        assert!(adjacent_pairs_up_to(3).len() > 1);
    }

    #[test]
    fn small_suites_pass() {
        let opts = VerifyOptions {
            max_rank: 2,
            max_window: 2,
            seed: 1,
        };
        for s in [Suite::Rank2, Suite::Involution, Suite::Shift, Suite::TensorWedge] {
            let out = run_suite(s, &opts).unwrap();
            assert!(out[0].checked > 0, "{s}");
        }
    }
}
