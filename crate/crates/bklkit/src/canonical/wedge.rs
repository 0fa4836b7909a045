// SPDX-License-Identifier: MIT OR Apache-2.0

//! Canonical bases on tensor spaces with a wedge part: columns, truncation
//! between wedge sizes, comparison with the unfolded tensor space, and the
//! duality exchanging natural and dual semi-infinite wedges.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinat::{bruhat_leq, natural_bij, Partition, Side, SignedSeq, Tail, WedgeIndex, WeightFn};
use crate::error::{BklError, Result};
use crate::fock::{add_term, neg_q_pow, permutations_bfs, FockVector, Terms, Window};
use crate::scalars::LaurentPoly;

use super::{auto_level, column_with_check, BasisKind, Column, Solver};

/// The column of `f` (flat: head followed by `kw` tail values) in the space
/// with `kw` wedge factors of the given side, in an automatically chosen window.
pub fn wedge_bkl(b: &SignedSeq, side: Side, kw: usize, f: &WeightFn, kind: BasisKind) -> Result<Column> {
    if f.len() != b.len() + kw {
        return Err(BklError::InvalidInput(format!(
            "index {f} does not have {} head and {kw} wedge values",
            b.len()
        )));
    }
    if !side.is_sorted(&f.0[b.len()..]) {
        return Err(BklError::InvalidInput(format!(
            "wedge tail of {f} is not strictly sorted for side {side}"
        )));
    }
    let window = Window::wedge(b.clone(), auto_level(b.len() + kw, f), side, kw);
    column_with_check(&window, f, kind, true)
}

/// Number of wedge factors used for a wedge index: the tail length for a
/// finite tail, and the number of parts (at least one) for a partition.
pub fn wedge_level(x: &WedgeIndex) -> usize {
    match &x.tail {
        Tail::Finite(t) => t.len(),
        Tail::Partition(p) => p.len().max(1),
    }
}

/// The column of a wedge index; partition tails are truncated to their number of parts.
pub fn wedge_bkl_index(b: &SignedSeq, x: &WedgeIndex, kind: BasisKind) -> Result<Column> {
    if x.head.len() != b.len() {
        return Err(BklError::InvalidInput(format!("head {} does not match {b}", x.head)));
    }
    let kw = wedge_level(x);
    let f = x
        .flatten(kw)
        .ok_or_else(|| BklError::InvalidInput("wedge index does not flatten".into()))?;
    wedge_bkl(b, x.side, kw, &f, kind)
}

fn vacuum(side: Side, i: usize) -> i32 {
    match side {
        Side::V => 1 - i as i32,
        Side::W => i as i32,
    }
}

/// Truncate a vector with `kw` wedge factors to `new_kw <= kw` factors:
/// monomials whose tail positions `new_kw + 1 ..= kw` carry the vacuum
/// values lose them, all other monomials are killed.
pub fn truncate_vector(v: &FockVector, new_kw: usize) -> Result<FockVector> {
    let window = v.window();
    let (side, kw) = window
        .wedge
        .side_len()
        .ok_or_else(|| BklError::InvalidInput("truncation needs a wedge part".into()))?;
    if new_kw > kw {
        return Err(BklError::InvalidInput(format!(
            "cannot truncate {kw} wedge factors to {new_kw}"
        )));
    }
    let h = window.b.len();
    let mut terms = Terms::new();
    for (g, c) in v.terms() {
        let keep = (new_kw + 1..=kw).all(|i| g.0[h + i - 1] == vacuum(side, i));
        if keep {
            add_term(&mut terms, WeightFn(g.0[..h + new_kw].to_vec()), c);
        }
    }
    Ok(FockVector::from_terms_unchecked(
        Window::wedge(window.b.clone(), window.k, side, new_kw),
        terms,
    ))
}

/// For every index `f` of the window with `kw + 1` wedge factors whose tail
/// is of partition type (an index of the semi-infinite wedge), check that
/// truncation sends `Y_f` to `Y` of the truncated index when the last tail
/// value is the vacuum one, and to zero otherwise. Returns the number of
/// columns checked.
pub fn check_truncation(b: &SignedSeq, side: Side, kw: usize, k: i32, kinds: &[BasisKind]) -> Result<usize> {
    let big = Window::wedge(b.clone(), k, side, kw + 1);
    let small = Window::wedge(b.clone(), k, side, kw);
    let mut big_solver = Solver::new(big.clone());
    let mut small_solver = Solver::new(small);
    let mut checked = 0;
    let h = b.len();
    for f in big.basis() {
        if Partition::from_tail(side, &f.0[h..]).is_none() {
            continue;
        }
        for &kind in kinds {
            let col = big_solver.column(&f, kind)?;
            let cut = truncate_vector(&col.to_vector(), kw)?;
            let last = *f.0.last().expect("nonempty index");
            if last == vacuum(side, kw + 1) {
                let g = WeightFn(f.0[..f.len() - 1].to_vec());
                let expected = small_solver.column(&g, kind)?;
                if cut.terms() != &expected.entries {
                    return Err(BklError::Invariant(format!(
                        "truncating the {kind} column {f} does not give the column {g}"
                    )));
                }
            } else if !cut.is_zero() {
                return Err(BklError::Invariant(format!(
                    "truncating the {kind} column {f} is not zero"
                )));
            }
            checked += 1;
        }
    }
    Ok(checked)
}

fn tensor_window(b: &SignedSeq, k: i32, kw: usize) -> Window {
    Window::tensor(b.extended(Side::V.bit(), kw), k)
}

/// The alternating sum `sum_tau (-q)^{l(w0) - l(tau)} t_{g.tau, f.w0}` over
/// permutations of the wedge positions, evaluated on a tensor column of `f.w0`.
fn alternating_sum(tensor_col: &Column, head: usize, kw: usize, g: &WeightFn) -> LaurentPoly {
    let l_w0 = (kw * (kw - 1) / 2) as i32;
    let mut total = LaurentPoly::zero();
    for (tau, len, _) in permutations_bfs(kw) {
        let mut gt = g.0[..head].to_vec();
        gt.extend(tau.iter().map(|&j| g.0[head + j]));
        let c = tensor_col.entry(&WeightFn(gt));
        if !c.is_zero() {
            total += &(c * neg_q_pow(l_w0 - len as i32));
        }
    }
    total
}

/// The canonical coefficient `t_{gf}` with `kw` natural wedge factors,
/// computed from the unfolded tensor space by the alternating sum; it is
/// checked against the coefficient computed directly in the wedge space.
pub fn tensor_to_wedge_canonical(b: &SignedSeq, kw: usize, g: &WeightFn, f: &WeightFn) -> Result<LaurentPoly> {
    let k = auto_level(b.len() + kw, f).max(g.max_abs());
    let wedge_window = Window::wedge(b.clone(), k, Side::V, kw);
    if !wedge_window.contains(&g.0) || !wedge_window.contains(&f.0) {
        return Err(BklError::InvalidInput(format!(
            "{g} and {f} must both have strictly decreasing tails"
        )));
    }
    let head = b.len();
    let mut fw0 = f.0.clone();
    fw0[head..].reverse();
    let tensor_col = Solver::new(tensor_window(b, k, kw)).column(&WeightFn(fw0), BasisKind::Canonical)?;
    let via = alternating_sum(&tensor_col, head, kw, g);
    let direct = Solver::new(wedge_window).column(f, BasisKind::Canonical)?.entry(g);
    if via != direct {
        return Err(BklError::Invariant(format!(
            "alternating sum {via} differs from the wedge coefficient {direct} at ({g}, {f})"
        )));
    }
    Ok(via)
}

/// Compare, for every wedge index `f` of level `k` with `kw` natural wedge
/// factors and every wedge index `g`, the wedge coefficients with the tensor
/// ones: dual coefficients agree directly, canonical ones through the
/// alternating sum. Returns the number of coefficient pairs compared.
pub fn check_tensor_wedge(b: &SignedSeq, kw: usize, k: i32, fs: &[WeightFn]) -> Result<usize> {
    let wedge_window = Window::wedge(b.clone(), k, Side::V, kw);
    let mut wedge = Solver::new(wedge_window.clone());
    let mut tensor = Solver::new(tensor_window(b, k, kw));
    let head = b.len();
    let basis = wedge_window.basis();
    let mut compared = 0;
    for f in fs {
        let ld = wedge.column(f, BasisKind::Dual)?;
        let lt = tensor.column(f, BasisKind::Dual)?;
        let mut fw0 = f.0.clone();
        fw0[head..].reverse();
        let tc = tensor.column(&WeightFn(fw0), BasisKind::Canonical)?;
        let td = wedge.column(f, BasisKind::Canonical)?;
        for g in &basis {
            if ld.entry(g) != lt.entry(g) {
                return Err(BklError::Invariant(format!(
                    "dual coefficient ({g}, {f}): wedge {} vs tensor {}",
                    ld.entry(g),
                    lt.entry(g)
                )));
            }
            let via = alternating_sum(&tc, head, kw, g);
            if via != td.entry(g) {
                return Err(BklError::Invariant(format!(
                    "canonical coefficient ({g}, {f}): wedge {} vs alternating sum {via}",
                    td.entry(g)
                )));
            }
            compared += 2;
        }
    }
    Ok(compared)
}

/// Convert a flat index with a natural-wedge tail to the dual-wedge flat
/// index of the conjugate partition, at dual level `kw_dual`.
fn dual_flat(head_len: usize, from: Side, g: &WeightFn, kw_to: usize) -> Option<WeightFn> {
    let lambda = Partition::from_tail(from, &g.0[head_len..])?;
    let x = WedgeIndex::partition(WeightFn(g.0[..head_len].to_vec()), from, lambda);
    natural_bij(&x).ok()?.flatten(kw_to)
}

/// What a duality comparison covered.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuperdualityReport {
    /// Columns compared.
    pub columns: usize,
    /// Coefficient pairs compared.
    pub entries: usize,
}

/// Transport a column with a natural-wedge tail to the corresponding column
/// with a dual-wedge tail (`kw_dual` factors, same level): indices are
/// relabelled by conjugating the tail partition. The column over the dual
/// side is computed from scratch and must agree at every index representable
/// on both sides; it is returned.
pub fn superduality_transport(b: &SignedSeq, column: &Column, kw_dual: usize) -> Result<Column> {
    let window = &column.window;
    let (side, _) = window
        .wedge
        .side_len()
        .ok_or_else(|| BklError::InvalidInput("the duality needs a wedge column".into()))?;
    if &window.b != b {
        return Err(BklError::InvalidInput(format!("column does not live over {b}")));
    }
    let h = b.len();
    let f_image = dual_flat(h, side, &column.f, kw_dual).ok_or_else(|| {
        BklError::InvalidInput(format!(
            "{} is not representable with {kw_dual} dual wedge factors",
            column.f
        ))
    })?;
    let target = Window::wedge(b.clone(), window.k, side.flip(), kw_dual);
    if !target.contains(&f_image.0) {
        return Err(BklError::InvalidInput(format!("{f_image} is outside the window")));
    }
    let fresh = Solver::new(target.clone()).column(&f_image, column.kind)?;
    let kw = window.wedge.len();
    let mut seen = 0;
    for (g, c) in &column.entries {
        if let Some(gi) = dual_flat(h, side, g, kw_dual).filter(|gi| target.contains(&gi.0)) {
            if fresh.entry(&gi) != *c {
                return Err(BklError::Invariant(format!(
                    "{} coefficient ({g}, {}) = {c} but ({gi}, {f_image}) = {}",
                    column.kind,
                    column.f,
                    fresh.entry(&gi)
                )));
            }
            seen += 1;
        }
    }
    for (gi, c) in &fresh.entries {
        if let Some(g) = dual_flat(h, side.flip(), gi, kw).filter(|g| window.contains(&g.0)) {
            if column.entry(&g) != *c {
                return Err(BklError::Invariant(format!(
                    "{} coefficient ({gi}, {f_image}) = {c} but ({g}, {}) = {}",
                    column.kind,
                    column.f,
                    column.entry(&g)
                )));
            }
        }
    }
    if seen == 0 {
        return Err(BklError::Invariant(
            "no coefficient is representable on both sides".into(),
        ));
    }
    Ok(fresh)
}

/// Compare both bases for every head in `heads` and every partition in
/// `partitions`, with `kw` natural and `kw_dual` dual wedge factors at level `k`.
pub fn check_superduality(
    b: &SignedSeq,
    heads: &[WeightFn],
    partitions: &[Partition],
    kw: usize,
    kw_dual: usize,
    k: i32,
) -> Result<SuperdualityReport> {
    let mut solver = Solver::new(Window::wedge(b.clone(), k, Side::V, kw));
    let mut report = SuperdualityReport::default();
    for head in heads {
        for lambda in partitions {
            let x = WedgeIndex::partition(head.clone(), Side::V, lambda.clone());
            let Some(f) = x.flatten(kw) else { continue };
            if lambda.conjugate().len() > kw_dual || !solver.window().contains(&f.0) {
                continue;
            }
            for kind in BasisKind::both() {
                let col = solver.column(&f, kind)?;
                superduality_transport(b, &col, kw_dual)?;
                report.columns += 1;
                report.entries += col.len();
            }
        }
    }
    Ok(report)
}

/// Check on `pairs` random pairs of (head, partition) indices that the
/// Bruhat ordering with natural wedge factors matches the one with dual
/// wedge factors after conjugation. Half the pairs are drawn from column
/// supports so that comparable pairs occur. Returns the number of
/// comparable pairs seen.
pub fn superduality_bruhat_check(b: &SignedSeq, pairs: usize, seed: u64, level: usize) -> Result<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let parts: Vec<Partition> = (0..=3).flat_map(Partition::all_of_size).collect();
    let heads: Vec<WeightFn> = Window::tensor(b.clone(), 1).basis();
    let seq_v = b.extended(Side::V.bit(), level);
    let seq_w = b.extended(Side::W.bit(), level);
    let flat = |x: &WedgeIndex| -> Option<(WeightFn, WeightFn)> {
        let y = natural_bij(x).ok()?;
        Some((x.flatten(level)?, y.flatten(level)?))
    };
    let random_index = |rng: &mut ChaCha8Rng| {
        WedgeIndex::partition(
            heads.choose(rng).expect("heads").clone(),
            Side::V,
            parts.choose(rng).expect("partitions").clone(),
        )
    };
    let mut solver = Solver::new(Window::wedge(b.clone(), 3, Side::V, level));
    let mut comparable = 0;
    for i in 0..pairs {
        let f = random_index(&mut rng);
        let g = if i % 2 == 0 {
            random_index(&mut rng)
        } else {
            // A support element of the dual column of f, when it is of partition type.
            let Some((ff, _)) = flat(&f) else { continue };
            let col = solver.column(&ff, BasisKind::Dual)?;
            let entries: Vec<&WeightFn> = col.entries.keys().collect();
            let pick = entries[rng.gen_range(0..entries.len())];
            match Partition::from_tail(Side::V, &pick.0[b.len()..]) {
                Some(lambda) => WedgeIndex::partition(WeightFn(pick.0[..b.len()].to_vec()), Side::V, lambda),
                None => continue,
            }
        };
        let (Some((fv, fw)), Some((gv, gw))) = (flat(&f), flat(&g)) else {
            continue;
        };
        let lhs = bruhat_leq(&seq_v, &gv, &fv);
        let rhs = bruhat_leq(&seq_w, &gw, &fw);
        if lhs != rhs {
            return Err(BklError::Invariant(format!(
                "ordering not preserved by the duality: {gv} <= {fv} is {lhs} but {gw} <= {fw} is {rhs}"
            )));
        }
        comparable += usize::from(lhs);
    }
    Ok(comparable)
}

/// Coefficients of a column keyed by wedge index, for display.
pub fn column_by_wedge_index(col: &Column) -> BTreeMap<WedgeIndex, LaurentPoly> {
    let h = col.window.b.len();
    let side = col.window.wedge.side_len().map_or(Side::V, |(s, _)| s);
    col.entries
        .iter()
        .map(|(g, c)| {
            let head = WeightFn(g.0[..h].to_vec());
            let tail = &g.0[h..];
            let x = match Partition::from_tail(side, tail) {
                Some(p) => WedgeIndex::partition(head, side, p),
                None => WedgeIndex {
                    head,
                    side,
                    tail: Tail::Finite(tail.to_vec()),
                },
            };
            (x, c.clone())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> SignedSeq {
        s.parse().unwrap()
    }

    fn w(s: &str) -> WeightFn {
        s.parse().unwrap()
    }

    #[test]
    fn single_wedge_factor_is_a_tensor_factor() {
        let f = w("1,1");
        for kind in BasisKind::both() {
            let a = wedge_bkl(&b("0"), Side::W, 1, &f, kind).unwrap();
            let t = super::super::bkl(&b("01"), &f, kind).unwrap();
            assert_eq!(a.entries, t.entries);
        }
    }

    #[test]
    fn wedge_columns_are_positive() {
        for (s, side, kw) in [
            ("0", Side::W, 2),
            ("1", Side::V, 2),
            ("01", Side::V, 2),
            ("", Side::W, 3),
        ] {
            let win = Window::wedge(b(s), 2, side, kw);
            let mut solver = Solver::new(win.clone());
            for f in win.basis() {
                for kind in BasisKind::both() {
                    let col = solver.column(&f, kind).unwrap();
                    col.check_positivity().unwrap();
                    solver.check_bar_invariant(&col).unwrap();
                }
            }
        }
    }

    #[test]
    fn truncation_preserves_bases() {
        for (s, side) in [("1", Side::V), ("0", Side::W), ("01", Side::V), ("", Side::W)] {
            for kw in 1..=2 {
                let n = check_truncation(&b(s), side, kw, 2, &BasisKind::both()).unwrap();
                assert!(n > 0);
            }
        }
    }

    #[test]
    fn tensor_versus_wedge() {
        for (s, kw) in [("", 2), ("0", 2), ("1", 2), ("", 3), ("01", 2)] {
            let win = Window::wedge(b(s), 2, Side::V, kw);
            let fs = win.basis();
            check_tensor_wedge(&b(s), kw, 2, &fs).unwrap();
        }
        assert_eq!(
            tensor_to_wedge_canonical(&b(""), 1, &w("1"), &w("1")).unwrap(),
            LaurentPoly::one()
        );
        for g in ["2,1", "2,0", "1,0"] {
            for f in ["2,1", "2,0", "1,0"] {
                let t = tensor_to_wedge_canonical(&b(""), 2, &w(g), &w(f)).unwrap();
                assert_eq!(t.is_one(), g == f);
            }
        }
    }

    #[test]
    fn duality_on_small_cases() {
        let heads: Vec<WeightFn> = Window::tensor(b("1"), 1).basis();
        let parts: Vec<Partition> = (0..=2).flat_map(Partition::all_of_size).collect();
        let r = check_superduality(&b("1"), &heads, &parts, 2, 2, 3).unwrap();
        assert!(r.columns > 0);
        // Vacuum tails reduce to the head column.
        let col = wedge_bkl_index(
            &b("01"),
            &WedgeIndex::partition(w("1,1"), Side::V, Partition::empty()),
            BasisKind::Dual,
        )
        .unwrap();
        let moved = superduality_transport(&b("01"), &col, 1).unwrap();
        assert_eq!(moved.f, w("1,1,1"));
    }

    #[test]
    fn duality_respects_ordering() {
        let n = superduality_bruhat_check(&b("01"), 200, 11, 4).unwrap();
        assert!(n > 0);
    }

    #[test]
    fn display_keys() {
        let col = wedge_bkl_index(
            &b(""),
            &WedgeIndex::partition(w(""), Side::V, "1".parse().unwrap()),
            BasisKind::Dual,
        )
        .unwrap();
        let by = column_by_wedge_index(&col);
        assert!(by
            .keys()
            .any(|x| matches!(&x.tail, Tail::Partition(p) if p.parts() == [1])));
    }
}
