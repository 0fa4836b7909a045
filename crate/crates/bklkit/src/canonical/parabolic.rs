// SPDX-License-Identifier: MIT OR Apache-2.0

//! Parabolic monomial bases for an adjacent pair and the transport of
//! canonical and dual canonical bases between `b` and `b'`.
//!
//! For the pair `b = (.., 0, 1, ..)`, `b' = (.., 1, 0, ..)` with the swapped
//! factors at `kappa, kappa + 1`, write `g-down` (resp. `g-up`) for `g` with both
//! distinguished entries lowered (raised) by one. When the distinguished
//! entries of `g` agree ("tied"):
//!
//! * on `b`: `M_g = N_g + q^-1 N_{g-down}` and `U_g = M_g + q M_{g-down}`;
//! * on `b'`: the same with `g-up` in place of `g-down`.
//!
//! Untied indices have `N_g = U_g = M_g`. The inverse changes are geometric
//! series, truncated at the window boundary.
//!
//! The dual canonical basis in `N`-coordinates and the canonical basis in
//! `U`-coordinates are transported by relabelling `f -> f^L` and `f -> f^U`.

use std::collections::{BTreeMap, BTreeSet};

use crate::combinat::{bruhat_leq, AdjacentPair, WeightFn};
use crate::error::{BklError, Result};
use crate::fock::{add_term, FockVector, Terms, WedgeSpec, Window};
use crate::scalars::{DegreeClass, LaurentPoly};

use super::{BasisKind, Column, Solver};

/// Which sequence of an adjacent pair a vector lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PairSide {
    /// The sequence with `(0, 1)` at `kappa`.
    B,
    /// The sequence with `(1, 0)` at `kappa`.
    BPrime,
}

impl PairSide {
    fn step(self) -> i32 {
        match self {
            PairSide::B => -1,
            PairSide::BPrime => 1,
        }
    }
}

/// Direction of a parabolic basis change.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NuDirection {
    /// Coordinates in `M` to coordinates in `N`.
    MToN,
    /// Coordinates in `N` to coordinates in `M`.
    NToM,
    /// Coordinates in `M` to coordinates in `U`.
    MToU,
    /// Coordinates in `U` to coordinates in `M`.
    UToM,
}

/// Rewrite a vector between the monomial basis and a parabolic basis.
///
/// Geometric series are cut off at the window; coefficients at indices whose
/// distinguished entries are within one step of the boundary can therefore
/// differ from the untruncated ones.
pub fn basis_change_nu(pair: &AdjacentPair, side: PairSide, v: &FockVector, dir: NuDirection) -> Result<FockVector> {
    let window = v.window();
    let expected = match side {
        PairSide::B => pair.b(),
        PairSide::BPrime => pair.b_prime(),
    };
    if window.wedge != WedgeSpec::None || &window.b != expected {
        return Err(BklError::InvalidInput(format!(
            "vector over {} does not live over {expected}",
            window.b
        )));
    }
    let k = window.k;
    let d = side.step();
    let mut out = Terms::new();
    for (g, c) in v.terms() {
        add_term(&mut out, g.clone(), c);
        if !pair.is_tied(g) {
            continue;
        }
        match dir {
            NuDirection::MToN => push(&mut out, pair.bump(g, d), k, &(c * &LaurentPoly::q_pow(-1))),
            NuDirection::UToM => push(&mut out, pair.bump(g, d), k, &(c * &LaurentPoly::q_pow(1))),
            NuDirection::NToM | NuDirection::MToU => {
                // (-q)^{-j} for N to M, (-q)^j for M to U.
                let sign = if dir == NuDirection::NToM { -1 } else { 1 };
                let mut j = 1;
                loop {
                    let h = pair.bump(g, d * j);
                    if h.max_abs() > k {
                        break;
                    }
                    let odd = j % 2 == 1;
                    let coeff = LaurentPoly::monomial(if odd { -1 } else { 1 }, sign * j);
                    add_term(&mut out, h, &(c * &coeff));
                    j += 1;
                }
            }
        }
    }
    Ok(FockVector::from_terms_unchecked(window.clone(), out))
}

fn push(out: &mut Terms, h: WeightFn, k: i32, c: &LaurentPoly) {
    if h.max_abs() <= k {
        add_term(out, h, c);
    }
}

/// Inverse of `f -> f^L`.
fn l_inverse(pair: &AdjacentPair, h: &WeightFn) -> WeightFn {
    if pair.is_tied(h) {
        pair.bump(h, -1)
    } else {
        h.swapped(pair.kappa() - 1, pair.kappa())
    }
}

/// Inverse of `f -> f^U`.
fn u_inverse(pair: &AdjacentPair, h: &WeightFn) -> WeightFn {
    if pair.is_tied(h) {
        pair.bump(h, 1)
    } else {
        h.swapped(pair.kappa() - 1, pair.kappa())
    }
}

fn relabel(pair: &AdjacentPair, kind: BasisKind, g: &WeightFn) -> WeightFn {
    match kind {
        BasisKind::Dual => pair.f_l(g),
        BasisKind::Canonical => pair.f_u(g),
    }
}

fn unlabel(pair: &AdjacentPair, kind: BasisKind, g: &WeightFn) -> WeightFn {
    match kind {
        BasisKind::Dual => l_inverse(pair, g),
        BasisKind::Canonical => u_inverse(pair, g),
    }
}

fn parabolic_direction(kind: BasisKind) -> NuDirection {
    match kind {
        BasisKind::Dual => NuDirection::MToN,
        BasisKind::Canonical => NuDirection::MToU,
    }
}

/// What a parabolic-basis check covered.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParabolicReport {
    /// Columns examined.
    pub columns: usize,
    /// Off-diagonal parabolic coefficients examined.
    pub entries: usize,
    /// Whether every dual coefficient evaluated at `-q^-1` had nonnegative coefficients.
    pub dual_sign_coherent: bool,
    /// Whether every canonical coefficient had nonnegative coefficients.
    pub canonical_nonneg: bool,
}

/// Compute the dual canonical basis in `N`-coordinates and the canonical
/// basis in `U`-coordinates on the `b` side for each `f`, and check degree
/// classes and the refined support condition: a nonzero coefficient at `g`
/// needs `g < f` for `b` and the relabelled `g < f` for `b'`.
///
/// Coefficients are examined at indices with all entries at most `k - 1` in
/// absolute value, where the truncated series are exact.
pub fn check_parabolic_bases(pair: &AdjacentPair, k: i32, fs: &[WeightFn]) -> Result<ParabolicReport> {
    let mut solver = Solver::new(Window::tensor(pair.b().clone(), k));
    let mut report = ParabolicReport {
        dual_sign_coherent: true,
        canonical_nonneg: true,
        ..Default::default()
    };
    for f in fs {
        for kind in BasisKind::both() {
            let col = solver.column(f, kind)?;
            let par = basis_change_nu(pair, PairSide::B, &col.to_vector(), parabolic_direction(kind))?;
            report.columns += 1;
            let image_f = relabel(pair, kind, f);
            for (g, c) in par.terms() {
                if g == f {
                    if !c.is_one() {
                        return Err(BklError::Invariant(format!(
                            "parabolic {kind} column {f} has diagonal {c}"
                        )));
                    }
                    continue;
                }
                if g.max_abs() > k - 1 {
                    continue;
                }
                report.entries += 1;
                if c.degree_class() != kind.degree_class() && c.degree_class() != DegreeClass::Zero {
                    return Err(BklError::Invariant(format!(
                        "parabolic {kind} coefficient at ({g}, {f}) is {c}, outside the required degree class"
                    )));
                }
                let image_g = relabel(pair, kind, g);
                if !bruhat_leq(pair.b(), g, f) || !bruhat_leq(pair.b_prime(), &image_g, &image_f) {
                    return Err(BklError::Invariant(format!(
                        "parabolic {kind} column {f} has support at {g} outside the refined ordering"
                    )));
                }
                match kind {
                    BasisKind::Dual => report.dual_sign_coherent &= c.subst_neg_qinv().is_nonneg(),
                    BasisKind::Canonical => report.canonical_nonneg &= c.is_nonneg(),
                }
            }
        }
    }
    Ok(report)
}

/// What an adjacency comparison covered.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AdjacencyReport {
    /// Column pairs compared.
    pub columns: usize,
    /// Coefficient pairs compared.
    pub entries: usize,
}

/// Compare the parabolic coefficients of `Y_f` over `b` with those of
/// `Y_{f'}` over `b'` (`f' = f^L` for dual, `f^U` for canonical), both
/// computed from scratch at level `k`, at every index whose entries (on both
/// sides) are bounded by `k - 2`.
pub fn check_adjacency(pair: &AdjacentPair, k: i32, fs: &[WeightFn], kinds: &[BasisKind]) -> Result<AdjacencyReport> {
    let mut lhs = Solver::new(Window::tensor(pair.b().clone(), k));
    let mut rhs = Solver::new(Window::tensor(pair.b_prime().clone(), k));
    let mut report = AdjacencyReport::default();
    for f in fs {
        for &kind in kinds {
            let n = compare_parabolic(pair, kind, k, f, &mut lhs, &mut rhs)?;
            report.columns += 1;
            report.entries += n;
        }
    }
    Ok(report)
}

fn parabolic_coords(
    pair: &AdjacentPair,
    side: PairSide,
    kind: BasisKind,
    solver: &mut Solver,
    f: &WeightFn,
) -> Result<BTreeMap<WeightFn, LaurentPoly>> {
    let col = solver.column(f, kind)?;
    Ok(basis_change_nu(pair, side, &col.to_vector(), parabolic_direction(kind))?.into_terms())
}

fn compare_parabolic(
    pair: &AdjacentPair,
    kind: BasisKind,
    k: i32,
    f: &WeightFn,
    lhs: &mut Solver,
    rhs: &mut Solver,
) -> Result<usize> {
    let f_image = relabel(pair, kind, f);
    if f_image.max_abs() > k {
        return Err(BklError::InvalidInput(format!(
            "{f} is too close to the boundary of level {k}"
        )));
    }
    let left = parabolic_coords(pair, PairSide::B, kind, lhs, f)?;
    let right = parabolic_coords(pair, PairSide::BPrime, kind, rhs, &f_image)?;
    let mut indices: BTreeSet<WeightFn> = left.keys().cloned().collect();
    indices.extend(right.keys().map(|h| unlabel(pair, kind, h)));
    let mut compared = 0;
    for g in indices {
        let g_image = relabel(pair, kind, &g);
        if g.max_abs() > k - 2 || g_image.max_abs() > k - 2 {
            continue;
        }
        let a = left.get(&g).cloned().unwrap_or_default();
        let b = right.get(&g_image).cloned().unwrap_or_default();
        if a != b {
            return Err(BklError::Invariant(format!(
                "{kind} parabolic coefficient ({g}, {f}) = {a} over {} but ({g_image}, {f_image}) = {b} over {}",
                pair.b(),
                pair.b_prime()
            )));
        }
        compared += 1;
    }
    Ok(compared)
}

/// Transport a column over `b` to the corresponding column over `b'`:
/// rewrite it in parabolic coordinates, relabel, and rewrite back in
/// monomial coordinates. The result is compared with the column computed
/// from scratch over `b'` at every index bounded by `k - 2`; the recomputed
/// column is returned.
pub fn adjacency_transport(pair: &AdjacentPair, column: &Column) -> Result<Column> {
    let window = &column.window;
    if window.wedge != WedgeSpec::None || &window.b != pair.b() {
        return Err(BklError::InvalidInput(format!(
            "column does not live over {}",
            pair.b()
        )));
    }
    let k = window.k;
    let kind = column.kind;
    let par = basis_change_nu(pair, PairSide::B, &column.to_vector(), parabolic_direction(kind))?;
    let target = Window::tensor(pair.b_prime().clone(), k);
    let mut moved = Terms::new();
    for (g, c) in par.terms() {
        let h = relabel(pair, kind, g);
        if h.max_abs() <= k {
            add_term(&mut moved, h, c);
        }
    }
    let back_dir = match kind {
        BasisKind::Dual => NuDirection::NToM,
        BasisKind::Canonical => NuDirection::UToM,
    };
    let moved = FockVector::from_terms_unchecked(target.clone(), moved);
    let transported = basis_change_nu(pair, PairSide::BPrime, &moved, back_dir)?;
    let f_image = relabel(pair, kind, &column.f);
    let fresh = Solver::new(target).column(&f_image, kind)?;
    for g in transported.terms().keys().chain(fresh.entries.keys()) {
        if g.max_abs() > k - 2 {
            continue;
        }
        let a = transported.coeff(g);
        let b = fresh.entry(g);
        if a != b {
            return Err(BklError::Invariant(format!(
                "transported {kind} column {} disagrees with the column of {f_image} at {g}: {a} vs {b}",
                column.f
            )));
        }
    }
    Ok(fresh)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::SignedSeq;

    fn pair(s: &str, kappa: usize) -> AdjacentPair {
        AdjacentPair::from_kappa(s.parse::<SignedSeq>().unwrap(), kappa).unwrap()
    }

    fn w(s: &str) -> WeightFn {
        s.parse().unwrap()
    }

    #[test]
    fn untied_indices_are_unchanged() {
        let p = pair("01", 1);
        let win = Window::tensor(p.b().clone(), 3);
        let v = FockVector::monomial(win, w("1,2")).unwrap();
        for dir in [
            NuDirection::MToN,
            NuDirection::NToM,
            NuDirection::MToU,
            NuDirection::UToM,
        ] {
            assert_eq!(basis_change_nu(&p, PairSide::B, &v, dir).unwrap(), v);
        }
    }

    #[test]
    fn tied_index_relations() {
        let p = pair("01", 1);
        let win = Window::tensor(p.b().clone(), 3);
        let v = FockVector::monomial(win, w("1,1")).unwrap();
        let n = basis_change_nu(&p, PairSide::B, &v, NuDirection::MToN).unwrap();
        assert_eq!(n.len(), 2);
        assert_eq!(n.coeff(&w("0,0")), LaurentPoly::q_pow(-1));
        let u = basis_change_nu(&p, PairSide::B, &v, NuDirection::UToM).unwrap();
        assert_eq!(u.coeff(&w("0,0")), LaurentPoly::q_pow(1));
        let up = basis_change_nu(
            &p,
            PairSide::BPrime,
            &FockVector::monomial(Window::tensor(p.b_prime().clone(), 3), w("1,1")).unwrap(),
            NuDirection::MToN,
        )
        .unwrap();
        assert_eq!(up.coeff(&w("2,2")), LaurentPoly::q_pow(-1));
    }

    #[test]
    fn round_trips_on_the_stable_part() {
        let p = pair("0101", 3);
        let win = Window::tensor(p.b().clone(), 3);
        for (there, back) in [
            (NuDirection::MToN, NuDirection::NToM),
            (NuDirection::MToU, NuDirection::UToM),
        ] {
            for f in [w("1,0,0,2"), w("-1,2,0,0"), w("0,1,-3,-3")] {
                let v = FockVector::monomial(win.clone(), f.clone()).unwrap();
                let rt = basis_change_nu(
                    &p,
                    PairSide::B,
                    &basis_change_nu(&p, PairSide::B, &v, there).unwrap(),
                    back,
                )
                .unwrap();
                assert_eq!(rt, v, "{f} {there:?}");
            }
        }
    }

    #[test]
    fn rank_two_parabolic_columns_are_trivial() {
        let p = pair("01", 1);
        let mut solver = Solver::new(Window::tensor(p.b().clone(), 5));
        for a in -2..=2 {
            let f = WeightFn(vec![a, a]);
            for kind in BasisKind::both() {
                let col = solver.column(&f, kind).unwrap();
                let par = basis_change_nu(&p, PairSide::B, &col.to_vector(), parabolic_direction(kind)).unwrap();
                let inner: Vec<_> = par.terms().keys().filter(|g| g.max_abs() <= 4).collect();
                assert_eq!(inner, vec![&f], "{kind} {f}");
            }
        }
        let report = check_parabolic_bases(&p, 5, &[w("0,0"), w("1,-1"), w("-1,2")]).unwrap();
        assert_eq!(report.columns, 6);
    }

    #[test]
    fn rank_two_transport() {
        let p = pair("01", 1);
        let win = Window::tensor(p.b().clone(), 5);
        let mut solver = Solver::new(win);
        for (f, expected_l, expected_u) in [(w("1,1"), w("2,2"), w("0,0")), (w("1,-1"), w("-1,1"), w("-1,1"))] {
            let l = adjacency_transport(&p, &solver.column(&f, BasisKind::Dual).unwrap()).unwrap();
            assert_eq!(l.f, expected_l);
            let t = adjacency_transport(&p, &solver.column(&f, BasisKind::Canonical).unwrap()).unwrap();
            assert_eq!(t.f, expected_u);
        }
    }

    #[test]
    fn three_factor_adjacency() {
        for (s, kappa) in [("011", 1), ("001", 2), ("010", 1), ("101", 2)] {
            let p = pair(s, kappa);
            let fs: Vec<WeightFn> = Window::tensor(p.b().clone(), 1).basis();
            let r = check_adjacency(&p, 4, &fs, &BasisKind::both()).unwrap();
            assert!(r.entries > r.columns, "{s}");
            check_parabolic_bases(&p, 4, &fs).unwrap();
        }
    }
}
