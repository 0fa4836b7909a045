// SPDX-License-Identifier: MIT OR Apache-2.0

//! The windowed bar involution.
//!
//! Because every tensor factor is the natural module or its restricted dual,
//! the quasi-R-matrix paired with a single factor collapses to
//! `1 + (q - q^-1) sum (root vector) (x) (matrix unit)`. The root vectors are
//! q-brackets of Chevalley generators acting through the coproduct, so the
//! bar map of a monomial is computed by peeling one factor at a time:
//!
//! * last factor natural, value `c`:
//!   `psi(x (x) v_c) = sum_{d >= c} X_{c,d} psi(x) (x) v_d` with
//!   `X_{c,c} = 1`, `X_{c,c+1} = (q - q^-1) E_c` and
//!   `X_{c,e} = E_c X_{c+1,e} - q^-1 X_{c+1,e} E_c`;
//! * last factor dual, value `c`:
//!   `psi(x (x) w_c) = sum_{d <= c} Y_{c,d} psi(x) (x) w_d` with
//!   `Y_{c,c-1} = (q - q^-1) E_{c-1}` and
//!   `Y_{c,d} = E_{c-1} Y_{c-1,d} - q^-1 Y_{c-1,d} E_{c-1}`.
//!
//! The mirror recursion peels the first factor instead and uses lowering
//! operators on the remaining factors; it is an independent code path used to
//! confirm that the result does not depend on the bracketing.
//!
//! A window of level `k` is a module for `gl(2k+1)`, on which this recursion
//! is the exact bar involution; its rows agree with every larger window after
//! discarding out-of-window terms.
//!
//! On a wedge window the basis vector with tail `h` is `M_{h.w0} H_0`; since
//! `H_0` is bar-invariant its bar image is `psi(M_{h.w0}) H_0`, which is read
//! back in wedge coordinates.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::combinat::{bruhat_leq, SignedSeq, WeightFn};
use crate::error::{BklError, Result};
use crate::fock::{add_scaled_terms, add_term, e_on_basis, f_on_basis, h0_terms, FockVector, Terms, Window};
use crate::scalars::LaurentPoly;

/// Which factor the recursion peels off.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    /// Peel the last factor; raising operators act on the prefix.
    LeftToRight,
    /// Peel the first factor; lowering operators act on the suffix.
    RightToLeft,
}

/// Which end of the generator chain the q-bracket peels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Peel {
    Low,
    High,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Block {
    /// The first `len` factors.
    Prefix(usize),
    /// The factors from `start` on.
    Suffix(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct ChainKey {
    block: Block,
    raising: bool,
    peel: Peel,
    lo: i32,
    hi: i32,
    g: Vec<i32>,
}

/// Memoising evaluator of the bar map on one window.
pub struct BarEngine {
    window: Window,
    seq: SignedSeq,
    psi_memo: HashMap<(Direction, Vec<i32>), Terms>,
    chain_memo: HashMap<ChainKey, Terms>,
}

impl BarEngine {
    /// A fresh engine for the window.
    pub fn new(window: Window) -> Self {
        let seq = window.ext_seq();
        BarEngine {
            window,
            seq,
            psi_memo: HashMap::new(),
            chain_memo: HashMap::new(),
        }
    }

    /// The window.
    pub fn window(&self) -> &Window {
        &self.window
    }

    fn block_seq(&self, block: Block) -> SignedSeq {
        match block {
            Block::Prefix(len) => self.seq.prefix(len),
            Block::Suffix(start) => self.seq.suffix(start),
        }
    }

    /// One generator on a basis vector of a block.
    fn gen_basis(&self, block: Block, raising: bool, a: i32, g: &[i32]) -> Terms {
        let seq = self.block_seq(block);
        let images = if raising {
            e_on_basis(&seq, g, a)
        } else {
            f_on_basis(&seq, g, a)
        };
        let mut out = Terms::new();
        for (v, e) in images {
            add_term(&mut out, WeightFn(v), &LaurentPoly::q_pow(e));
        }
        out
    }

    /// The q-bracket chain of generators with indices `lo..hi` (without the
    /// `(q - q^-1)` prefactor) applied to a basis vector of a block.
    fn chain_basis(&mut self, block: Block, raising: bool, peel: Peel, lo: i32, hi: i32, g: &[i32]) -> Terms {
        debug_assert!(lo < hi);
        if hi == lo + 1 {
            return self.gen_basis(block, raising, lo, g);
        }
        let key = ChainKey {
            block,
            raising,
            peel,
            lo,
            hi,
            g: g.to_vec(),
        };
        if let Some(t) = self.chain_memo.get(&key) {
            return t.clone();
        }
        let (a, rlo, rhi) = match peel {
            Peel::Low => (lo, lo + 1, hi),
            Peel::High => (hi - 1, lo, hi - 1),
        };
        // gen * R g
        let inner = self.chain_basis(block, raising, peel, rlo, rhi, g);
        let mut out = Terms::new();
        for (h, c) in &inner {
            let img = self.gen_basis(block, raising, a, &h.0);
            add_scaled_terms(&mut out, &img, c);
        }
        // - q^-1 R * gen g
        let first = self.gen_basis(block, raising, a, g);
        let minus_qinv = -LaurentPoly::q_pow(-1);
        for (h, c) in &first {
            let img = self.chain_basis(block, raising, peel, rlo, rhi, &h.0);
            add_scaled_terms(&mut out, &img, &(c * &minus_qinv));
        }
        self.chain_memo.insert(key, out.clone());
        out
    }

    fn chain_vector(&mut self, block: Block, raising: bool, peel: Peel, lo: i32, hi: i32, v: &Terms) -> Terms {
        let mut out = Terms::new();
        for (g, c) in v {
            let img = self.chain_basis(block, raising, peel, lo, hi, &g.0);
            add_scaled_terms(&mut out, &img, c);
        }
        out
    }

    /// Bar image of a tensor monomial over the first `p.len()` factors.
    fn psi_prefix(&mut self, p: &[i32]) -> Terms {
        let n = p.len();
        if n <= 1 {
            let mut t = Terms::new();
            t.insert(WeightFn(p.to_vec()), LaurentPoly::one());
            return t;
        }
        let key = (Direction::LeftToRight, p.to_vec());
        if let Some(t) = self.psi_memo.get(&key) {
            return t.clone();
        }
        let c = p[n - 1];
        let px = self.psi_prefix(&p[..n - 1]);
        let block = Block::Prefix(n - 1);
        let k = self.window.k;
        let mut out = Terms::new();
        append_factor(&mut out, &px, c, &LaurentPoly::one());
        let (targets, peel): (Vec<i32>, Peel) = if self.seq.bit(n - 1) == 0 {
            ((c + 1..=k).collect(), Peel::Low)
        } else {
            ((-k..c).collect(), Peel::High)
        };
        let factor = LaurentPoly::q_minus_qinv();
        for d in targets {
            let (lo, hi) = if d > c { (c, d) } else { (d, c) };
            let img = self.chain_vector(block, true, peel, lo, hi, &px);
            append_factor(&mut out, &img, d, &factor);
        }
        self.psi_memo.insert(key, out.clone());
        out
    }

    /// Bar image of a tensor monomial over the factors from `start` on.
    fn psi_suffix(&mut self, start: usize, s: &[i32]) -> Terms {
        if s.len() <= 1 {
            let mut t = Terms::new();
            t.insert(WeightFn(s.to_vec()), LaurentPoly::one());
            return t;
        }
        let key = (Direction::RightToLeft, s.to_vec());
        if let Some(t) = self.psi_memo.get(&key) {
            return t.clone();
        }
        let c = s[0];
        let py = self.psi_suffix(start + 1, &s[1..]);
        let block = Block::Suffix(start + 1);
        let k = self.window.k;
        let mut out = Terms::new();
        prepend_factor(&mut out, &py, c, &LaurentPoly::one());
        let (targets, peel): (Vec<i32>, Peel) = if self.seq.bit(start) == 0 {
            ((-k..c).collect(), Peel::High)
        } else {
            ((c + 1..=k).collect(), Peel::Low)
        };
        let factor = LaurentPoly::q_minus_qinv();
        for d in targets {
            let (lo, hi) = if d > c { (c, d) } else { (d, c) };
            let img = self.chain_vector(block, false, peel, lo, hi, &py);
            prepend_factor(&mut out, &img, d, &factor);
        }
        self.psi_memo.insert(key, out.clone());
        out
    }

    fn psi_tensor(&mut self, idx: &[i32], dir: Direction) -> Terms {
        match dir {
            Direction::LeftToRight => self.psi_prefix(idx),
            Direction::RightToLeft => self.psi_suffix(0, idx),
        }
    }

    /// Bar image of a basis vector of the window.
    pub fn bar_monomial(&mut self, f: &WeightFn) -> Result<FockVector> {
        self.bar_monomial_with(f, Direction::LeftToRight)
    }

    /// Bar image of a basis vector using the chosen recursion.
    pub fn bar_monomial_with(&mut self, f: &WeightFn, dir: Direction) -> Result<FockVector> {
        if !self.window.contains(&f.0) {
            return Err(BklError::InvalidInput(format!(
                "index {f} is not a basis index of the window (level {}, wedge {})",
                self.window.k, self.window.wedge
            )));
        }
        let terms = match self.window.wedge.side_len() {
            None => self.psi_tensor(&f.0, dir),
            Some((side, kw)) => {
                let h = self.window.b.len();
                let mut lowest = f.0.clone();
                lowest[h..].reverse();
                let psi = self.psi_tensor(&lowest, dir);
                let sym = h0_terms(&self.seq, &psi, h, kw)?;
                sym.into_iter().filter(|(g, _)| side.is_sorted(&g.0[h..])).collect()
            }
        };
        Ok(FockVector::from_terms_unchecked(self.window.clone(), terms))
    }

    /// The antilinear extension to arbitrary vectors.
    pub fn bar_vector(&mut self, v: &FockVector) -> Result<FockVector> {
        if v.window() != &self.window {
            return Err(BklError::InvalidInput(
                "vector and engine live on different windows".into(),
            ));
        }
        let mut out = Terms::new();
        for (f, c) in v.terms() {
            let row = self.bar_monomial(f)?;
            add_scaled_terms(&mut out, row.terms(), &c.bar());
        }
        Ok(FockVector::from_terms_unchecked(self.window.clone(), out))
    }
}

fn append_factor(out: &mut Terms, v: &Terms, x: i32, c: &LaurentPoly) {
    for (g, coef) in v {
        add_term(out, g.concat(&[x]), &(coef * c));
    }
}

fn prepend_factor(out: &mut Terms, v: &Terms, x: i32, c: &LaurentPoly) {
    for (g, coef) in v {
        let mut idx = Vec::with_capacity(g.len() + 1);
        idx.push(x);
        idx.extend_from_slice(&g.0);
        add_term(out, WeightFn(idx), &(coef * c));
    }
}

/// Bar image of a single basis vector.
pub fn bar_monomial(window: &Window, f: &WeightFn) -> Result<FockVector> {
    BarEngine::new(window.clone()).bar_monomial(f)
}

/// The bar map of a whole window: row `f` holds `psi(M_f) = sum_g r_{gf} M_g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarTable {
    window: Window,
    rows: BTreeMap<WeightFn, FockVector>,
}

impl BarTable {
    /// The window.
    pub fn window(&self) -> &Window {
        &self.window
    }

    /// All rows.
    pub fn rows(&self) -> &BTreeMap<WeightFn, FockVector> {
        &self.rows
    }

    /// The row of `f`.
    pub fn row(&self, f: &WeightFn) -> Option<&FockVector> {
        self.rows.get(f)
    }

    /// `r_{gf}`.
    pub fn r(&self, g: &WeightFn, f: &WeightFn) -> LaurentPoly {
        self.rows.get(f).map(|row| row.coeff(g)).unwrap_or_default()
    }

    /// Number of rows.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    /// True when the table has no rows.
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Antilinear application of the table to a vector of the window.
    pub fn apply(&self, v: &FockVector) -> Result<FockVector> {
        let mut out = Terms::new();
        for (f, c) in v.terms() {
            let row = self
                .rows
                .get(f)
                .ok_or_else(|| BklError::InvalidInput(format!("no bar row for {f}")))?;
            add_scaled_terms(&mut out, row.terms(), &c.bar());
        }
        Ok(FockVector::from_terms_unchecked(self.window.clone(), out))
    }

    /// Every row is `M_f` plus terms strictly below `f` in the Bruhat ordering.
    pub fn check_unitriangular(&self) -> Result<()> {
        let seq = self.window.ext_seq();
        for (f, row) in &self.rows {
            if !row.coeff(f).is_one() {
                return Err(BklError::Invariant(format!(
                    "bar row {f} has diagonal entry {}",
                    row.coeff(f)
                )));
            }
            for g in row.terms().keys() {
                if g != f && !bruhat_leq(&seq, g, f) {
                    return Err(BklError::Invariant(format!(
                        "bar row {f} has a term at {g}, which is not below it in the ordering of {seq}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `sum_h r_{gh} bar(r_{hf}) = delta_{gf}` for every row.
    pub fn check_involution(&self) -> Result<()> {
        self.rows.par_iter().try_for_each(|(f, row)| {
            let back = self.apply(row)?;
            let expected = FockVector::monomial(self.window.clone(), f.clone())?;
            if back != expected {
                let bad = back
                    .sub(&expected)
                    .terms()
                    .keys()
                    .next()
                    .map(|g| g.to_string())
                    .unwrap_or_default();
                return Err(BklError::Invariant(format!(
                    "bar is not an involution at the pair ({bad}, {f})"
                )));
            }
            Ok(())
        })
    }
}

/// Compute every row of a window in parallel and verify unitriangularity and
/// the involution identity.
pub fn bar_table(window: &Window) -> Result<BarTable> {
    let table = bar_table_unchecked(window, Direction::LeftToRight)?;
    table.check_unitriangular()?;
    table.check_involution()?;
    Ok(table)
}

/// Bar table of a window with a finite wedge part.
pub fn bar_wedge_table(window: &Window) -> Result<BarTable> {
    if window.wedge.side_len().is_none() {
        return Err(BklError::InvalidInput("bar_wedge_table needs a wedge part".into()));
    }
    bar_table(window)
}

/// All rows computed with the chosen recursion, without checks.
pub fn bar_table_unchecked(window: &Window, dir: Direction) -> Result<BarTable> {
    let basis = window.basis();
    let chunk = (basis.len() / (4 * rayon::current_num_threads().max(1))).max(16);
    let rows: Vec<(WeightFn, FockVector)> = basis
        .par_chunks(chunk)
        .map(|part| {
            let mut engine = BarEngine::new(window.clone());
            part.iter()
                .map(|f| Ok((f.clone(), engine.bar_monomial_with(f, dir)?)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(BarTable {
        window: window.clone(),
        rows: rows.into_iter().collect(),
    })
}

#[derive(Serialize)]
struct RowJson<'a> {
    f: String,
    row: Vec<EntryJson<'a>>,
}

#[derive(Serialize)]
struct EntryJson<'a> {
    g: String,
    poly: &'a LaurentPoly,
}

#[derive(Serialize)]
struct TableJson<'a> {
    b: String,
    k: i32,
    wedge: String,
    rows: Vec<RowJson<'a>>,
}

impl Serialize for BarTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableJson {
            b: self.window.b.to_string(),
            k: self.window.k,
            wedge: self.window.wedge.to_string(),
            rows: self
                .rows
                .iter()
                .map(|(f, row)| RowJson {
                    f: f.to_string(),
                    row: row
                        .terms()
                        .iter()
                        .map(|(g, poly)| EntryJson { g: g.to_string(), poly })
                        .collect(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::Side;
    use crate::fock::{act, hecke_terms, ChevalleyGen};

    fn b(s: &str) -> SignedSeq {
        s.parse().unwrap()
    }

    fn w(s: &str) -> WeightFn {
        s.parse().unwrap()
    }

    fn q(e: i32) -> LaurentPoly {
        LaurentPoly::q_pow(e)
    }

    fn vec_of(win: &Window, pairs: &[(Vec<i32>, LaurentPoly)]) -> FockVector {
        let mut t = Terms::new();
        for (s, c) in pairs {
            add_term(&mut t, WeightFn(s.clone()), c);
        }
        FockVector::from_terms(win.clone(), t).unwrap()
    }

    /// Expected row of a tied monomial on a two-factor mixed window: the
    /// correction runs down (natural first) or up (dual first) the diagonal.
    fn tied_row(win: &Window, a: i32, step: i32) -> FockVector {
        let mut pairs = vec![(vec![a, a], q(0))];
        let mut t = 1;
        while (a + step * t).abs() <= win.k {
            let x = a + step * t;
            let sign = if t % 2 == 1 { 1 } else { -1 };
            let c = LaurentPoly::q_minus_qinv() * LaurentPoly::monomial(sign, -(t - 1));
            pairs.push((vec![x, x], c));
            t += 1;
        }
        vec_of(win, &pairs)
    }

    #[test]
    fn rank_two_rows() {
        let win = Window::tensor(b("01"), 3);
        for a in -3..=3 {
            assert_eq!(
                bar_monomial(&win, &WeightFn(vec![a, a])).unwrap(),
                tied_row(&win, a, -1)
            );
        }
        assert_eq!(
            bar_monomial(&win, &w("1,2")).unwrap(),
            vec_of(&win, &[(vec![1, 2], q(0))])
        );
        let win = Window::tensor(b("10"), 3);
        for a in -3..=3 {
            assert_eq!(bar_monomial(&win, &WeightFn(vec![a, a])).unwrap(), tied_row(&win, a, 1));
        }
        let win = Window::tensor(b("00"), 3);
        assert_eq!(
            bar_monomial(&win, &w("1,2")).unwrap(),
            vec_of(&win, &[(vec![1, 2], q(0))])
        );
        assert_eq!(
            bar_monomial(&win, &w("2,1")).unwrap(),
            vec_of(&win, &[(vec![2, 1], q(0)), (vec![1, 2], LaurentPoly::q_minus_qinv())])
        );
        let win = Window::tensor(b("11"), 3);
        assert_eq!(
            bar_monomial(&win, &w("1,2")).unwrap(),
            vec_of(&win, &[(vec![1, 2], q(0)), (vec![2, 1], LaurentPoly::q_minus_qinv())])
        );
    }

    #[test]
    fn single_factor_is_fixed() {
        for s in ["0", "1"] {
            let win = Window::tensor(b(s), 3);
            let t = bar_table(&win).unwrap();
            for (f, row) in t.rows() {
                assert_eq!(row, &FockVector::monomial(win.clone(), f.clone()).unwrap());
            }
        }
    }

    #[test]
    fn tables_are_unitriangular_involutions() {
        for s in ["00", "01", "10", "11"] {
            bar_table(&Window::tensor(b(s), 3)).unwrap();
        }
        for s in ["001", "010", "011", "101", "110", "0110"] {
            bar_table(&Window::tensor(b(s), 2)).unwrap();
        }
    }

    #[test]
    fn bracketing_independence() {
        for s in ["01", "10", "001", "010", "011", "101", "0110", "1001"] {
            let win = Window::tensor(b(s), 2);
            let ltr = bar_table_unchecked(&win, Direction::LeftToRight).unwrap();
            let rtl = bar_table_unchecked(&win, Direction::RightToLeft).unwrap();
            assert_eq!(ltr, rtl, "b = {s}");
        }
    }

    #[test]
    fn stable_in_the_level() {
        for s in ["01", "011", "0101"] {
            let small = Window::tensor(b(s), 2);
            let big = Window::tensor(b(s), 3);
            let mut engine = BarEngine::new(big);
            for f in small.basis() {
                let row = engine.bar_monomial(&f).unwrap();
                let cut: Terms = row
                    .terms()
                    .iter()
                    .filter(|(g, _)| g.max_abs() <= 2)
                    .map(|(g, c)| (g.clone(), c.clone()))
                    .collect();
                assert_eq!(cut, bar_monomial(&small, &f).unwrap().into_terms(), "b = {s}, f = {f}");
            }
        }
    }

    #[test]
    fn antilinear_equivariance() {
        for s in ["01", "10", "011", "0101"] {
            let win = Window::tensor(b(s), 2);
            let mut engine = BarEngine::new(win.clone());
            for f in win.basis().into_iter().step_by(7) {
                let m = FockVector::monomial(win.clone(), f.clone()).unwrap();
                let psi = engine.bar_monomial(&f).unwrap();
                for a in win.generator_range() {
                    for (gen, gen_bar) in [
                        (ChevalleyGen::e(a), ChevalleyGen::e(a)),
                        (ChevalleyGen::f(a), ChevalleyGen::f(a)),
                        (ChevalleyGen::k(a), ChevalleyGen::kinv(a)),
                    ] {
                        let lhs = engine.bar_vector(&act(gen, &m).unwrap()).unwrap();
                        let rhs = act(gen_bar, &psi).unwrap();
                        assert_eq!(lhs, rhs, "b = {s}, f = {f}, {gen:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn compatible_with_hecke_generators() {
        // psi(x H_i) = psi(x) bar(H_i) with bar(H_i) = H_i + q - q^-1.
        for s in ["000", "111", "001", "110", "0110"] {
            let bb = b(s);
            let win = Window::tensor(bb.clone(), 2);
            let mut engine = BarEngine::new(win.clone());
            for i in 0..bb.len() - 1 {
                if bb.bit(i) != bb.bit(i + 1) {
                    continue;
                }
                for f in win.basis().into_iter().step_by(3) {
                    let mut t = Terms::new();
                    t.insert(f.clone(), LaurentPoly::one());
                    let xh = FockVector::from_terms(win.clone(), hecke_terms(&bb, &t, i).unwrap()).unwrap();
                    let lhs = engine.bar_vector(&xh).unwrap();
                    let psi = engine.bar_monomial(&f).unwrap();
                    let mut rhs = hecke_terms(&bb, psi.terms(), i).unwrap();
                    add_scaled_terms(&mut rhs, psi.terms(), &LaurentPoly::q_minus_qinv());
                    assert_eq!(lhs.into_terms(), rhs, "b = {s}, i = {i}, f = {f}");
                }
            }
        }
    }

    #[test]
    fn wedge_tables() {
        // The exterior square of the natural module is bar-fixed.
        for side in [Side::V, Side::W] {
            let win = Window::wedge(b(""), 3, side, 2);
            let t = bar_wedge_table(&win).unwrap();
            for (f, row) in t.rows() {
                assert_eq!(row.len(), 1, "{side} {f}");
            }
        }
        // A wedge of size one is an ordinary factor.
        let wedge = bar_wedge_table(&Window::wedge(b("0"), 3, Side::W, 1)).unwrap();
        let tensor = bar_table(&Window::tensor(b("01"), 3)).unwrap();
        for (f, row) in wedge.rows() {
            assert_eq!(row.terms(), tensor.row(f).unwrap().terms());
        }
        // Mixed cases are involutions and triangular.
        bar_wedge_table(&Window::wedge(b("0"), 2, Side::W, 2)).unwrap();
        bar_wedge_table(&Window::wedge(b("01"), 2, Side::V, 2)).unwrap();
        bar_wedge_table(&Window::wedge(b("1"), 2, Side::V, 3)).unwrap();
        assert!(bar_wedge_table(&Window::tensor(b("0"), 2)).is_err());
    }

    #[test]
    fn wedge_directions_agree() {
        let win = Window::wedge(b("10"), 2, Side::V, 2);
        let ltr = bar_table_unchecked(&win, Direction::LeftToRight).unwrap();
        let rtl = bar_table_unchecked(&win, Direction::RightToLeft).unwrap();
        assert_eq!(ltr, rtl);
    }

    #[test]
    fn json_export() {
        let t = bar_table(&Window::tensor(b("00"), 1)).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.starts_with(
            r#"{"b":"00","k":1,"wedge":"none","rows":[{"f":"-1,-1","row":[{"g":"-1,-1","poly":{"0":1}}]}"#
        ));
    }
}
