// SPDX-License-Identifier: MIT OR Apache-2.0

//! Windowed Fock spaces: sparse vectors over standard monomials, the
//! Chevalley action through the coproduct, the Hecke action on pure tensor
//! blocks, the symmetriser `H_0` and the wedge embedding.
//!
//! Conventions. On the natural module `K_a v_b = q^{d_ab} v_b`,
//! `E_a v_{a+1} = v_a`, `F_a v_a = v_{a+1}`; on the restricted dual
//! `K_a w_b = q^{-d_ab} w_b`, `E_a w_a = w_{a+1}`, `F_a w_{a+1} = w_a`. The
//! coproduct is `D(E_a) = 1 (x) E_a + E_a (x) K_{a+1,a}` and
//! `D(F_a) = F_a (x) 1 + K_{a,a+1} (x) F_a`, so `E_a` acting on a factor picks up
//! `K_{a+1,a}` from every factor to its right and `F_a` picks up `K_{a,a+1}`
//! from every factor to its left.
//!
//! A window of level `k` spans the monomials with all entries in `[-k, k]`.
//! It is stable under `E_a, F_a` for `-k <= a <= k - 1`, so these generators
//! act exactly; anything else is rejected.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::combinat::{Partition, Side, SignedSeq, Tail, WedgeIndex, WeightFn};
use crate::error::{BklError, Result};
use crate::scalars::{gauss_fact, LaurentPoly};

/// Terms of a sparse vector, keyed by the flat index (head followed by wedge tail).
pub type Terms = BTreeMap<WeightFn, LaurentPoly>;

/// Wedge part of a window.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WedgeSpec {
    /// Pure tensor window.
    None,
    /// `wedge^kw` of the natural module.
    V(usize),
    /// `wedge^kw` of the restricted dual.
    W(usize),
}

impl WedgeSpec {
    /// Side and size, if a wedge part is present.
    pub fn side_len(self) -> Option<(Side, usize)> {
        match self {
            WedgeSpec::None => None,
            WedgeSpec::V(k) => Some((Side::V, k)),
            WedgeSpec::W(k) => Some((Side::W, k)),
        }
    }

    /// Build from a side and a size.
    pub fn from_side(side: Side, kw: usize) -> Self {
        match side {
            Side::V => WedgeSpec::V(kw),
            Side::W => WedgeSpec::W(kw),
        }
    }

    /// Number of wedge factors.
    pub fn len(self) -> usize {
        self.side_len().map_or(0, |(_, k)| k)
    }

    /// True when there is no wedge part (or it has no factors).
    pub fn is_empty(self) -> bool {
        self.len() == 0
    }
}

impl fmt::Display for WedgeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WedgeSpec::None => write!(f, "none"),
            WedgeSpec::V(k) => write!(f, "V:{k}"),
            WedgeSpec::W(k) => write!(f, "W:{k}"),
        }
    }
}

impl FromStr for WedgeSpec {
    type Err = BklError;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "none" {
            return Ok(WedgeSpec::None);
        }
        let (side, k) = s
            .split_once(':')
            .ok_or_else(|| BklError::Parse(format!("wedge spec {s:?} must look like V:k or W:k")))?;
        let side: Side = side.parse()?;
        let k: usize = k
            .trim()
            .parse()
            .map_err(|_| BklError::Parse(format!("invalid wedge size in {s:?}")))?;
        Ok(WedgeSpec::from_side(side, k))
    }
}

/// A finite truncation: sequence, level and optional wedge part.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Window {
    /// The tensor sequence.
    pub b: SignedSeq,
    /// Level: entries are bounded by `k` in absolute value.
    pub k: i32,
    /// Wedge part.
    pub wedge: WedgeSpec,
}

impl Window {
    /// Pure tensor window.
    pub fn tensor(b: SignedSeq, k: i32) -> Self {
        Window {
            b,
            k,
            wedge: WedgeSpec::None,
        }
    }

    /// Tensor part followed by a wedge part.
    pub fn wedge(b: SignedSeq, k: i32, side: Side, kw: usize) -> Self {
        Window {
            b,
            k,
            wedge: WedgeSpec::from_side(side, kw),
        }
    }

    /// The sequence including the wedge factors (zeros for `V`, ones for `W`).
    pub fn ext_seq(&self) -> SignedSeq {
        match self.wedge.side_len() {
            None => self.b.clone(),
            Some((side, kw)) => self.b.extended(side.bit(), kw),
        }
    }

    /// Length of a flat index.
    pub fn index_len(&self) -> usize {
        self.b.len() + self.wedge.len()
    }

    /// The same window at another level.
    pub fn with_k(&self, k: i32) -> Window {
        Window { k, ..self.clone() }
    }

    /// The tensor window obtained by unfolding the wedge into tensor factors.
    pub fn unfolded(&self) -> Window {
        Window::tensor(self.ext_seq(), self.k)
    }

    /// Whether a flat index belongs to the basis of the window.
    pub fn contains(&self, idx: &[i32]) -> bool {
        idx.len() == self.index_len() && idx.iter().all(|x| x.abs() <= self.k) && self.tail_sorted(idx)
    }

    fn tail_sorted(&self, idx: &[i32]) -> bool {
        match self.wedge.side_len() {
            None => true,
            Some((side, _)) => side.is_sorted(&idx[self.b.len()..]),
        }
    }

    /// Enumerate the whole basis (exponential in the length; small windows only).
    pub fn basis(&self) -> Vec<WeightFn> {
        let mut out: Vec<Vec<i32>> = vec![Vec::new()];
        for _ in 0..self.index_len() {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (-self.k..=self.k).map(move |x| {
                        let mut u = v.clone();
                        u.push(x);
                        u
                    })
                })
                .collect();
        }
        out.into_iter().filter(|v| self.tail_sorted(v)).map(WeightFn).collect()
    }

    /// Range of generator indices `a` that act on the window.
    pub fn generator_range(&self) -> std::ops::RangeInclusive<i32> {
        -self.k..=self.k - 1
    }
}

/// A finitely supported vector in a windowed Fock space.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FockVector {
    window: Window,
    terms: Terms,
}

impl FockVector {
    /// The zero vector.
    pub fn zero(window: Window) -> Self {
        FockVector {
            window,
            terms: Terms::new(),
        }
    }

    /// A single basis vector.
    pub fn monomial(window: Window, idx: WeightFn) -> Result<Self> {
        if !window.contains(&idx.0) {
            return Err(BklError::InvalidInput(format!(
                "index {idx} is not a basis index of the window (level {}, wedge {})",
                window.k, window.wedge
            )));
        }
        let mut terms = Terms::new();
        terms.insert(idx, LaurentPoly::one());
        Ok(FockVector { window, terms })
    }

    /// Build from terms, validating every index and dropping zeros.
    pub fn from_terms(window: Window, terms: Terms) -> Result<Self> {
        for idx in terms.keys() {
            if !window.contains(&idx.0) {
                return Err(BklError::WindowOverflow {
                    index: idx.to_string(),
                    k: window.k,
                });
            }
        }
        Ok(FockVector {
            window,
            terms: terms.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub(crate) fn from_terms_unchecked(window: Window, terms: Terms) -> Self {
        FockVector { window, terms }
    }

    /// The window.
    pub fn window(&self) -> &Window {
        &self.window
    }

    /// The terms.
    pub fn terms(&self) -> &Terms {
        &self.terms
    }

    /// Consume into terms.
    pub fn into_terms(self) -> Terms {
        self.terms
    }

    /// Coefficient of a basis index.
    pub fn coeff(&self, idx: &WeightFn) -> LaurentPoly {
        self.terms.get(idx).cloned().unwrap_or_default()
    }

    /// True for the zero vector.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True when there are no terms.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `self + c * other` in place.
    pub fn add_scaled(&mut self, other: &FockVector, c: &LaurentPoly) {
        add_scaled_terms(&mut self.terms, &other.terms, c);
    }

    /// `c * self`.
    pub fn scaled(&self, c: &LaurentPoly) -> FockVector {
        let mut out = FockVector::zero(self.window.clone());
        out.add_scaled(self, c);
        out
    }

    /// Difference.
    pub fn sub(&self, other: &FockVector) -> FockVector {
        let mut out = self.clone();
        out.add_scaled(other, &LaurentPoly::constant(-1));
        out
    }

    /// Apply the bar involution to every coefficient (not to the basis).
    pub fn bar_coeffs(&self) -> FockVector {
        FockVector {
            window: self.window.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.bar())).collect(),
        }
    }
}

pub(crate) fn add_scaled_terms(dst: &mut Terms, src: &Terms, c: &LaurentPoly) {
    if c.is_zero() {
        return;
    }
    for (idx, coef) in src {
        add_term(dst, idx.clone(), &(coef * c));
    }
}

pub(crate) fn add_term(dst: &mut Terms, idx: WeightFn, c: &LaurentPoly) {
    if c.is_zero() {
        return;
    }
    match dst.entry(idx) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c.clone());
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

/// Generator kinds of the quantum group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GenKind {
    /// Raising generator.
    E,
    /// Lowering generator.
    F,
    /// Cartan generator.
    K,
    /// Inverse Cartan generator.
    Kinv,
}

/// A Chevalley generator or divided power `E_a^(r)`, `F_a^(r)`, `K_a^{+-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ChevalleyGen {
    /// Kind.
    pub kind: GenKind,
    /// Index `a`.
    pub a: i32,
    /// Divided power exponent (1 for plain generators; must be 1 for `K`).
    pub r: u32,
}

impl ChevalleyGen {
    /// `E_a`.
    pub fn e(a: i32) -> Self {
        ChevalleyGen {
            kind: GenKind::E,
            a,
            r: 1,
        }
    }
    /// `F_a`.
    pub fn f(a: i32) -> Self {
        ChevalleyGen {
            kind: GenKind::F,
            a,
            r: 1,
        }
    }
    /// `K_a`.
    pub fn k(a: i32) -> Self {
        ChevalleyGen {
            kind: GenKind::K,
            a,
            r: 1,
        }
    }
    /// `K_a^{-1}`.
    pub fn kinv(a: i32) -> Self {
        ChevalleyGen {
            kind: GenKind::Kinv,
            a,
            r: 1,
        }
    }
    /// `E_a^(r) = E_a^r / [r]!`.
    pub fn e_div(a: i32, r: u32) -> Self {
        ChevalleyGen { kind: GenKind::E, a, r }
    }
    /// `F_a^(r) = F_a^r / [r]!`.
    pub fn f_div(a: i32, r: u32) -> Self {
        ChevalleyGen { kind: GenKind::F, a, r }
    }
}

/// Exponent of `K_a` on a single factor.
#[inline]
fn k_exp(bit: u8, x: i32, a: i32) -> i32 {
    let hit = i32::from(x == a);
    if bit == 0 {
        hit
    } else {
        -hit
    }
}

/// `E_a` on a monomial of the tensor product with sequence `b`.
///
/// Returns `(index, q-exponent)` pairs; the index may have an unsorted tail,
/// which callers working in a wedge space must discard.
pub(crate) fn e_on_basis(b: &SignedSeq, idx: &[i32], a: i32) -> Vec<(Vec<i32>, i32)> {
    let mut out = Vec::new();
    // Twist K_{a+1,a} accumulated from the right.
    let mut twist = 0;
    for i in (0..idx.len()).rev() {
        let bit = b.bit(i);
        let x = idx[i];
        let target = if bit == 0 {
            (x == a + 1).then_some(a)
        } else {
            (x == a).then_some(a + 1)
        };
        if let Some(y) = target {
            let mut v = idx.to_vec();
            v[i] = y;
            out.push((v, twist));
        }
        twist += k_exp(bit, x, a + 1) - k_exp(bit, x, a);
    }
    out
}

/// `F_a` on a monomial; see [`e_on_basis`].
pub(crate) fn f_on_basis(b: &SignedSeq, idx: &[i32], a: i32) -> Vec<(Vec<i32>, i32)> {
    let mut out = Vec::new();
    // Twist K_{a,a+1} accumulated from the left.
    let mut twist = 0;
    for (i, &x) in idx.iter().enumerate() {
        let bit = b.bit(i);
        let target = if bit == 0 {
            (x == a).then_some(a + 1)
        } else {
            (x == a + 1).then_some(a)
        };
        if let Some(y) = target {
            let mut v = idx.to_vec();
            v[i] = y;
            out.push((v, twist));
        }
        twist += k_exp(bit, x, a) - k_exp(bit, x, a + 1);
    }
    out
}

/// Exponent of `K_a` on a monomial.
pub(crate) fn k_on_basis(b: &SignedSeq, idx: &[i32], a: i32) -> i32 {
    idx.iter().enumerate().map(|(i, &x)| k_exp(b.bit(i), x, a)).sum()
}

fn apply_once(window: &Window, terms: &Terms, kind: GenKind, a: i32) -> Result<Terms> {
    let seq = window.ext_seq();
    let mut out = Terms::new();
    for (idx, c) in terms {
        match kind {
            GenKind::K | GenKind::Kinv => {
                let mut e = k_on_basis(&seq, &idx.0, a);
                if kind == GenKind::Kinv {
                    e = -e;
                }
                add_term(&mut out, idx.clone(), &c.shift(e));
            }
            GenKind::E | GenKind::F => {
                let images = if kind == GenKind::E {
                    e_on_basis(&seq, &idx.0, a)
                } else {
                    f_on_basis(&seq, &idx.0, a)
                };
                for (v, e) in images {
                    if !window.tail_sorted(&v) {
                        continue;
                    }
                    if v.iter().any(|x| x.abs() > window.k) {
                        return Err(BklError::WindowOverflow {
                            index: WeightFn(v).to_string(),
                            k: window.k,
                        });
                    }
                    add_term(&mut out, WeightFn(v), &c.shift(e));
                }
            }
        }
    }
    Ok(out)
}

/// Act by a Chevalley generator or divided power.
///
/// The wedge part, if any, is acted on by the same positionwise rule with
/// results having a repeated tail value discarded, which is exactly the
/// straightening-free action on the exterior power.
pub fn act(gen: ChevalleyGen, v: &FockVector) -> Result<FockVector> {
    let window = v.window();
    if !window.generator_range().contains(&gen.a) {
        return Err(BklError::InvalidInput(format!(
            "generator index {} does not act on a window of level {} (need {} <= a <= {})",
            gen.a,
            window.k,
            -window.k,
            window.k - 1
        )));
    }
    if gen.r == 0 {
        return Ok(v.clone());
    }
    if matches!(gen.kind, GenKind::K | GenKind::Kinv) && gen.r != 1 {
        return Err(BklError::InvalidInput(
            "Cartan generators have no divided powers".into(),
        ));
    }
    let mut terms = v.terms.clone();
    for _ in 0..gen.r {
        terms = apply_once(window, &terms, gen.kind, gen.a)?;
    }
    if gen.r > 1 {
        let d = gauss_fact(gen.r);
        for (idx, c) in terms.iter_mut() {
            *c = c.div_exact(&d).ok_or_else(|| {
                BklError::NonIntegral(format!("divided power of order {} at index {idx}: {c}", gen.r))
            })?;
        }
    }
    Ok(FockVector::from_terms_unchecked(window.clone(), terms))
}

/// Right action of `H_i` on a single monomial at 0-based positions `i, i+1`
/// of a block of parity `bit`.
pub(crate) fn hecke_on_basis(bit: u8, idx: &WeightFn, i: usize) -> Vec<(WeightFn, LaurentPoly)> {
    let (x, y) = (idx.0[i], idx.0[i + 1]);
    if x == y {
        return vec![(idx.clone(), LaurentPoly::q_pow(-1))];
    }
    let swapped = idx.swapped(i, i + 1);
    // f precedes f.s_i exactly when the swap moves up.
    let goes_up = if bit == 0 { x < y } else { x > y };
    if goes_up {
        vec![(swapped, LaurentPoly::one())]
    } else {
        vec![
            (swapped, LaurentPoly::one()),
            (idx.clone(), -LaurentPoly::q_minus_qinv()),
        ]
    }
}

/// Right action of `H_i` (0-based `i`) on terms over sequence `seq`; positions
/// `i, i+1` must carry equal bits.
pub(crate) fn hecke_terms(seq: &SignedSeq, terms: &Terms, i: usize) -> Result<Terms> {
    if i + 1 >= seq.len() || seq.bit(i) != seq.bit(i + 1) {
        return Err(BklError::InvalidInput(format!(
            "H_{} needs two factors of the same kind in {seq}",
            i + 1
        )));
    }
    let bit = seq.bit(i);
    let mut out = Terms::new();
    for (idx, c) in terms {
        for (g, h) in hecke_on_basis(bit, idx, i) {
            add_term(&mut out, g, &(c * &h));
        }
    }
    Ok(out)
}

/// Right action of `H_i` (1-based `i`) on a pure `V^{(x)k}` or `W^{(x)k}` window.
pub fn hecke_act(i: usize, v: &FockVector) -> Result<FockVector> {
    let w = v.window();
    let seq = w.ext_seq();
    let pure = w.wedge == WedgeSpec::None && seq.bits().windows(2).all(|p| p[0] == p[1]);
    if !pure {
        return Err(BklError::InvalidInput(format!(
            "the Hecke action needs a pure tensor window, got {seq} with wedge {}",
            w.wedge
        )));
    }
    if i == 0 {
        return Err(BklError::InvalidInput("Hecke generators are numbered from 1".into()));
    }
    let terms = hecke_terms(&seq, &v.terms, i - 1)?;
    Ok(FockVector::from_terms_unchecked(w.clone(), terms))
}

/// A permutation in one-line notation, its length, and the parent it was
/// reached from together with the simple reflection used.
pub(crate) type BfsPerm = (Vec<usize>, usize, Option<(usize, usize)>);

/// All permutations of `0..k` with their lengths and a parent link
/// `(parent, i)` meaning `sigma = parent * s_i` with `l(sigma) = l(parent) + 1`.
pub(crate) fn permutations_bfs(k: usize) -> Vec<BfsPerm> {
    let id: Vec<usize> = (0..k).collect();
    let mut out = vec![(id.clone(), 0usize, None)];
    let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    seen.insert(id, 0);
    let mut cursor = 0;
    while cursor < out.len() {
        let (sigma, len, _) = out[cursor].clone();
        for i in 0..k.saturating_sub(1) {
            if sigma[i] < sigma[i + 1] {
                let mut next = sigma.clone();
                next.swap(i, i + 1);
                if !seen.contains_key(&next) {
                    seen.insert(next.clone(), out.len());
                    out.push((next, len + 1, Some((cursor, i))));
                }
            }
        }
        cursor += 1;
    }
    out
}

/// `(-q)^e`.
pub(crate) fn neg_q_pow(e: i32) -> LaurentPoly {
    LaurentPoly::monomial(if e.rem_euclid(2) == 0 { 1 } else { -1 }, e)
}

/// Right multiplication by `H_0 = sum_sigma (-q)^{l(sigma) - l(w0)} H_sigma` on
/// the block of `kw` factors starting at 0-based position `start`.
pub(crate) fn h0_terms(seq: &SignedSeq, terms: &Terms, start: usize, kw: usize) -> Result<Terms> {
    if kw <= 1 {
        return Ok(terms.clone());
    }
    let perms = permutations_bfs(kw);
    let l_w0 = (kw * (kw - 1) / 2) as i32;
    let mut images: Vec<Terms> = Vec::with_capacity(perms.len());
    let mut out = Terms::new();
    for (_, len, parent) in &perms {
        let img = match parent {
            None => terms.clone(),
            Some((p, i)) => hecke_terms(seq, &images[*p], start + i)?,
        };
        add_scaled_terms(&mut out, &img, &neg_q_pow(*len as i32 - l_w0));
        images.push(img);
    }
    Ok(out)
}

/// Right multiplication by `H_0` on a pure tensor window.
pub fn h0_symmetrize(v: &FockVector) -> Result<FockVector> {
    let w = v.window();
    let seq = w.ext_seq();
    if w.wedge != WedgeSpec::None || seq.bits().windows(2).any(|p| p[0] != p[1]) {
        return Err(BklError::InvalidInput("H_0 acts on a pure tensor block only".into()));
    }
    let terms = h0_terms(&seq, &v.terms, 0, seq.len())?;
    Ok(FockVector::from_terms_unchecked(w.clone(), terms))
}

/// Embed a finite wedge index: the basis vector with tail `h` goes to
/// `M_{h.w0} H_0` in the unfolded tensor window.
pub fn wedge_embed(window: &Window, x: &WedgeIndex) -> Result<FockVector> {
    let (side, kw) = window
        .wedge
        .side_len()
        .ok_or_else(|| BklError::InvalidInput("wedge_embed needs a window with a wedge part".into()))?;
    if x.side != side {
        return Err(BklError::InvalidInput(format!(
            "index side {} differs from window side {side}",
            x.side
        )));
    }
    let flat = x
        .flatten(kw)
        .ok_or_else(|| BklError::InvalidInput(format!("wedge index does not fit at level {kw}")))?;
    if !window.contains(&flat.0) {
        return Err(BklError::InvalidInput(format!("index {flat} is outside the window")));
    }
    let tensor = window.unfolded();
    let start = window.b.len();
    let mut lowest = flat.0.clone();
    lowest[start..].reverse();
    let mut terms = Terms::new();
    terms.insert(WeightFn(lowest), LaurentPoly::one());
    let terms = h0_terms(&tensor.b, &terms, start, kw)?;
    Ok(FockVector::from_terms_unchecked(tensor, terms))
}

/// Read a vector in the image of the embedding back in wedge coordinates:
/// the coefficient of a wedge basis vector is the coefficient of its
/// strictly sorted monomial. Repeated tail values are killed.
pub fn wedge_project(v: &FockVector, side: Side, kw: usize) -> Result<FockVector> {
    let tw = v.window();
    if tw.wedge != WedgeSpec::None || tw.b.len() < kw {
        return Err(BklError::InvalidInput(
            "wedge_project expects an unfolded tensor vector".into(),
        ));
    }
    let head_len = tw.b.len() - kw;
    if tw.b.bits()[head_len..].iter().any(|&x| x != side.bit()) {
        return Err(BklError::InvalidInput(format!(
            "the last {kw} factors of {} are not of kind {side}",
            tw.b
        )));
    }
    let window = Window::wedge(tw.b.prefix(head_len), tw.k, side, kw);
    let terms = v
        .terms
        .iter()
        .filter(|(idx, _)| side.is_sorted(&idx.0[head_len..]))
        .map(|(i, c)| (i.clone(), c.clone()))
        .collect();
    Ok(FockVector::from_terms_unchecked(window, terms))
}

/// A vector over semi-infinite wedge indices encoded by partitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionVector {
    /// Tensor sequence.
    pub b: SignedSeq,
    /// Side of the semi-infinite wedge.
    pub side: Side,
    /// Terms keyed by head and partition.
    pub terms: BTreeMap<(WeightFn, Partition), LaurentPoly>,
}

/// Truncate to level `kw`: keep indices whose tail is vacuum beyond position
/// `kw` (partitions with at most `kw` parts) and expand their first `kw` tail
/// values; kill the rest. The window level is the smallest one containing the result.
pub fn truncate_wedge(v: &PartitionVector, kw: usize) -> Result<FockVector> {
    let mut terms = Terms::new();
    for ((head, lambda), c) in &v.terms {
        let x = WedgeIndex::partition(head.clone(), v.side, lambda.clone());
        if let Some(flat) = x.flatten(kw) {
            add_term(&mut terms, flat, c);
        }
    }
    let k = terms.keys().map(|f| f.max_abs()).max().unwrap_or(0).max(1);
    FockVector::from_terms(Window::wedge(v.b.clone(), k, v.side, kw), terms)
}

/// Recover a wedge index from a flat index of a wedge window.
pub fn split_index(window: &Window, idx: &WeightFn) -> WedgeIndex {
    let h = window.b.len();
    let head = WeightFn(idx.0[..h].to_vec());
    match window.wedge.side_len() {
        None => WedgeIndex {
            head,
            side: Side::V,
            tail: Tail::Finite(Vec::new()),
        },
        Some((side, _)) => WedgeIndex {
            head,
            side,
            tail: Tail::Finite(idx.0[h..].to_vec()),
        },
    }
}

#[derive(Serialize, Deserialize)]
struct WindowJson {
    b: String,
    k: i32,
    wedge: String,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    f: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    u: Option<String>,
    poly: LaurentPoly,
}

#[derive(Serialize, Deserialize)]
struct FockJson {
    window: WindowJson,
    terms: Vec<TermJson>,
}

impl Serialize for FockVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let h = self.window.b.len();
        let has_wedge = self.window.wedge != WedgeSpec::None;
        let json = FockJson {
            window: WindowJson {
                b: self.window.b.to_string(),
                k: self.window.k,
                wedge: self.window.wedge.to_string(),
            },
            terms: self
                .terms
                .iter()
                .map(|(idx, c)| TermJson {
                    f: WeightFn(idx.0[..h].to_vec()).to_string(),
                    u: has_wedge.then(|| WeightFn(idx.0[h..].to_vec()).to_string()),
                    poly: c.clone(),
                })
                .collect(),
        };
        json.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FockVector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let json = FockJson::deserialize(d)?;
        let b: SignedSeq = json.window.b.parse().map_err(D::Error::custom)?;
        let wedge: WedgeSpec = json.window.wedge.parse().map_err(D::Error::custom)?;
        let window = Window {
            b,
            k: json.window.k,
            wedge,
        };
        let mut terms = Terms::new();
        for t in json.terms {
            let mut f: WeightFn = t.f.parse().map_err(D::Error::custom)?;
            if let Some(u) = t.u {
                let u: WeightFn = u.parse().map_err(D::Error::custom)?;
                f = f.concat(&u.0);
            }
            add_term(&mut terms, f, &t.poly);
        }
        FockVector::from_terms(window, terms).map_err(D::Error::custom)
    }
}
