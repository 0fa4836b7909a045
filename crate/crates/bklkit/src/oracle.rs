// SPDX-License-Identifier: MIT OR Apache-2.0
//! Independent validators used to cross-check the main engines.
//!
//! * [`HeckeElt`] and [`kl_basis`]: a self-contained Iwahori–Hecke algebra of
//!   `S_m` with its Kazhdan–Lusztig basis, which is the purely even endpoint
//!   of the canonical basis theory;
//! * [`rank2_forms`]: literal closed forms for the canonical and dual canonical
//!   bases of the two mixed rank-2 spaces;
//! * [`brute_bar_uniqueness`]: solves the defining linear constraints of the
//!   bar involution on a tiny window by Gaussian elimination over `Q(q)` and
//!   compares the unique solution with the bar table.
//!
//! None of these share code paths with the bar or canonical modules beyond
//! the scalar types and the action of the Chevalley generators.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::bar::bar_table;
use crate::combinat::{SignedSeq, WeightFn};
use crate::error::{BklError, Result};
use crate::fock::{act, ChevalleyGen, FockVector, Terms, Window};
use crate::scalars::{LaurentPoly, RationalQ};

/// A permutation of `{0, .., m-1}` in one-line notation.
pub type Perm = Vec<usize>;

/// Identity permutation of `{0, .., m-1}`.
pub fn identity(m: usize) -> Perm {
    (0..m).collect()
}

/// Number of inversions of `w`.
pub fn length(w: &[usize]) -> usize {
    let mut n = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                n += 1;
            }
        }
    }
    n
}

/// A reduced word `[i_1, .., i_r]` (0-based simple reflections) with
/// `w = s_{i_1} ⋯ s_{i_r}`, where `s_i` acts on one-line notation by
/// swapping positions `i` and `i+1` from the right.
pub fn reduced_word(w: &[usize]) -> Vec<usize> {
    // Sorting w by adjacent swaps gives w s_{j_1} ⋯ s_{j_r} = e, so
    // w = s_{j_r} ⋯ s_{j_1}.
    let mut v = w.to_vec();
    let mut word = Vec::new();
    while let Some(i) = (0..v.len().saturating_sub(1)).find(|&i| v[i] > v[i + 1]) {
        v.swap(i, i + 1);
        word.push(i);
    }
    word.reverse();
    word
}

/// All permutations of `{0, .., m-1}`, in lexicographic order.
pub fn all_perms(m: usize) -> Vec<Perm> {
    fn rec(prefix: &mut Perm, used: &mut [bool], out: &mut Vec<Perm>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; m], &mut out);
    out
}

/// Bruhat order on `S_m` via the tableau criterion: `y ≤ w` iff for every
/// prefix length `p` the sorted prefix of `y` is entrywise at most that of `w`.
pub fn perm_bruhat_leq(y: &[usize], w: &[usize]) -> bool {
    (1..=y.len()).all(|p| {
        let mut a = y[..p].to_vec();
        let mut b = w[..p].to_vec();
        a.sort_unstable();
        b.sort_unstable();
        a.iter().zip(&b).all(|(x, z)| x <= z)
    })
}

/// An element of the Iwahori–Hecke algebra of `S_m` in the standard basis
/// `{H_σ}`, with quadratic relation `(H_i − q^{-1})(H_i + q) = 0`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct HeckeElt {
    m: usize,
    terms: BTreeMap<Perm, LaurentPoly>,
}

impl HeckeElt {
    /// The zero element of `H(S_m)`.
    pub fn zero(m: usize) -> Self {
        HeckeElt {
            m,
            terms: BTreeMap::new(),
        }
    }

    /// The standard basis element `H_σ`.
    pub fn standard(sigma: Perm) -> Self {
        let m = sigma.len();
        let mut terms = BTreeMap::new();
        terms.insert(sigma, LaurentPoly::one());
        HeckeElt { m, terms }
    }

    /// The unit `H_e`.
    pub fn one(m: usize) -> Self {
        Self::standard(identity(m))
    }

    /// The simple generator `H_i` (0-based `i < m-1`).
    pub fn generator(m: usize, i: usize) -> Self {
        let mut s = identity(m);
        s.swap(i, i + 1);
        Self::standard(s)
    }

    /// Rank `m` of the symmetric group.
    pub fn rank(&self) -> usize {
        self.m
    }

    /// Nonzero coefficients.
    pub fn terms(&self) -> &BTreeMap<Perm, LaurentPoly> {
        &self.terms
    }

    /// Coefficient of `H_σ`.
    pub fn coeff(&self, sigma: &[usize]) -> LaurentPoly {
        self.terms.get(sigma).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, sigma: Perm, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(sigma.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&sigma);
        }
    }

    /// `self + c·other`.
    pub fn add_scaled(&mut self, other: &HeckeElt, c: &LaurentPoly) {
        for (s, v) in &other.terms {
            self.add_term(s.clone(), &(v * c));
        }
    }

    /// Right multiplication by `H_i`:
    /// `H_σ H_i = H_{σ s_i}` if `σ(i) < σ(i+1)`, else
    /// `H_{σ s_i} + (q^{-1} − q) H_σ`.
    pub fn mul_gen(&self, i: usize) -> HeckeElt {
        let mut out = HeckeElt::zero(self.m);
        let c = -LaurentPoly::q_minus_qinv();
        for (s, v) in &self.terms {
            let mut t = s.clone();
            t.swap(i, i + 1);
            out.add_term(t, v);
            if s[i] > s[i + 1] {
                out.add_term(s.clone(), &(v * &c));
            }
        }
        out
    }

    /// Right multiplication by `H_i^{-1} = H_i + q − q^{-1}`.
    pub fn mul_gen_inv(&self, i: usize) -> HeckeElt {
        let mut out = self.mul_gen(i);
        out.add_scaled(self, &LaurentPoly::q_minus_qinv());
        out
    }

    /// Product in the Hecke algebra.
    pub fn mul(&self, other: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero(self.m);
        for (s, c) in &other.terms {
            let mut x = self.clone();
            for i in reduced_word(s) {
                x = x.mul_gen(i);
            }
            out.add_scaled(&x, c);
        }
        out
    }

    /// Bar involution: `q ↦ q^{-1}` and `H_σ ↦ H_{σ^{-1}}^{-1}`; on a reduced
    /// word `H_σ = H_{i_1} ⋯ H_{i_r}` this is `H_{i_1}^{-1} ⋯ H_{i_r}^{-1}`.
    pub fn bar(&self) -> HeckeElt {
        let mut out = HeckeElt::zero(self.m);
        for (s, c) in &self.terms {
            let mut x = HeckeElt::one(self.m);
            for i in reduced_word(s) {
                x = x.mul_gen_inv(i);
            }
            out.add_scaled(&x, &c.bar());
        }
        out
    }

    /// The antisymmetriser `Σ_σ (−q)^{ℓ(σ) − ℓ(w_0)} H_σ`.
    pub fn antisymmetrizer(m: usize) -> HeckeElt {
        let top = (m * m.saturating_sub(1) / 2) as i32;
        let mut out = HeckeElt::zero(m);
        for s in all_perms(m) {
            let e = length(&s) as i32 - top;
            let c = LaurentPoly::monomial(if e.rem_euclid(2) == 0 { 1 } else { -1 }, e);
            out.add_term(s, &c);
        }
        out
    }
}

impl fmt::Debug for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(s, c)| format!("({c})H{s:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The Kazhdan–Lusztig basis element `C_w = Σ_{y ≤ w} p_{y,w} H_y`: the
/// unique bar-invariant element with `p_{w,w} = 1` and `p_{y,w} ∈ qZ[q]`
/// for `y < w`.
pub fn kl_basis(m: usize, w: &[usize]) -> Result<HeckeElt> {
    if w.len() != m || {
        let mut s = w.to_vec();
        s.sort_unstable();
        s != identity(m)
    } {
        return Err(BklError::InvalidInput(format!("{w:?} is not a permutation of 0..{m}")));
    }
    // Bar images of all standard elements below w, memoised by permutation.
    let mut bars: BTreeMap<Perm, HeckeElt> = BTreeMap::new();
    let mut bar_of = |s: &Perm| -> HeckeElt {
        bars.entry(s.clone())
            .or_insert_with(|| HeckeElt::standard(s.clone()).bar())
            .clone()
    };
    let mut c = HeckeElt::standard(w.to_vec());
    // Defect S = bar(C) − C; process its terms by decreasing length.
    let mut defect = bar_of(&w.to_vec());
    defect.add_scaled(&c, &-LaurentPoly::one());
    while let Some(y) = defect.terms.keys().max_by_key(|s| (length(s), (*s).clone())).cloned() {
        let s = defect.coeff(&y);
        if !(&s + &s.bar()).is_zero() {
            return Err(BklError::Invariant(format!(
                "Hecke defect at {y:?} is not anti-invariant: {s}"
            )));
        }
        let p = s.positive_part();
        // Adding p·H_y changes the defect by bar(p)·bar(H_y) − p·H_y.
        let by = bar_of(&y);
        defect.add_scaled(&by, &p.bar());
        defect.add_term(y.clone(), &-&p);
        c.add_term(y, &p);
    }
    for (y, p) in &c.terms {
        if y != w && (!perm_bruhat_leq(y, w) || p.min_exp().is_some_and(|e| e < 1)) {
            return Err(BklError::Invariant(format!(
                "KL element for {w:?} has bad entry at {y:?}: {p}"
            )));
        }
    }
    Ok(c)
}

/// Compare the canonical basis on `V^{⊗m}` with the Kazhdan–Lusztig basis:
/// for `f = (w(1)+1, .., w(m)+1)` the canonical column of `f` has entry
/// `p_{y,w}` at `(y(1)+1, .., y(m)+1)` and no other entries.
/// Returns the number of permutations compared.
pub fn kl_dictionary_check(m: usize) -> Result<usize> {
    use crate::canonical::{column_with_check, BasisKind};
    let b = SignedSeq::standard(m, 0);
    let window = Window::tensor(b, m as i32 + 1);
    let to_f = |s: &Perm| WeightFn::new(s.iter().map(|&x| x as i32 + 1).collect());
    let mut n = 0;
    for w in all_perms(m) {
        let kl = kl_basis(m, &w)?;
        let col = column_with_check(&window, &to_f(&w), BasisKind::Canonical, false)?;
        let expected: BTreeMap<WeightFn, LaurentPoly> = kl.terms.iter().map(|(y, p)| (to_f(y), p.clone())).collect();
        let got: BTreeMap<WeightFn, LaurentPoly> = col.entries.iter().map(|(g, p)| (g.clone(), p.clone())).collect();
        if expected != got {
            return Err(BklError::Invariant(format!(
                "canonical column of {} differs from KL element: {:?} vs {:?}",
                to_f(&w),
                got,
                expected
            )));
        }
        n += 1;
    }
    Ok(n)
}

/// The two mixed rank-2 orderings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rank2Case {
    /// `V ⊗ W`, sequence `01`.
    VW,
    /// `W ⊗ V`, sequence `10`.
    WV,
}

impl Rank2Case {
    /// The sign sequence of this case.
    pub fn seq(self) -> SignedSeq {
        match self {
            Rank2Case::VW => SignedSeq::new(vec![0, 1]).expect("valid bits"),
            Rank2Case::WV => SignedSeq::new(vec![1, 0]).expect("valid bits"),
        }
    }

    fn step(self) -> i32 {
        match self {
            Rank2Case::VW => -1,
            Rank2Case::WV => 1,
        }
    }
}

/// Closed forms `(T_f, L_f)` in the rank-2 window of level `k`.
///
/// For `f = (a, a)` the canonical element is `M_f + q M_{f'}` and the dual
/// canonical element is `M_f + Σ_{t ≥ 1} (−q)^{-t} M_{f^{(t)}}`, where
/// `f^{(t)} = (a − t, a − t)` for `V ⊗ W` and `(a + t, a + t)` for `W ⊗ V`,
/// with terms outside the window dropped. Otherwise both equal `M_f`.
pub fn rank2_forms(case: Rank2Case, f: &WeightFn, k: i32) -> Result<(FockVector, FockVector)> {
    let window = Window::tensor(case.seq(), k);
    if f.len() != 2 || !window.contains(f.as_slice()) {
        return Err(BklError::InvalidInput(format!(
            "{f} is not a rank-2 index in window {k}"
        )));
    }
    let mut t = Terms::new();
    let mut l = Terms::new();
    t.insert(f.clone(), LaurentPoly::one());
    l.insert(f.clone(), LaurentPoly::one());
    if f.0[0] == f.0[1] {
        let a = f.0[0];
        let shifted = |s: i32| WeightFn::new(vec![a + s * case.step(); 2]);
        if window.contains(shifted(1).as_slice()) {
            t.insert(shifted(1), LaurentPoly::q_pow(1));
        }
        let mut s = 1;
        while window.contains(shifted(s).as_slice()) {
            l.insert(shifted(s), LaurentPoly::monomial(if s % 2 == 0 { 1 } else { -1 }, -s));
            s += 1;
        }
    }
    Ok((
        FockVector::from_terms(window.clone(), t)?,
        FockVector::from_terms(window, l)?,
    ))
}

/// Outcome of [`brute_bar_uniqueness`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteBarReport {
    /// Dimension of the window.
    pub dimension: usize,
    /// Number of unknown off-diagonal coefficients.
    pub unknowns: usize,
    /// Number of linear equations generated.
    pub equations: usize,
}

/// The weight of a basis index: `Σ_V ε_{f(i)} − Σ_W ε_{f(i)}`.
fn index_weight(b: &SignedSeq, f: &WeightFn) -> BTreeMap<i32, i32> {
    let mut w = BTreeMap::new();
    for (i, &x) in f.as_slice().iter().enumerate() {
        *w.entry(x).or_insert(0) += if b.bit(i) == 0 { 1 } else { -1 };
    }
    w.retain(|_, v| *v != 0);
    w
}

/// Gaussian elimination for `A x = rhs` over `Q(q)`; returns the unique
/// solution or an error if the system is inconsistent or underdetermined.
fn solve_unique(rows: Vec<(BTreeMap<usize, LaurentPoly>, LaurentPoly)>, n: usize) -> Result<Vec<RationalQ>> {
    // Sparse row reduction: pivot rows are kept keyed by pivot column.
    let mut pivots: BTreeMap<usize, (BTreeMap<usize, RationalQ>, RationalQ)> = BTreeMap::new();
    for (coeffs, rhs) in rows {
        let mut row: BTreeMap<usize, RationalQ> =
            coeffs.into_iter().map(|(j, c)| (j, RationalQ::from_poly(c))).collect();
        let mut r = RationalQ::from_poly(rhs);
        loop {
            row.retain(|_, v| !v.is_zero());
            let Some((&j, c)) = row.iter().next() else {
                if !r.is_zero() {
                    return Err(BklError::Invariant("bar constraints are inconsistent".into()));
                }
                break;
            };
            match pivots.get(&j) {
                Some((prow, prhs)) => {
                    let c = c.clone();
                    for (jj, v) in prow {
                        let e = row.entry(*jj).or_insert_with(RationalQ::zero);
                        *e = e.sub(&c.mul(v));
                    }
                    r = r.sub(&c.mul(prhs));
                }
                None => {
                    let inv = c.inv().expect("nonzero pivot");
                    let row: BTreeMap<usize, RationalQ> = row.iter().map(|(jj, v)| (*jj, v.mul(&inv))).collect();
                    pivots.insert(j, (row, r.mul(&inv)));
                    break;
                }
            }
        }
    }
    if pivots.len() < n {
        return Err(BklError::Invariant(format!(
            "bar constraints do not determine the involution: rank {} of {n}",
            pivots.len()
        )));
    }
    // Back substitution from the last pivot column.
    let mut x = vec![RationalQ::zero(); n];
    for (&j, (row, rhs)) in pivots.iter().rev() {
        let mut v = rhs.clone();
        for (jj, c) in row {
            if *jj != j {
                v = v.sub(&c.mul(&x[*jj]));
            }
        }
        x[j] = v;
    }
    Ok(x)
}

/// Determine the bar involution on a tiny tensor window from first
/// principles and compare with the bar table.
///
/// The unknown is an antilinear map `ψ(M_f) = M_f + Σ_{g ≠ f} x_{gf} M_g`
/// with `x_{gf}` supported on pairs of equal weight. The constraints
/// `ψ(E_a M_f) = E_a ψ(M_f)` and `ψ(F_a M_f) = F_a ψ(M_f)` for all in-window
/// `a` are solved over `Q(q)`; the solution must be unique, Laurent
/// polynomial, and equal to the table computed by the bar module.
pub fn brute_bar_uniqueness(window: &Window) -> Result<BruteBarReport> {
    if window.wedge != crate::fock::WedgeSpec::None {
        return Err(BklError::InvalidInput(
            "brute-force bar check needs a tensor window".into(),
        ));
    }
    let basis = window.basis();
    if basis.len() > 200 {
        return Err(BklError::InvalidInput(format!(
            "window too large for brute force: {}",
            basis.len()
        )));
    }
    let b = window.ext_seq();
    let weights: Vec<_> = basis.iter().map(|f| index_weight(&b, f)).collect();
    // Unknown numbering.
    let mut var: BTreeMap<(WeightFn, WeightFn), usize> = BTreeMap::new();
    for (i, f) in basis.iter().enumerate() {
        for (j, g) in basis.iter().enumerate() {
            if i != j && weights[i] == weights[j] {
                let n = var.len();
                var.insert((g.clone(), f.clone()), n);
            }
        }
    }
    // ψ(M_h) as a linear form in the unknowns: component at g is
    // [g == h] + x_{gh}.
    let mut gens = Vec::new();
    for a in window.generator_range() {
        gens.push(ChevalleyGen::e(a));
        gens.push(ChevalleyGen::f(a));
    }
    let mut rows = Vec::new();
    for f in &basis {
        let mf = FockVector::monomial(window.clone(), f.clone())?;
        for &gen in &gens {
            // Equation per component g:
            //   Σ_h bar(c_h) ([g==h] + x_{gh})  −  Σ_{h'} [(x_{h'f} or δ) · coeff of M_g in gen(M_{h'})] = 0,
            // where gen(M_f) = Σ_h c_h M_h.
            let image = act(gen, &mf)?;
            let mut eqs: BTreeMap<WeightFn, (BTreeMap<usize, LaurentPoly>, LaurentPoly)> = BTreeMap::new();
            for (h, c) in image.terms() {
                let cb = c.bar();
                // Diagonal contribution at g = h.
                eqs.entry(h.clone()).or_default().1 -= &cb;
                for g in &basis {
                    if let Some(&v) = var.get(&(g.clone(), h.clone())) {
                        *eqs.entry(g.clone()).or_default().0.entry(v).or_default() += &cb;
                    }
                }
            }
            // Right side: gen applied to ψ(M_f) = M_f + Σ x_{h'f} M_{h'}.
            for (g, c) in image.terms() {
                eqs.entry(g.clone()).or_default().1 += c;
            }
            for h2 in &basis {
                if let Some(&v) = var.get(&(h2.clone(), f.clone())) {
                    let img = act(gen, &FockVector::monomial(window.clone(), h2.clone())?)?;
                    for (g, c) in img.terms() {
                        *eqs.entry(g.clone()).or_default().0.entry(v).or_default() -= c;
                    }
                }
            }
            for (_, (mut coeffs, rhs)) in eqs {
                coeffs.retain(|_, c| !c.is_zero());
                if !coeffs.is_empty() || !rhs.is_zero() {
                    rows.push((coeffs, rhs));
                }
            }
        }
    }
    let equations = rows.len();
    let x = solve_unique(rows, var.len())?;
    let table = bar_table(window)?;
    for ((g, f), &v) in &var {
        let got = x[v].expect_poly(&format!("bar coefficient ({g}, {f})"))?;
        let want = table.r(g, f);
        if got != want {
            return Err(BklError::Invariant(format!(
                "brute-force bar coefficient at ({g}, {f}) is {got}, table has {want}"
            )));
        }
    }
    for f in &basis {
        if !table.r(f, f).is_one() {
            return Err(BklError::Invariant(format!("bar table diagonal at {f} is not 1")));
        }
    }
    Ok(BruteBarReport {
        dimension: basis.len(),
        unknowns: var.len(),
        equations,
    })
}

/// Permutations strictly below `w` in Bruhat order.
pub fn bruhat_lower(w: &[usize]) -> BTreeSet<Perm> {
    all_perms(w.len())
        .into_iter()
        .filter(|y| y != w && perm_bruhat_leq(y, w))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: i64, e: i32) -> LaurentPoly {
        LaurentPoly::monomial(c, e)
    }

    #[test]
    fn quadratic_and_braid_relations() {
        let h1 = HeckeElt::generator(3, 0);
        let h2 = HeckeElt::generator(3, 1);
        // (H − q^{-1})(H + q) = 0.
        let mut a = h1.clone();
        a.add_scaled(&HeckeElt::one(3), &p(-1, -1));
        let mut b = h1.clone();
        b.add_scaled(&HeckeElt::one(3), &p(1, 1));
        assert_eq!(a.mul(&b), HeckeElt::zero(3));
        assert_eq!(h1.mul(&h2).mul(&h1), h2.mul(&h1).mul(&h2));
        // H_i · H_i^{-1} = 1.
        assert_eq!(h1.mul_gen_inv(0), HeckeElt::one(3));
    }

    #[test]
    fn bar_is_an_involutive_ring_map() {
        let h1 = HeckeElt::generator(3, 0);
        let h2 = HeckeElt::generator(3, 1);
        let x = h1.mul(&h2);
        assert_eq!(x.bar().bar(), x);
        assert_eq!(x.bar(), h1.bar().mul(&h2.bar()));
    }

    #[test]
    fn kl_small_cases() {
        assert_eq!(kl_basis(2, &[0, 1]).unwrap(), HeckeElt::one(2));
        let c = kl_basis(2, &[1, 0]).unwrap();
        let mut want = HeckeElt::standard(vec![1, 0]);
        want.add_scaled(&HeckeElt::one(2), &p(1, 1));
        assert_eq!(c, want);
        // Longest element of S_3: p_{y,w0} = q^{ℓ(w0) − ℓ(y)}.
        let w0 = vec![2, 1, 0];
        let c = kl_basis(3, &w0).unwrap();
        assert_eq!(c.terms().len(), 6);
        for (y, c) in c.terms() {
            assert_eq!(*c, p(1, 3 - length(y) as i32), "at {y:?}");
        }
    }

    #[test]
    fn kl_elements_are_bar_invariant() {
        for m in 1..=4 {
            for w in all_perms(m) {
                let c = kl_basis(m, &w).unwrap();
                assert_eq!(c.bar(), c, "{w:?}");
            }
        }
        // The first non-monomial coefficient: w = 3412, y = 1324 in 1-based
        // one-line notation, where the classical polynomial is 1 + q; here
        // p_{y,w} = q^{ℓ(w)−ℓ(y)} P_{y,w}(q^{-2}) = q^3 + q.
        let c = kl_basis(4, &[2, 3, 0, 1]).unwrap();
        assert_eq!(c.coeff(&[0, 2, 1, 3]), p(1, 1) + p(1, 3));
    }

    #[test]
    fn antisymmetrizer_is_bar_invariant() {
        for m in 1..=4 {
            let h0 = HeckeElt::antisymmetrizer(m);
            assert_eq!(h0.bar(), h0);
            // H_0 H_i = −q H_0.
            for i in 0..m.saturating_sub(1) {
                let mut lhs = h0.mul_gen(i);
                lhs.add_scaled(&h0, &p(1, 1));
                assert_eq!(lhs, HeckeElt::zero(m));
            }
        }
    }

    #[test]
    fn reduced_words_rebuild_permutations() {
        for w in all_perms(4) {
            let word = reduced_word(&w);
            assert_eq!(word.len(), length(&w));
            let mut x = HeckeElt::one(4);
            for i in word {
                x = x.mul_gen(i);
            }
            assert_eq!(x, HeckeElt::standard(w));
        }
    }

    #[test]
    fn canonical_matches_kl_up_to_rank_three() {
        assert_eq!(kl_dictionary_check(1).unwrap(), 1);
        assert_eq!(kl_dictionary_check(2).unwrap(), 2);
        assert_eq!(kl_dictionary_check(3).unwrap(), 6);
    }

    #[test]
    fn rank2_forms_match_canonical_columns() {
        use crate::canonical::{column_with_check, BasisKind};
        let k = 3;
        for case in [Rank2Case::VW, Rank2Case::WV] {
            let window = Window::tensor(case.seq(), k);
            for f in window.basis() {
                let (t, l) = rank2_forms(case, &f, k).unwrap();
                let ct = column_with_check(&window, &f, BasisKind::Canonical, false).unwrap();
                let cl = column_with_check(&window, &f, BasisKind::Dual, false).unwrap();
                assert_eq!(ct.to_vector().terms(), t.terms(), "T {case:?} {f}");
                // The dual canonical sum is infinite; the window column must
                // agree with the closed form away from the lower edge.
                assert_eq!(cl.to_vector().terms(), l.terms(), "L {case:?} {f}");
            }
        }
    }

    #[test]
    fn rank2_form_examples() {
        let f = WeightFn::new(vec![1, 1]);
        let (t, l) = rank2_forms(Rank2Case::VW, &f, 2).unwrap();
        assert_eq!(t.coeff(&WeightFn::new(vec![0, 0])), p(1, 1));
        assert_eq!(l.coeff(&WeightFn::new(vec![-1, -1])), p(1, -2));
        assert_eq!(l.len(), 4);
        let (t, _) = rank2_forms(Rank2Case::WV, &f, 2).unwrap();
        assert_eq!(t.coeff(&WeightFn::new(vec![2, 2])), p(1, 1));
        let g = WeightFn::new(vec![1, 0]);
        let (t, l) = rank2_forms(Rank2Case::VW, &g, 2).unwrap();
        assert_eq!((t.len(), l.len()), (1, 1));
    }

    #[test]
    fn brute_force_bar_is_unique_and_matches() {
        for bits in [vec![0, 1], vec![1, 0], vec![0, 0]] {
            let w = Window::tensor(SignedSeq::new(bits.clone()).unwrap(), 2);
            let r = brute_bar_uniqueness(&w).unwrap();
            assert_eq!(r.dimension, 25, "{bits:?}");
        }
    }
}
