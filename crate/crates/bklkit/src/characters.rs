// SPDX-License-Identifier: MIT OR Apache-2.0

//! Characters at `q = 1`: irreducible and tilting characters of `gl(m|n)`
//! written in Verma characters for any Borel subalgebra `b`,
//!
//! ```text
//! [L_b(lambda)] = sum_mu l_{f_mu, f_lambda}(1) [M_b(mu)]
//! [T_b(lambda)] = sum_mu t_{f_mu, f_lambda}(1) [M_b(mu)]
//! ```
//!
//! with `f_mu = f^b_mu`. Dual canonical columns can have infinite support,
//! so every expansion records the window level it was computed in.
//!
//! Infinite Verma expansions for different Borels live in different
//! completions: after rewriting Verma characters they can differ by a
//! combination of Verma characters whose total character is zero (for
//! `gl(1|1)`, `sum over all t of (-1)^t [M(lambda + t alpha)]`). Irreducible
//! characters are therefore compared as formal characters, tilting
//! characters (finite Verma flags) multiplicity by multiplicity.
//!
//! Across an odd reflection `b -> b'` with odd simple root `alpha`, Verma
//! characters satisfy `[M_b(mu)] = [M_b'(mu - alpha)]`, irreducibles satisfy
//! `L_b(lambda) = L_b'(lambda^L)` and tiltings `T_b(lambda) = T_b'(lambda^U)`;
//! [`odd_reflection_check`] verifies these on the overlap of two windows.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::canonical::{auto_level, column_with_check, BasisKind, Column, Solver};
use crate::combinat::{f_to_weight, lambda_l, lambda_u, odd_root, weight_to_f, AdjacentPair, SignedSeq, SuperWeight};
use crate::error::{BklError, Result};
use crate::fock::Window;

/// Which module's character is expanded.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CharacterKind {
    /// Simple module `L_b(lambda)`.
    Irreducible,
    /// Tilting module `T_b(lambda)`.
    Tilting,
}

impl CharacterKind {
    /// The basis whose columns give the multiplicities.
    pub fn basis(self) -> BasisKind {
        match self {
            CharacterKind::Irreducible => BasisKind::Dual,
            CharacterKind::Tilting => BasisKind::Canonical,
        }
    }
}

impl fmt::Display for CharacterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CharacterKind::Irreducible => "irreducible",
            CharacterKind::Tilting => "tilting",
        })
    }
}

impl FromStr for CharacterKind {
    type Err = BklError;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "irr" | "irreducible" | "simple" => Ok(CharacterKind::Irreducible),
            "tilt" | "tilting" => Ok(CharacterKind::Tilting),
            other => Err(BklError::Parse(format!(
                "unknown character kind {other:?} (expected irr or tilt)"
            ))),
        }
    }
}

/// A character written in Verma characters, truncated to a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterExpansion {
    /// The Borel subalgebra.
    pub b: SignedSeq,
    /// Irreducible or tilting.
    pub kind: CharacterKind,
    /// Highest weight.
    pub lambda: SuperWeight,
    /// Window level of the underlying column.
    pub window: i32,
    /// Nonzero Verma multiplicities.
    pub terms: BTreeMap<SuperWeight, BigInt>,
}

impl CharacterExpansion {
    /// Multiplicity of `[M_b(mu)]`.
    pub fn mult(&self, mu: &SuperWeight) -> BigInt {
        self.terms.get(mu).cloned().unwrap_or_default()
    }

    /// Whether `mu` indexes a Verma module whose index lies in the window.
    pub fn in_window(&self, mu: &SuperWeight) -> bool {
        weight_to_f(&self.b, mu).is_ok_and(|f| f.max_abs() <= self.window)
    }
}

#[derive(Serialize)]
struct ExpansionJson {
    b: String,
    lambda: String,
    kind: CharacterKind,
    window: i32,
    terms: Vec<serde_json::Value>,
}

impl Serialize for CharacterExpansion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        // Head term first, then the rest in decreasing order of weight.
        let mut order: Vec<(&SuperWeight, &BigInt)> = self.terms.iter().collect();
        order.sort_by(|a, b| {
            (a.0 != &self.lambda)
                .cmp(&(b.0 != &self.lambda))
                .then_with(|| b.0.cmp(a.0))
        });
        let terms = order
            .into_iter()
            .map(|(mu, m)| {
                let mult = match i64::try_from(m) {
                    Ok(v) => serde_json::Value::from(v),
                    Err(_) => serde_json::Value::from(m.to_string()),
                };
                serde_json::json!({ "mu": mu.to_string(), "mult": mult })
            })
            .collect();
        ExpansionJson {
            b: self.b.to_string(),
            lambda: self.lambda.to_string(),
            kind: self.kind,
            window: self.window,
            terms,
        }
        .serialize(s)
    }
}

fn expansion_from_column(
    b: &SignedSeq,
    kind: CharacterKind,
    lambda: &SuperWeight,
    col: &Column,
) -> Result<CharacterExpansion> {
    let mut terms = BTreeMap::new();
    for (g, c) in &col.entries {
        let m = c.at_one();
        if m != BigInt::from(0) {
            terms.insert(f_to_weight(b, g)?, m);
        }
    }
    if terms.get(lambda) != Some(&BigInt::from(1)) {
        return Err(BklError::Invariant(format!(
            "{kind} character of {lambda} does not start with [M({lambda})]"
        )));
    }
    Ok(CharacterExpansion {
        b: b.clone(),
        kind,
        lambda: lambda.clone(),
        window: col.window.k,
        terms,
    })
}

/// The character of `L_b(lambda)` or `T_b(lambda)` in Verma characters.
///
/// Without an explicit window the level is chosen as for BKL columns and the
/// result is checked to be stable one level up.
pub fn character(
    b: &SignedSeq,
    kind: CharacterKind,
    lambda: &SuperWeight,
    window: Option<i32>,
) -> Result<CharacterExpansion> {
    let f = weight_to_f(b, lambda)?;
    let (k, check) = match window {
        Some(k) => (k, false),
        None => (auto_level(b.len(), &f), true),
    };
    if f.max_abs() > k {
        return Err(BklError::InvalidInput(format!(
            "f = {f} does not fit in a window of level {k}"
        )));
    }
    let col = column_with_check(&Window::tensor(b.clone(), k), &f, kind.basis(), check)?;
    expansion_from_column(b, kind, lambda, &col)
}

/// `[L_b(lambda)]` in Verma characters.
pub fn irreducible_character(b: &SignedSeq, lambda: &SuperWeight, window: Option<i32>) -> Result<CharacterExpansion> {
    character(b, CharacterKind::Irreducible, lambda, window)
}

/// `[T_b(lambda)]` in Verma characters.
pub fn tilting_character(b: &SignedSeq, lambda: &SuperWeight, window: Option<i32>) -> Result<CharacterExpansion> {
    character(b, CharacterKind::Tilting, lambda, window)
}

/// Rewrite Verma characters for `b` as Verma characters for `b'`.
pub fn rewrite_vermas(pair: &AdjacentPair, e: &CharacterExpansion) -> BTreeMap<SuperWeight, BigInt> {
    let alpha = odd_root(pair);
    e.terms.iter().map(|(mu, m)| (mu.sub(&alpha), m.clone())).collect()
}

/// What an odd-reflection comparison covered.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OddReflectionReport {
    /// Verma multiplicities compared.
    pub compared: usize,
}

/// Compare the `b`-expansion of `L_b(lambda)` (resp. `T_b(lambda)`) with the
/// `b'`-expansion of `L_b'(lambda^L)` (resp. `T_b'(lambda^U)`) after
/// rewriting Verma characters, at every weight whose indices lie in the
/// level-`k` windows on both sides.
pub fn odd_reflection_check(
    pair: &AdjacentPair,
    kind: CharacterKind,
    lambda: &SuperWeight,
    k: i32,
) -> Result<OddReflectionReport> {
    let mut lhs = Solver::new(Window::tensor(pair.b().clone(), k));
    let mut rhs = Solver::new(Window::tensor(pair.b_prime().clone(), k));
    odd_reflection_check_with(pair, kind, lambda, &mut lhs, &mut rhs)
}

fn expansion_in(solver: &mut Solver, kind: CharacterKind, lambda: &SuperWeight) -> Result<CharacterExpansion> {
    let b = solver.window().b.clone();
    let f = weight_to_f(&b, lambda)?;
    if f.max_abs() > solver.window().k {
        return Err(BklError::InvalidInput(format!(
            "f = {f} does not fit in a window of level {}",
            solver.window().k
        )));
    }
    let col = solver.column(&f, kind.basis())?;
    expansion_from_column(&b, kind, lambda, &col)
}

pub(crate) fn odd_reflection_check_with(
    pair: &AdjacentPair,
    kind: CharacterKind,
    lambda: &SuperWeight,
    lhs: &mut Solver,
    rhs: &mut Solver,
) -> Result<OddReflectionReport> {
    let lambda_prime = match kind {
        CharacterKind::Irreducible => lambda_l(pair, lambda)?,
        CharacterKind::Tilting => lambda_u(pair, lambda)?,
    };
    let left = expansion_in(lhs, kind, lambda)?;
    let right = expansion_in(rhs, kind, &lambda_prime)?;
    let rewritten = rewrite_vermas(pair, &left);
    let alpha = odd_root(pair);
    // Both windows must contain the index of mu on each side.
    let visible = |mu: &SuperWeight| right.in_window(mu) && left.in_window(&mu.add(&alpha));
    let mut diff: BTreeMap<SuperWeight, BigInt> = rewritten;
    for (mu, m) in &right.terms {
        *diff.entry(mu.clone()).or_default() -= m;
    }
    diff.retain(|_, m| *m != BigInt::from(0));
    let mut report = OddReflectionReport::default();
    match kind {
        CharacterKind::Tilting => {
            // Finite Verma flags: the multiplicities themselves agree.
            for (mu, d) in &diff {
                if visible(mu) {
                    return Err(BklError::Invariant(format!(
                        "tilting characters of {lambda} over {} and {lambda_prime} over {} differ at [M({mu})] by {d}",
                        pair.b(),
                        pair.b_prime()
                    )));
                }
            }
            let mut weights: Vec<&SuperWeight> = right.terms.keys().collect();
            weights.retain(|mu| visible(mu));
            report.compared = weights.len();
        }
        CharacterKind::Irreducible => {
            // Infinite expansions in opposite completions may differ by a
            // combination of zero character; those are exactly the d with
            // d(mu) + d(mu - alpha) = 0, because ch M_b'(mu) (1 + e^alpha)^-1
            // is e^mu times a factor common to all mu.
            let mut weights: Vec<SuperWeight> = Vec::new();
            for mu in diff.keys().chain(right.terms.keys()) {
                weights.push(mu.clone());
                weights.push(mu.add(&alpha));
            }
            weights.sort();
            weights.dedup();
            let zero = BigInt::from(0);
            for mu in weights {
                let below = mu.sub(&alpha);
                if !visible(&mu) || !visible(&below) {
                    continue;
                }
                let total = diff.get(&mu).unwrap_or(&zero) + diff.get(&below).unwrap_or(&zero);
                if total != zero {
                    return Err(BklError::Invariant(format!(
                        "irreducible characters of {lambda} over {} and {lambda_prime} over {} differ near [M({mu})]",
                        pair.b(),
                        pair.b_prime()
                    )));
                }
                report.compared += 1;
            }
        }
    }
    Ok(report)
}

/// Check odd-reflection coherence along a whole chain of adjacent pairs for
/// every weight whose index on the first sequence is bounded by `bound`,
/// at window level `k`. Returns the number of multiplicities compared.
pub fn odd_reflection_path(path: &[AdjacentPair], bound: i32, k: i32) -> Result<usize> {
    let mut compared = 0;
    let mut solvers: Vec<Solver> = Vec::new();
    for (i, pair) in path.iter().enumerate() {
        if i > 0 && path[i - 1].b_prime() != pair.b() {
            return Err(BklError::InvalidInput("pairs do not form a chain".into()));
        }
        if i == 0 {
            solvers.push(Solver::new(Window::tensor(pair.b().clone(), k)));
        }
        solvers.push(Solver::new(Window::tensor(pair.b_prime().clone(), k)));
    }
    let Some(first) = path.first() else { return Ok(0) };
    for kind in [CharacterKind::Irreducible, CharacterKind::Tilting] {
        for f in Window::tensor(first.b().clone(), bound).basis() {
            let mut lambda = f_to_weight(first.b(), &f)?;
            for (i, pair) in path.iter().enumerate() {
                let (left, right) = solvers.split_at_mut(i + 1);
                compared += odd_reflection_check_with(pair, kind, &lambda, &mut left[i], &mut right[0])?.compared;
                lambda = match kind {
                    CharacterKind::Irreducible => lambda_l(pair, &lambda)?,
                    CharacterKind::Tilting => lambda_u(pair, &lambda)?,
                };
            }
        }
    }
    Ok(compared)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::{antidominant, typical};

    fn b(s: &str) -> SignedSeq {
        s.parse().unwrap()
    }

    fn wt(s: &str) -> SuperWeight {
        s.parse().unwrap()
    }

    #[test]
    fn rank_one_one_atypical() {
        // f = (a, a) over (0, 1): l-column (-q)^{-t}, t-column {1, q}.
        let bb = b("01");
        let lambda = f_to_weight(&bb, &"1,1".parse().unwrap()).unwrap();
        let irr = irreducible_character(&bb, &lambda, Some(4)).unwrap();
        assert_eq!(irr.terms.len(), 6);
        let alpha = odd_root(&AdjacentPair::from_kappa(bb.clone(), 1).unwrap());
        for t in 0..6 {
            let mu = lambda.sub(&alpha.scale(t));
            assert_eq!(irr.mult(&mu), BigInt::from(if t % 2 == 0 { 1 } else { -1 }));
        }
        let tilt = tilting_character(&bb, &lambda, None).unwrap();
        assert_eq!(tilt.terms.len(), 2);
        assert_eq!(tilt.mult(&lambda.sub(&alpha)), BigInt::from(1));
    }

    #[test]
    fn typical_antidominant_is_a_single_verma() {
        for (s, lambdas) in [
            ("01", vec!["0,0", "2,-1", "-3,1"]),
            ("0011", vec!["-2,-1,2,1", "-3,0,1,-1"]),
        ] {
            let bb = b(s);
            for l in lambdas {
                let lambda = wt(l);
                if !typical(&bb, &lambda).unwrap() || !antidominant(&bb, &lambda).unwrap() {
                    continue;
                }
                for kind in [CharacterKind::Irreducible, CharacterKind::Tilting] {
                    let e = character(&bb, kind, &lambda, None).unwrap();
                    assert_eq!(e.terms.len(), 1, "{s} {l} {kind}");
                }
            }
        }
    }

    #[test]
    fn odd_reflections() {
        let p = AdjacentPair::from_kappa(b("01"), 1).unwrap();
        assert!(odd_reflection_path(&[p], 2, 5).unwrap() > 0);
        let p1 = AdjacentPair::from_kappa(b("001"), 2).unwrap();
        let p2 = AdjacentPair::from_kappa(b("010"), 1).unwrap();
        assert!(odd_reflection_path(&[p1, p2], 1, 4).unwrap() > 0);
        assert!(odd_reflection_path(&[AdjacentPair::from_kappa(b("011"), 1).unwrap()], 1, 4).unwrap() > 0);
    }

    #[test]
    fn json_shape() {
        let bb = b("01");
        let e = tilting_character(&bb, &wt("0,0"), Some(5)).unwrap();
        let s = serde_json::to_string(&e).unwrap();
        assert!(
            s.starts_with(r#"{"b":"01","lambda":"0,0","kind":"tilting","window":5,"terms":[{"mu":"0,0","mult":1},"#),
            "{s}"
        );
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("irr".parse::<CharacterKind>().unwrap(), CharacterKind::Irreducible);
        assert_eq!("tilt".parse::<CharacterKind>().unwrap(), CharacterKind::Tilting);
        assert!("x".parse::<CharacterKind>().is_err());
    }
}
