// SPDX-License-Identifier: MIT OR Apache-2.0

//! Integral weights of `gl(m|n)` and their dictionary with weight functions.
//!
//! A [`SuperWeight`] stores coordinates in the *standard* basis
//! `e_1..e_m` (even) and `e_{m+1}..e_{m+n}` (odd), with `(e_i|e_i) = 1` for even
//! and `-1` for odd indices. A sequence `b` orders the same basis: the k-th `0`
//! of `b` is `e_k` and the l-th `1` is `e_{m+l}`. Keeping one coordinate system
//! for every `b` is what makes cross-Borel comparisons (odd reflections) plain
//! vector arithmetic.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{parse_int_list, AdjacentPair, SignedSeq, WeightFn};
use crate::error::{BklError, Result};

/// An integral weight in standard coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SuperWeight(pub Vec<i32>);

impl SuperWeight {
    /// The zero weight of `gl(m|n)`.
    pub fn zero(len: usize) -> Self {
        SuperWeight(vec![0; len])
    }

    /// Coordinate-wise sum.
    pub fn add(&self, o: &SuperWeight) -> SuperWeight {
        SuperWeight(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    /// Coordinate-wise difference.
    pub fn sub(&self, o: &SuperWeight) -> SuperWeight {
        SuperWeight(self.0.iter().zip(&o.0).map(|(a, b)| a - b).collect())
    }

    /// Multiply by an integer.
    pub fn scale(&self, k: i32) -> SuperWeight {
        SuperWeight(self.0.iter().map(|a| a * k).collect())
    }

    /// The invariant form `(self|o)` for `gl(m|n)` with `m` even coordinates.
    pub fn form(&self, o: &SuperWeight, m: usize) -> i32 {
        self.0
            .iter()
            .zip(&o.0)
            .enumerate()
            .map(|(i, (a, b))| if i < m { a * b } else { -a * b })
            .sum()
    }
}

impl fmt::Display for SuperWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for SuperWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "wt({self})")
    }
}

impl FromStr for SuperWeight {
    type Err = BklError;
    fn from_str(s: &str) -> Result<Self> {
        parse_int_list(s).map(SuperWeight)
    }
}

impl TryFrom<String> for SuperWeight {
    type Error = BklError;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SuperWeight> for String {
    fn from(w: SuperWeight) -> String {
        w.to_string()
    }
}

/// Standard index (0-based) of the basis vector at each position of `b`.
fn standard_positions(b: &SignedSeq) -> Vec<usize> {
    let m = b.m();
    let (mut even, mut odd) = (0, 0);
    b.bits()
        .iter()
        .map(|&bit| {
            if bit == 0 {
                even += 1;
                even - 1
            } else {
                odd += 1;
                m + odd - 1
            }
        })
        .collect()
}

/// `f^b_0`, the values `(rho_b | e^b_i)`, from the two defining properties:
/// consecutive differences are `(beta|beta)/2` for the simple roots and the
/// last value is 1 or 0 according to the last bit.
fn rho_values(b: &SignedSeq) -> Vec<i32> {
    let n = b.len();
    let mut vals = vec![0; n];
    if n == 0 {
        return vals;
    }
    vals[n - 1] = if b.bit(n - 1) == 0 { 1 } else { 0 };
    for i in (0..n - 1).rev() {
        let half_norm = match (b.bit(i), b.bit(i + 1)) {
            (0, 0) => 1,
            (1, 1) => -1,
            _ => 0,
        };
        vals[i] = vals[i + 1] + half_norm;
    }
    vals
}

/// The Weyl vector `rho_b` in standard coordinates.
pub fn weyl_rho(b: &SignedSeq) -> SuperWeight {
    let pos = standard_positions(b);
    let vals = rho_values(b);
    let mut rho = vec![0; b.len()];
    for i in 0..b.len() {
        rho[pos[i]] = b.sign(i) * vals[i];
    }
    SuperWeight(rho)
}

/// The supertrace weight `sum e_i - sum e_j` (even minus odd).
pub fn supertrace(m: usize, n: usize) -> SuperWeight {
    let mut v = vec![1; m];
    v.extend(std::iter::repeat(-1).take(n));
    SuperWeight(v)
}

/// `f^b_lambda(i) = (lambda + rho_b | e^b_i)`.
pub fn weight_to_f(b: &SignedSeq, lambda: &SuperWeight) -> Result<WeightFn> {
    check_weight_len(b, lambda)?;
    let pos = standard_positions(b);
    let vals = rho_values(b);
    Ok(WeightFn(
        (0..b.len()).map(|i| b.sign(i) * lambda.0[pos[i]] + vals[i]).collect(),
    ))
}

/// Inverse of [`weight_to_f`].
pub fn f_to_weight(b: &SignedSeq, f: &WeightFn) -> Result<SuperWeight> {
    super::check_len(b, f)?;
    let pos = standard_positions(b);
    let vals = rho_values(b);
    let mut lambda = vec![0; b.len()];
    for i in 0..b.len() {
        lambda[pos[i]] = b.sign(i) * (f.0[i] - vals[i]);
    }
    Ok(SuperWeight(lambda))
}

fn check_weight_len(b: &SignedSeq, lambda: &SuperWeight) -> Result<()> {
    if lambda.0.len() != b.len() {
        return Err(BklError::InvalidInput(format!(
            "weight {lambda} has {} coordinates but sequence {b} has length {}",
            lambda.0.len(),
            b.len()
        )));
    }
    Ok(())
}

/// The odd simple root `alpha = e^b_kappa - e^b_{kappa+1}` of the pair, in standard coordinates.
pub fn odd_root(pair: &AdjacentPair) -> SuperWeight {
    let pos = standard_positions(pair.b());
    let mut v = vec![0; pair.b().len()];
    v[pos[pair.kappa() - 1]] = 1;
    v[pos[pair.kappa()]] = -1;
    SuperWeight(v)
}

/// `lambda^L`: unchanged when `(lambda|alpha) = 0`, else `lambda - alpha`.
pub fn lambda_l(pair: &AdjacentPair, lambda: &SuperWeight) -> Result<SuperWeight> {
    check_weight_len(pair.b(), lambda)?;
    let alpha = odd_root(pair);
    Ok(if lambda.form(&alpha, pair.b().m()) == 0 {
        lambda.clone()
    } else {
        lambda.sub(&alpha)
    })
}

/// `lambda^U`: `lambda - 2 alpha` when `(lambda|alpha) = 0`, else `lambda - alpha`.
pub fn lambda_u(pair: &AdjacentPair, lambda: &SuperWeight) -> Result<SuperWeight> {
    check_weight_len(pair.b(), lambda)?;
    let alpha = odd_root(pair);
    Ok(if lambda.form(&alpha, pair.b().m()) == 0 {
        lambda.sub(&alpha.scale(2))
    } else {
        lambda.sub(&alpha)
    })
}

fn require_standard(b: &SignedSeq) -> Result<()> {
    if !b.is_standard() {
        return Err(BklError::InvalidInput(format!(
            "typicality is defined for the standard sequence only, got {b}"
        )));
    }
    Ok(())
}

/// `f(i) != f(j)` for every even position `i` and odd position `j` (standard `b` only).
pub fn typical(b: &SignedSeq, lambda: &SuperWeight) -> Result<bool> {
    require_standard(b)?;
    let f = weight_to_f(b, lambda)?;
    let m = b.m();
    Ok((0..m).all(|i| (m..b.len()).all(|j| f.0[i] != f.0[j])))
}

/// `f` weakly increasing on the even positions and weakly decreasing on the
/// odd positions (standard `b` only).
pub fn antidominant(b: &SignedSeq, lambda: &SuperWeight) -> Result<bool> {
    require_standard(b)?;
    let f = weight_to_f(b, lambda)?;
    let m = b.m();
    Ok(f.0[..m].windows(2).all(|w| w[0] <= w[1]) && f.0[m..].windows(2).all(|w| w[0] >= w[1]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(s: &str) -> SignedSeq {
        s.parse().unwrap()
    }

    fn wt(s: &str) -> SuperWeight {
        s.parse().unwrap()
    }

    /// Simple roots of `b` in standard coordinates.
    fn simple_roots(bb: &SignedSeq) -> Vec<SuperWeight> {
        let pos = standard_positions(bb);
        (0..bb.len().saturating_sub(1))
            .map(|i| {
                let mut v = vec![0; bb.len()];
                v[pos[i]] += 1;
                v[pos[i + 1]] -= 1;
                SuperWeight(v)
            })
            .collect()
    }

    #[test]
    fn rho_examples() {
        assert_eq!(weyl_rho(&b("001")), wt("1,0,0"));
        assert_eq!(weyl_rho(&b("0")), wt("1"));
        assert_eq!(weyl_rho(&b("1")), wt("0"));
        // The closed form for the standard sequence: (m+1-i-n) and (m+n-j).
        for (m, n) in [(2usize, 2usize), (3, 1), (1, 3), (3, 2)] {
            let mut expected = Vec::new();
            for i in 1..=m {
                expected.push(m as i32 + 1 - i as i32 - n as i32);
            }
            for j in m + 1..=m + n {
                expected.push((m + n) as i32 - j as i32);
            }
            assert_eq!(weyl_rho(&SignedSeq::standard(m, n)), SuperWeight(expected));
        }
    }

    #[test]
    fn rho_characterisation_exhaustive() {
        for len in 1..=6 {
            for bb in SignedSeq::all_of_len(len) {
                let m = bb.m();
                let rho = weyl_rho(&bb);
                for beta in simple_roots(&bb) {
                    assert_eq!(2 * rho.form(&beta, m), beta.form(&beta, m), "b = {bb}");
                }
                // (rho | e^b_{m+n}) = 1 or 0 according to the last bit.
                let last = standard_positions(&bb)[len - 1];
                let mut e = vec![0; len];
                e[last] = 1;
                let expected = if bb.bit(len - 1) == 0 { 1 } else { 0 };
                assert_eq!(rho.form(&SuperWeight(e), m), expected, "b = {bb}");
            }
        }
    }

    #[test]
    fn rho_shifts_by_alpha_under_adjacency() {
        for len in 2..=6 {
            for n in 1..len {
                for pair in SignedSeq::adjacent_pairs(len - n, n) {
                    let lhs = weyl_rho(pair.b_prime());
                    let rhs = weyl_rho(pair.b()).add(&odd_root(&pair));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn weight_dictionary_examples() {
        assert_eq!(weight_to_f(&b("001"), &wt("0,0,0")).unwrap().0, vec![1, 0, 0]);
        let bb = b("0110");
        let lam = wt("3,-1,2,5");
        let shifted = weight_to_f(&bb, &lam.add(&supertrace(2, 2))).unwrap();
        assert_eq!(shifted, weight_to_f(&bb, &lam).unwrap().shifted(1));
    }

    #[test]
    fn lambda_l_u_examples() {
        let pair = AdjacentPair::new(b("01"), b("10")).unwrap();
        assert_eq!(lambda_l(&pair, &wt("1,-1")).unwrap(), wt("1,-1"));
        assert_eq!(lambda_u(&pair, &wt("1,-1")).unwrap(), wt("-1,1"));
        assert_eq!(lambda_l(&pair, &wt("1,0")).unwrap(), wt("0,1"));
        assert_eq!(lambda_u(&pair, &wt("1,0")).unwrap(), wt("0,1"));
    }

    #[test]
    fn typical_and_antidominant_examples() {
        let st = SignedSeq::standard(1, 1);
        let from_f = |bb: &SignedSeq, f: &str| f_to_weight(bb, &f.parse().unwrap()).unwrap();
        assert!(typical(&st, &from_f(&st, "2,0")).unwrap());
        assert!(!typical(&st, &from_f(&st, "1,1")).unwrap());
        let st32 = SignedSeq::standard(3, 2);
        assert!(antidominant(&st32, &from_f(&st32, "0,3,5,4,2")).unwrap());
        assert!(!antidominant(&st32, &from_f(&st32, "3,0,5,4,2")).unwrap());
        for (m, n) in [(0usize, 3usize), (3, 0)] {
            let bb = SignedSeq::standard(m, n);
            assert!(typical(&bb, &SuperWeight(vec![4, -2, 7])).unwrap());
        }
        assert!(typical(&b("10"), &wt("0,0")).is_err());
    }

    fn arb_seq_weight() -> impl Strategy<Value = (SignedSeq, SuperWeight)> {
        (1usize..=6).prop_flat_map(|len| {
            (
                proptest::collection::vec(0u8..=1, len),
                proptest::collection::vec(-6i32..=6, len),
            )
                .prop_map(|(bits, v)| (SignedSeq::new(bits).unwrap(), SuperWeight(v)))
        })
    }

    proptest! {
        #[test]
        fn dictionary_is_bijective((bb, lam) in arb_seq_weight()) {
            let f = weight_to_f(&bb, &lam).unwrap();
            prop_assert_eq!(f_to_weight(&bb, &f).unwrap(), lam.clone());
            let st = supertrace(bb.m(), bb.n());
            prop_assert_eq!(weight_to_f(&bb, &lam.add(&st)).unwrap(), f.shifted(1));
        }

        #[test]
        fn odd_reflection_compatibility((bb, lam) in arb_seq_weight(), k in 0usize..6) {
            let kappas: Vec<usize> = (0..bb.len().saturating_sub(1))
                .filter(|&i| bb.bit(i) == 0 && bb.bit(i + 1) == 1)
                .map(|i| i + 1)
                .collect();
            if !kappas.is_empty() {
                let pair = AdjacentPair::from_kappa(bb.clone(), kappas[k % kappas.len()]).unwrap();
                let f = weight_to_f(&bb, &lam).unwrap();
                // Route 1: move the weight, then take f on the other side.
                let via_l = weight_to_f(pair.b_prime(), &lambda_l(&pair, &lam).unwrap()).unwrap();
                let via_u = weight_to_f(pair.b_prime(), &lambda_u(&pair, &lam).unwrap()).unwrap();
                // Route 2: take f, then apply the index-level maps.
                prop_assert_eq!(via_l, pair.f_l(&f));
                prop_assert_eq!(via_u, pair.f_u(&f));
                // (lambda|alpha) = 0 exactly when the distinguished entries tie.
                let tied = lam.form(&odd_root(&pair), bb.m()) == 0;
                prop_assert_eq!(tied, pair.is_tied(&f));
            }
        }
    }
}
