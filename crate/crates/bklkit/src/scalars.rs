// SPDX-License-Identifier: MIT OR Apache-2.0

//! Exact scalars: integer Laurent polynomials in `q` and the rational
//! functions that appear transiently in divided powers and linear solves.
//!
//! Coefficients are arbitrary precision. Nothing in the crate ever touches a
//! floating point number; the only evaluations offered are integer
//! specialisations such as `q = 1` and `q = -1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{BklError, Result};

/// An element of `Z[q, q^-1]`.
///
/// Terms are kept sorted by exponent with no zero coefficients, so structural
/// equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: Vec<(i32, BigInt)>,
}

/// Coarse classification of the support of a Laurent polynomial, used to
/// assert the triangularity side conditions of canonical bases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DegreeClass {
    /// The zero polynomial.
    Zero,
    /// Every exponent is at least 1, i.e. an element of `qZ[q]`.
    InQZq,
    /// Every exponent is at most -1, i.e. an element of `q^-1 Z[q^-1]`.
    InQinvZqinv,
    /// Nonzero constant term and all other exponents of one sign.
    ConstPlus,
    /// Both strictly positive and strictly negative exponents occur.
    Mixed,
}

impl LaurentPoly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    /// The constant 1.
    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * q^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i32) -> Self {
        let c = c.into();
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly { terms: vec![(e, c)] }
        }
    }

    /// `q^e`.
    pub fn q_pow(e: i32) -> Self {
        Self::monomial(1, e)
    }

    /// The integer constant `c`.
    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `q - q^-1`, the ubiquitous quasi-R-matrix factor.
    pub fn q_minus_qinv() -> Self {
        Self::from_pairs([(1, 1), (-1, -1)])
    }

    /// Build from `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_pairs<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (i32, C)>,
        C: Into<BigInt>,
    {
        let mut map: BTreeMap<i32, BigInt> = BTreeMap::new();
        for (e, c) in pairs {
            *map.entry(e).or_default() += c.into();
        }
        Self::from_map(map)
    }

    fn from_map(map: BTreeMap<i32, BigInt>) -> Self {
        LaurentPoly {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for the constant 1.
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Sorted `(exponent, coefficient)` pairs.
    pub fn terms(&self) -> &[(i32, BigInt)] {
        &self.terms
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// True when there are no terms (same as [`is_zero`](Self::is_zero)).
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `q^e`.
    pub fn coeff(&self, e: i32) -> BigInt {
        match self.terms.binary_search_by_key(&e, |(x, _)| *x) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// Smallest exponent, if nonzero.
    pub fn min_exp(&self) -> Option<i32> {
        self.terms.first().map(|(e, _)| *e)
    }

    /// Largest exponent, if nonzero.
    pub fn max_exp(&self) -> Option<i32> {
        self.terms.last().map(|(e, _)| *e)
    }

    /// Exponent negation `q -> q^-1`; a ring involution.
    pub fn bar(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().rev().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Multiply by `q^s`.
    pub fn shift(&self, s: i32) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + s, c.clone())).collect(),
        }
    }

    /// Multiply by an integer.
    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// The part with strictly positive exponents.
    pub fn positive_part(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().filter(|(e, _)| *e > 0).cloned().collect(),
        }
    }

    /// The part with strictly negative exponents.
    pub fn negative_part(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().filter(|(e, _)| *e < 0).cloned().collect(),
        }
    }

    /// Evaluate at an integer value of `q`; only `q = ±1` is meaningful for
    /// negative exponents, other values are rejected when they would need division.
    pub fn eval_int(&self, q: i64) -> Result<BigInt> {
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            if *e < 0 && q.abs() != 1 {
                return Err(BklError::InvalidInput(format!(
                    "cannot evaluate a Laurent polynomial with negative exponents at q = {q}"
                )));
            }
            let p = BigInt::from(q).pow(e.unsigned_abs());
            acc += c * p;
        }
        Ok(acc)
    }

    /// Value at `q = 1`.
    pub fn at_one(&self) -> BigInt {
        self.terms.iter().map(|(_, c)| c.clone()).sum()
    }

    /// Value at `q = -1`.
    pub fn at_minus_one(&self) -> BigInt {
        self.terms
            .iter()
            .map(|(e, c)| if e % 2 == 0 { c.clone() } else { -c })
            .sum()
    }

    /// The substitution `q -> -q^-1`.
    pub fn subst_neg_qinv(&self) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(e, c)| (-e, if e % 2 == 0 { c.clone() } else { -c }))
                .collect(),
        }
    }

    /// True when every coefficient is nonnegative (membership in `N[q, q^-1]`).
    pub fn is_nonneg(&self) -> bool {
        self.terms.iter().all(|(_, c)| !c.is_negative())
    }

    /// Support classification, see [`DegreeClass`].
    pub fn degree_class(&self) -> DegreeClass {
        match (self.min_exp(), self.max_exp()) {
            (None, _) | (_, None) => DegreeClass::Zero,
            (Some(lo), Some(hi)) => {
                if lo >= 1 {
                    DegreeClass::InQZq
                } else if hi <= -1 {
                    DegreeClass::InQinvZqinv
                } else if lo < 0 && hi > 0 {
                    DegreeClass::Mixed
                } else {
                    DegreeClass::ConstPlus
                }
            }
        }
    }

    /// Exact division; `None` when `d` does not divide `self` in `Z[q, q^-1]`.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (na, a) = self.to_dense();
        let (nd, dd) = d.to_dense();
        let q = dense_div_exact(&a, &dd)?;
        Some(Self::from_dense(na - nd, &q))
    }

    /// `(lowest exponent, dense coefficients from that exponent upwards)`.
    fn to_dense(&self) -> (i32, Vec<BigInt>) {
        let lo = self.min_exp().unwrap_or(0);
        let hi = self.max_exp().unwrap_or(0);
        let mut v = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (lo, v)
    }

    fn from_dense(lo: i32, v: &[BigInt]) -> Self {
        LaurentPoly {
            terms: v
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (lo + i as i32, c.clone()))
                .collect(),
        }
    }

    /// `self + c * other`, in place, with `c` a monomial `coef * q^shift`.
    pub fn add_scaled(&mut self, other: &LaurentPoly, coef: &LaurentPoly) {
        if other.is_zero() || coef.is_zero() {
            return;
        }
        let prod = other * coef;
        *self += &prod;
    }

    /// Render in descending powers for TeX output.
    pub fn to_tex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let unit = abs.is_one();
            match *e {
                0 => s.push_str(&abs.to_string()),
                _ => {
                    if !unit {
                        s.push_str(&abs.to_string());
                    }
                    if *e == 1 {
                        s.push('q');
                    } else {
                        s.push_str(&format!("q^{{{e}}}"));
                    }
                }
            }
        }
        s
    }
}

/// Dense exact division over `Z`; coefficient vectors are low-to-high.
fn dense_div_exact(a: &[BigInt], d: &[BigInt]) -> Option<Vec<BigInt>> {
    let a = trim(a.to_vec());
    let d = trim(d.to_vec());
    if d.is_empty() {
        return None;
    }
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < d.len() {
        return None;
    }
    let mut rem = a;
    let dl = d.len();
    let lead = d[dl - 1].clone();
    let mut quot = vec![BigInt::zero(); rem.len() - dl + 1];
    for i in (0..quot.len()).rev() {
        let top = rem[i + dl - 1].clone();
        if top.is_zero() {
            continue;
        }
        let (qc, r) = top.div_rem(&lead);
        if !r.is_zero() {
            return None;
        }
        for (j, dc) in d.iter().enumerate() {
            rem[i + j] -= &qc * dc;
        }
        quot[i] = qc;
    }
    if rem.iter().all(|c| c.is_zero()) {
        Some(quot)
    } else {
        None
    }
}

fn trim(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn content(p: &[BigInt]) -> BigInt {
    p.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(p: &[BigInt]) -> Vec<BigInt> {
    let c = content(p);
    if c.is_zero() {
        return Vec::new();
    }
    let mut v: Vec<BigInt> = p.iter().map(|x| x / &c).collect();
    if v.last().is_some_and(|x| x.is_negative()) {
        v.iter_mut().for_each(|x| *x = -x.clone());
    }
    v
}

/// Pseudo-remainder of `a` by `b` (both trimmed, `b` nonzero).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let bl = b.len();
    let lead = b[bl - 1].clone();
    while r.len() >= bl {
        let top = r[r.len() - 1].clone();
        let shift = r.len() - bl;
        r.iter_mut().for_each(|x| *x *= &lead);
        for (j, bc) in b.iter().enumerate() {
            r[shift + j] -= &top * bc;
        }
        r = trim(r);
    }
    r
}

/// Greatest common divisor in `Z[x]` (primitive remainder sequence), normalised
/// to a positive leading coefficient.
fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let a = trim(a.to_vec());
    let b = trim(b.to_vec());
    if a.is_empty() {
        return primitive_with_content(&b);
    }
    if b.is_empty() {
        return primitive_with_content(&a);
    }
    let g = content(&a).gcd(&content(&b));
    let (mut x, mut y) = if a.len() >= b.len() {
        (primitive(&a), primitive(&b))
    } else {
        (primitive(&b), primitive(&a))
    };
    loop {
        let r = pseudo_rem(&x, &y);
        if r.is_empty() {
            return y.into_iter().map(|c| c * &g).collect();
        }
        x = y;
        y = primitive(&r);
    }
}

fn primitive_with_content(p: &[BigInt]) -> Vec<BigInt> {
    let mut v = p.to_vec();
    if v.last().is_some_and(|x| x.is_negative()) {
        v.iter_mut().for_each(|x| *x = -x.clone());
    }
    v
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            match *e {
                0 => write!(f, "{abs}")?,
                1 if abs.is_one() => write!(f, "q")?,
                1 => write!(f, "{abs}q")?,
                _ if abs.is_one() => write!(f, "q^{e}")?,
                _ => write!(f, "{abs}q^{e}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl<'a> AddAssign<&'a LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &'a LaurentPoly) {
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = rhs.clone();
            return;
        }
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let mut a = std::mem::take(&mut self.terms).into_iter().peekable();
        let mut b = rhs.terms.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((ea, _)), Some((eb, _))) => {
                    if ea < eb {
                        out.push(a.next().unwrap());
                    } else if eb < ea {
                        out.push(b.next().unwrap().clone());
                    } else {
                        let (e, ca) = a.next().unwrap();
                        let (_, cb) = b.next().unwrap();
                        let c = ca + cb;
                        if !c.is_zero() {
                            out.push((e, c));
                        }
                    }
                }
                (Some(_), None) => out.push(a.next().unwrap()),
                (None, Some(_)) => out.push(b.next().unwrap().clone()),
                (None, None) => break,
            }
        }
        self.terms = out;
    }
}

impl AddAssign for LaurentPoly {
    fn add_assign(&mut self, rhs: LaurentPoly) {
        *self += &rhs;
    }
}

impl<'a> SubAssign<&'a LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &'a LaurentPoly) {
        *self += &(-rhs);
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if rhs.terms.len() == 1 {
            let (e, c) = &rhs.terms[0];
            return LaurentPoly {
                terms: self.terms.iter().map(|(x, d)| (x + e, d * c)).collect(),
            };
        }
        if self.terms.len() == 1 {
            return rhs * self;
        }
        let lo = self.terms[0].0 + rhs.terms[0].0;
        let hi = self.terms.last().unwrap().0 + rhs.terms.last().unwrap().0;
        let mut dense = vec![BigInt::zero(); (hi - lo + 1) as usize];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                dense[(ea + eb - lo) as usize] += ca * cb;
            }
        }
        LaurentPoly::from_dense(lo, &dense)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(c)
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        let mut acc = LaurentPoly::zero();
        for p in iter {
            acc += &p;
        }
        acc
    }
}

/// Exact sum.
pub fn add(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    a + b
}

/// Exact product.
pub fn mul(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    a * b
}

/// The bar involution `q -> q^-1`.
pub fn bar(a: &LaurentPoly) -> LaurentPoly {
    a.bar()
}

/// Support classification of `a`.
pub fn degree_class(a: &LaurentPoly) -> DegreeClass {
    a.degree_class()
}

/// Quantum integer `[r] = q^{r-1} + q^{r-3} + ... + q^{1-r}`; `[0] = 0`.
pub fn gauss_int(r: u32) -> LaurentPoly {
    let r = r as i32;
    LaurentPoly::from_pairs((0..r).map(|i| (r - 1 - 2 * i, 1)))
}

/// Quantum factorial `[r]! = [1][2]...[r]`; `[0]! = 1`.
pub fn gauss_fact(r: u32) -> LaurentPoly {
    (1..=r).fold(LaurentPoly::one(), |acc, s| &acc * &gauss_int(s))
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (e, c) in self.terms.iter().rev() {
            match c.to_i64() {
                Some(small) => map.serialize_entry(&e.to_string(), &small)?,
                None => map.serialize_entry(&e.to_string(), &c.to_string())?,
            }
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct PolyVisitor;
        impl<'de> Visitor<'de> for PolyVisitor {
            type Value = LaurentPoly;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from exponent strings to integer coefficients")
            }
            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> std::result::Result<LaurentPoly, A::Error> {
                let mut pairs: Vec<(i32, BigInt)> = Vec::new();
                while let Some((k, v)) = access.next_entry::<String, serde_json::Value>()? {
                    let e: i32 = k.trim().parse().map_err(de::Error::custom)?;
                    let c: BigInt = match v {
                        serde_json::Value::Number(n) => n
                            .to_string()
                            .parse()
                            .map_err(|_| de::Error::custom("coefficient must be an integer"))?,
                        serde_json::Value::String(s) => s.parse().map_err(de::Error::custom)?,
                        _ => return Err(de::Error::custom("coefficient must be an integer")),
                    };
                    pairs.push((e, c));
                }
                Ok(LaurentPoly::from_pairs(pairs))
            }
        }
        deserializer.deserialize_map(PolyVisitor)
    }
}

/// An element of `Q(q)` as a reduced fraction of Laurent polynomials.
///
/// The denominator has lowest exponent 0 and a positive leading coefficient,
/// and numerator and denominator are coprime up to a unit `q^a`, so the
/// representation is canonical.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RationalQ {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalQ {
    /// `num / den`, reduced; errors if `den` is zero.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(BklError::InvalidInput("zero denominator".into()));
        }
        Ok(Self::normalize(num, den))
    }

    /// The rational function `a / 1`.
    pub fn from_poly(a: LaurentPoly) -> Self {
        RationalQ {
            num: a,
            den: LaurentPoly::one(),
        }
    }

    /// Zero.
    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    /// One.
    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    /// Numerator.
    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    /// Denominator.
    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    /// True for zero.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn normalize(num: LaurentPoly, den: LaurentPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (nl, nd) = num.to_dense();
        let (dl, dd) = den.to_dense();
        let g = poly_gcd(&nd, &dd);
        let nq = dense_div_exact(&nd, &g).expect("gcd divides numerator");
        let dq = dense_div_exact(&dd, &g).expect("gcd divides denominator");
        let mut num = LaurentPoly::from_dense(nl - dl, &nq);
        let mut den = LaurentPoly::from_dense(0, &dq);
        // Move any q-power out of the denominator and fix the sign.
        let lo = den.min_exp().unwrap_or(0);
        den = den.shift(-lo);
        num = num.shift(-lo);
        if den.terms.last().is_some_and(|(_, c)| c.is_negative()) {
            den = -den;
            num = -num;
        }
        RationalQ { num, den }
    }

    /// Reduce to a Laurent polynomial when the denominator is a unit.
    pub fn reduce(&self) -> Option<LaurentPoly> {
        if self.den.is_one() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    /// Reduce or fail loudly.
    pub fn expect_poly(&self, what: &str) -> Result<LaurentPoly> {
        self.reduce()
            .ok_or_else(|| BklError::NonIntegral(format!("{what}: ({}) / ({})", self.num, self.den)))
    }

    /// Sum.
    pub fn add(&self, o: &RationalQ) -> RationalQ {
        Self::normalize(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    /// Difference.
    pub fn sub(&self, o: &RationalQ) -> RationalQ {
        Self::normalize(&(&self.num * &o.den) - &(&o.num * &self.den), &self.den * &o.den)
    }

    /// Product.
    pub fn mul(&self, o: &RationalQ) -> RationalQ {
        Self::normalize(&self.num * &o.num, &self.den * &o.den)
    }

    /// Negation.
    pub fn neg(&self) -> RationalQ {
        RationalQ {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<RationalQ> {
        if self.is_zero() {
            None
        } else {
            Some(Self::normalize(self.den.clone(), self.num.clone()))
        }
    }

    /// Quotient; `None` when dividing by zero.
    pub fn div(&self, o: &RationalQ) -> Option<RationalQ> {
        o.inv().map(|i| self.mul(&i))
    }

    /// Bar involution on `Q(q)`.
    pub fn bar(&self) -> RationalQ {
        Self::normalize(self.num.bar(), self.den.bar())
    }
}

impl fmt::Display for RationalQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(pairs: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_pairs(pairs.iter().copied())
    }

    fn q() -> LaurentPoly {
        LaurentPoly::q_pow(1)
    }

    fn qi() -> LaurentPoly {
        LaurentPoly::q_pow(-1)
    }

    #[test]
    fn add_examples() {
        assert_eq!(add(&q(), &qi()), p(&[(1, 1), (-1, 1)]));
        let a = LaurentPoly::q_minus_qinv();
        assert!(add(&a, &-a.clone()).is_zero());
        assert_eq!(
            add(&p(&[(0, 1), (1, 1)]), &p(&[(0, 1), (1, -1)])),
            LaurentPoly::constant(2)
        );
    }

    #[test]
    fn mul_examples() {
        assert!(mul(&q(), &qi()).is_one());
        let lhs = mul(&LaurentPoly::q_minus_qinv(), &p(&[(1, 1), (-1, 1)]));
        assert_eq!(lhs, p(&[(2, 1), (-2, -1)]));
        let two = gauss_int(2);
        assert_eq!(mul(&two, &two), p(&[(2, 1), (0, 2), (-2, 1)]));
    }

    #[test]
    fn bar_examples() {
        assert_eq!(bar(&q()), qi());
        assert_eq!(bar(&LaurentPoly::q_minus_qinv()), p(&[(-1, 1), (1, -1)]));
    }

    #[test]
    fn gauss_examples() {
        assert!(gauss_int(1).is_one());
        assert_eq!(gauss_int(2), p(&[(1, 1), (-1, 1)]));
        assert!(gauss_int(0).is_zero());
        assert!(gauss_fact(0).is_one());
        // [3]! expanded independently as (q + q^-1)(q^2 + 1 + q^-2).
        let expected = &p(&[(1, 1), (-1, 1)]) * &p(&[(2, 1), (0, 1), (-2, 1)]);
        assert_eq!(gauss_fact(3), expected);
        assert_eq!(expected, p(&[(3, 1), (1, 2), (-1, 2), (-3, 1)]));
    }

    #[test]
    fn degree_class_examples() {
        assert_eq!(degree_class(&p(&[(1, 1), (3, 1)])), DegreeClass::InQZq);
        assert_eq!(degree_class(&p(&[(-1, -1)])), DegreeClass::InQinvZqinv);
        assert_eq!(degree_class(&p(&[(0, 1), (1, 1)])), DegreeClass::ConstPlus);
        assert_eq!(degree_class(&p(&[(-1, 1), (1, 1)])), DegreeClass::Mixed);
        assert_eq!(degree_class(&LaurentPoly::zero()), DegreeClass::Zero);
    }

    #[test]
    fn gauss_fact_divides_q_factorial_numerator() {
        for r in 0..7u32 {
            // prod (q^s - q^-s) / (q - q^-1)^r, as a rational function.
            let mut num = LaurentPoly::one();
            let mut den = LaurentPoly::one();
            for s in 1..=r as i32 {
                num = &num * &p(&[(s, 1), (-s, -1)]);
                den = &den * &LaurentPoly::q_minus_qinv();
            }
            let prod = RationalQ::new(num, den).unwrap();
            let ratio = prod.div(&RationalQ::from_poly(gauss_fact(r))).unwrap();
            assert!(ratio.reduce().is_some_and(|x| x.is_one()), "r = {r}: {ratio}");
            assert_eq!(prod.expect_poly("q-factorial").unwrap(), gauss_fact(r));
        }
    }

    #[test]
    fn rational_reduction_fails_loudly() {
        let x = RationalQ::new(LaurentPoly::one(), gauss_int(2)).unwrap();
        assert!(x.reduce().is_none());
        assert!(matches!(x.expect_poly("test"), Err(BklError::NonIntegral(_))));
    }

    #[test]
    fn div_exact_and_subst() {
        let a = &gauss_int(3) * &LaurentPoly::q_minus_qinv();
        assert_eq!(a.div_exact(&gauss_int(3)).unwrap(), LaurentPoly::q_minus_qinv());
        assert!(gauss_int(3).div_exact(&gauss_int(2)).is_none());
        assert_eq!(p(&[(-1, -1)]).subst_neg_qinv(), q());
        assert_eq!(p(&[(2, 3), (-1, 1)]).at_one(), BigInt::from(4));
        assert_eq!(p(&[(2, 3), (-1, 1)]).at_minus_one(), BigInt::from(2));
    }

    #[test]
    fn json_roundtrip_and_format() {
        let x = LaurentPoly::q_minus_qinv();
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"1":1,"-1":-1}"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        let big = LaurentPoly::monomial(BigInt::from(10).pow(30), 2);
        let back: LaurentPoly = serde_json::from_str(&serde_json::to_string(&big).unwrap()).unwrap();
        assert_eq!(back, big);
        assert_eq!(x.to_string(), "q - q^-1");
        assert_eq!(p(&[(2, 2), (0, -1)]).to_tex(), "2q^{2} - 1");
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec((-6i32..6, -5i64..5), 0..6).prop_map(LaurentPoly::from_pairs)
    }

    proptest! {
        #[test]
        fn bar_is_ring_involution(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(bar(&mul(&a, &b)), mul(&bar(&a), &bar(&b)));
            prop_assert_eq!(bar(&add(&a, &b)), add(&bar(&a), &bar(&b)));
            prop_assert_eq!(bar(&bar(&a)), a);
        }

        #[test]
        fn rational_roundtrip(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(RationalQ::from_poly(a.clone()).reduce(), Some(a.clone()));
            if !a.is_zero() && !b.is_zero() {
                let x = RationalQ::new(a.clone(), b.clone()).unwrap();
                let y = RationalQ::new(b, a).unwrap();
                prop_assert!(x.mul(&y).reduce().is_some_and(|r| r.is_one()));
            }
        }

        #[test]
        fn product_divides_exactly(a in arb_poly(), b in arb_poly()) {
            if !b.is_zero() {
                prop_assert_eq!((&a * &b).div_exact(&b), Some(a));
            }
        }
    }
}
