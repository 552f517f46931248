//! Symbolic two-boson free-field calculus.
//!
//! Two scalar fields `φ₁ = φ_α`, `φ₂ = φ_β` with
//! `φ_i(z) φ_j(w) = G_ij log(z−w)`, `G = [[2/p, −1/p], [−1/p, 2/p]]`.
//! A [`FieldExpr`] is a rational combination of normal-ordered monomials
//! `∂^{k₁}φ_{i₁} ⋯ ∂^{k_n}φ_{i_n} e^{c₁φ₁ + c₂φ₂}`; [`wick_ope`] computes the
//! operator product `A(z)B(w)` by summing over all cross contractions and
//! Taylor-expanding what is left at `z` around `w`.
//!
//! ```
//! use nichols_w3::freefield::{build_t, wick_ope, FieldExpr};
//! use nichols_w3::rational::{int, rat};
//!
//! let p = 2;
//! let t = build_t(p);
//! let ope = wick_ope(&t, &t, &int(-1)).unwrap();
//! // c/2 with c = −2(3p−4)(4p−3)/p = −10
//! assert_eq!(ope.coefficient(&int(-4)), FieldExpr::constant(p, rat(-5, 1)));
//! assert_eq!(ope.coefficient(&int(-2)), t.scale(&int(2)));
//! ```

pub mod checks;
pub mod hw;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{factorial, int, is_integer, rat, Rational, RationalPair};

/// Default cap on the Taylor-expansion depth of a single contraction pattern.
pub const DEFAULT_TAYLOR_BUDGET: u32 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreeFieldError {
    #[error("expressions use different p ({left} vs {right})")]
    FieldMismatch { left: u32, right: u32 },
    #[error("Taylor expansion needs depth {needed}, over the budget {budget}")]
    TruncationExceeded { needed: i64, budget: u32 },
    #[error("screening exponent {exponent} against {term} is not an integer (branch cut)")]
    BranchCut { term: String, exponent: String },
    #[error("boson index must be 1 or 2 and derivative order at least 1, got ({0}, {1})")]
    BadFactor(u8, u32),
}

/// `μ = c₁α₁ + c₂α₂`, the exponent `e^{c₁φ₁ + c₂φ₂}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Momentum {
    pub c1: Rational,
    pub c2: Rational,
}

impl Momentum {
    pub fn new(c1: Rational, c2: Rational) -> Self {
        Momentum { c1, c2 }
    }

    pub fn int(c1: i128, c2: i128) -> Self {
        Momentum::new(int(c1), int(c2))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.c1.is_zero() && self.c2.is_zero()
    }

    pub fn component(&self, i: u8) -> &Rational {
        if i == 1 {
            &self.c1
        } else {
            &self.c2
        }
    }

    /// `μ·ν = (2c₁d₁ + 2c₂d₂ − c₁d₂ − c₂d₁)/p`.
    pub fn pairing(&self, p: u32, other: &Momentum) -> Rational {
        let two = int(2);
        (&two * &self.c1 * &other.c1 + &two * &self.c2 * &other.c2
            - &self.c1 * &other.c2
            - &self.c2 * &other.c1)
            / int(p as i128)
    }

    /// `(Gμ)_i`, the coefficient of the contraction of `φ_i` with `μ·φ`.
    pub fn g_component(&self, p: u32, i: u8) -> Rational {
        g(p, i, 1) * &self.c1 + g(p, i, 2) * &self.c2
    }

    pub fn add(&self, other: &Momentum) -> Momentum {
        Momentum::new(&self.c1 + &other.c1, &self.c2 + &other.c2)
    }

    pub fn scale(&self, r: &Rational) -> Momentum {
        Momentum::new(&self.c1 * r, &self.c2 * r)
    }
}

impl fmt::Debug for Momentum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.c1, self.c2)
    }
}

impl Serialize for Momentum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [RationalPair(self.c1.clone()), RationalPair(self.c2.clone())].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Momentum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [a, b] = <[RationalPair; 2]>::deserialize(d)?;
        Ok(Momentum::new(a.0, b.0))
    }
}

/// `G_ij`.
pub fn g(p: u32, i: u8, j: u8) -> Rational {
    if i == j {
        rat(2, p as i128)
    } else {
        rat(-1, p as i128)
    }
}

/// `∂^k φ_i` as `(i, k)`.
pub type Factor = (u8, u32);

/// A normal-ordered monomial; factors are kept sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub momentum: Momentum,
    pub factors: Vec<Factor>,
}

impl Monomial {
    pub fn new(mut factors: Vec<Factor>, momentum: Momentum) -> Self {
        factors.sort_unstable();
        Monomial { momentum, factors }
    }

    /// Total derivative weight `Σ k`.
    pub fn weight(&self) -> u32 {
        self.factors.iter().map(|f| f.1).sum()
    }

    fn times(&self, other: &Monomial) -> Monomial {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        Monomial::new(factors, self.momentum.add(&other.momentum))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .factors
            .iter()
            .map(|(i, k)| match k {
                1 => format!("∂φ{i}"),
                _ => format!("∂^{k}φ{i}"),
            })
            .collect();
        if !self.momentum.is_zero() {
            parts.push(format!("e^{{{}φ1+{}φ2}}", self.momentum.c1, self.momentum.c2));
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

/// One term in the JSON encoding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldTerm {
    pub coeff: RationalPair,
    pub factors: Vec<[u32; 2]>,
    pub momentum: Momentum,
}

/// Rational combination of normal-ordered monomials.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldExpr {
    p: u32,
    terms: BTreeMap<Monomial, Rational>,
}

impl FieldExpr {
    pub fn zero(p: u32) -> Self {
        FieldExpr {
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(p: u32, c: Rational) -> Self {
        Self::monomial(p, Monomial::new(vec![], Momentum::zero()), c)
    }

    pub fn one(p: u32) -> Self {
        Self::constant(p, Rational::one())
    }

    pub fn monomial(p: u32, m: Monomial, c: Rational) -> Self {
        let mut out = Self::zero(p);
        out.add_term(m, &c);
        out
    }

    /// `∂^k φ_i`.
    pub fn boson(p: u32, i: u8, k: u32) -> Result<Self, FreeFieldError> {
        if !(1..=2).contains(&i) || k == 0 {
            return Err(FreeFieldError::BadFactor(i, k));
        }
        Ok(Self::monomial(
            p,
            Monomial::new(vec![(i, k)], Momentum::zero()),
            Rational::one(),
        ))
    }

    /// `e^{μ·φ}`.
    pub fn vertex(p: u32, mu: Momentum) -> Self {
        Self::monomial(p, Monomial::new(vec![], mu), Rational::one())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check(&self, other: &Self) -> Result<(), FreeFieldError> {
        if self.p != other.p {
            return Err(FreeFieldError::FieldMismatch {
                left: self.p,
                right: other.p,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "mixing different p");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.p);
        }
        FieldExpr {
            p: self.p,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Symbolic normal-ordered product (all monomials commute).
    pub fn normal_product(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "mixing different p");
        let mut out = Self::zero(self.p);
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                out.add_term(m.times(n), &(a * b));
            }
        }
        out
    }

    /// `∂` of the expression, with `∂e^{μ·φ} = (c₁∂φ₁ + c₂∂φ₂)e^{μ·φ}`.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero(self.p);
        for (m, c) in &self.terms {
            for (idx, (i, k)) in m.factors.iter().enumerate() {
                let mut f = m.factors.clone();
                f[idx] = (*i, k + 1);
                out.add_term(Monomial::new(f, m.momentum.clone()), c);
            }
            for i in [1u8, 2] {
                let ci = m.momentum.component(i);
                if !ci.is_zero() {
                    let mut f = m.factors.clone();
                    f.push((i, 1));
                    out.add_term(Monomial::new(f, m.momentum.clone()), &(c * ci));
                }
            }
        }
        out
    }

    pub fn nth_derivative(&self, n: u32) -> Self {
        (0..n).fold(self.clone(), |acc, _| acc.derivative())
    }

    /// Distinct exponential momenta appearing in the expression.
    pub fn momenta(&self) -> Vec<Momentum> {
        let mut v: Vec<Momentum> = self.terms.keys().map(|m| m.momentum.clone()).collect();
        v.dedup();
        v
    }

    /// Derivative weights of the prefactor polynomials, smallest to largest.
    pub fn weights(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.terms.keys().map(Monomial::weight).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// `Some(λ)` with `self = λ·other` (requires `other ≠ 0`).
    pub fn ratio_to(&self, other: &Self) -> Option<Rational> {
        let (m, c) = other.terms.iter().next()?;
        let lambda = self.coefficient(m) / c;
        (other.scale(&lambda) == *self).then_some(lambda)
    }

    pub fn to_terms(&self) -> Vec<FieldTerm> {
        self.terms
            .iter()
            .map(|(m, c)| FieldTerm {
                coeff: RationalPair(c.clone()),
                factors: m.factors.iter().map(|(i, k)| [*i as u32, *k]).collect(),
                momentum: m.momentum.clone(),
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "p": self.p, "terms": self.to_terms() })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, serde_json::Error> {
        #[derive(Deserialize)]
        struct Wire {
            p: u32,
            terms: Vec<FieldTerm>,
        }
        let w: Wire = serde_json::from_value(v.clone())?;
        let mut out = Self::zero(w.p);
        for t in w.terms {
            let mut factors = Vec::with_capacity(t.factors.len());
            for [i, k] in t.factors {
                if !(1..=2).contains(&i) || k == 0 {
                    return Err(serde::de::Error::custom(format!("bad factor [{i},{k}]")));
                }
                factors.push((i as u8, k));
            }
            out.add_term(Monomial::new(factors, t.momentum), &t.coeff.0);
        }
        Ok(out)
    }
}

impl fmt::Debug for FieldExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c}) {m:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Result of an operator product: the field multiplying each power
/// `(z−w)^ν`, kept for `ν ≤` the requested maximum.
#[derive(Clone, PartialEq, Eq)]
pub struct Ope {
    p: u32,
    max_power: Rational,
    terms: BTreeMap<Rational, FieldExpr>,
}

impl Ope {
    pub fn max_power(&self) -> &Rational {
        &self.max_power
    }

    pub fn terms(&self) -> &BTreeMap<Rational, FieldExpr> {
        &self.terms
    }

    /// Coefficient of `(z−w)^ν` (zero if absent).
    pub fn coefficient(&self, nu: &Rational) -> FieldExpr {
        assert!(nu <= &self.max_power, "power {nu} lies above the truncation");
        self.terms.get(nu).cloned().unwrap_or_else(|| FieldExpr::zero(self.p))
    }

    /// Most singular power with a nonzero coefficient.
    pub fn leading_power(&self) -> Option<Rational> {
        self.terms.keys().next().cloned()
    }

    /// Powers strictly below zero.
    pub fn singular_part(&self) -> BTreeMap<Rational, FieldExpr> {
        self.terms
            .iter()
            .filter(|(k, _)| k.is_negative())
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    }

    fn add(&mut self, nu: Rational, e: FieldExpr) {
        let entry = self.terms.entry(nu.clone()).or_insert_with(|| FieldExpr::zero(self.p));
        *entry = entry.add(&e);
        if entry.is_zero() {
            self.terms.remove(&nu);
        }
    }
}

impl fmt::Debug for Ope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.terms {
            writeln!(f, "(z-w)^{k}: {v:?}")?;
        }
        Ok(())
    }
}

/// `∂_z^a log(z−w) = (−1)^{a−1}(a−1)!(z−w)^{−a}`, coefficient only.
fn dz_log(a: u32) -> Rational {
    let s = if a % 2 == 1 { 1 } else { -1 };
    factorial(a - 1) * int(s)
}

/// `∂_w^b log(z−w) = −(b−1)!(z−w)^{−b}`, coefficient only.
fn dw_log(b: u32) -> Rational {
    -factorial(b - 1)
}

/// `∂_z^a ∂_w^b log(z−w) = (−1)^{a−1}(a+b−1)!(z−w)^{−a−b}`, coefficient only.
fn dzdw_log(a: u32, b: u32) -> Rational {
    let s = if a % 2 == 1 { 1 } else { -1 };
    factorial(a + b - 1) * int(s)
}

fn binomial(n: u32, k: u32) -> Rational {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// One way of contracting a pair of monomials.
struct Pattern {
    coeff: Rational,
    pole: u32,
    rest_a: Vec<Factor>,
    rest_b: Vec<Factor>,
}

/// Enumerates contraction patterns of `A(z)` (factors `fa`, momentum `mu`)
/// with `B(w)` (factor counts `fb`, momentum `nu`).
fn contractions(
    p: u32,
    fa: &[Factor],
    mu: &Momentum,
    fb: &BTreeMap<Factor, u32>,
    nu: &Momentum,
) -> Vec<Pattern> {
    let mut out = Vec::new();
    let mut rest_a = Vec::new();
    let mut counts = fb.clone();
    contract_a(p, fa, 0, mu, nu, &mut counts, &mut rest_a, Rational::one(), 0, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn contract_a(
    p: u32,
    fa: &[Factor],
    idx: usize,
    mu: &Momentum,
    nu: &Momentum,
    counts: &mut BTreeMap<Factor, u32>,
    rest_a: &mut Vec<Factor>,
    coeff: Rational,
    pole: u32,
    out: &mut Vec<Pattern>,
) {
    if idx == fa.len() {
        let types: Vec<(Factor, u32)> = counts.iter().map(|(f, c)| (*f, *c)).collect();
        let mut rest_b = Vec::new();
        contract_b(p, &types, 0, mu, rest_a, &mut rest_b, coeff, pole, out);
        return;
    }
    let (i, a) = fa[idx];
    // left alone
    rest_a.push((i, a));
    contract_a(p, fa, idx + 1, mu, nu, counts, rest_a, coeff.clone(), pole, out);
    rest_a.pop();
    // with the exponential at w
    let gnu = nu.g_component(p, i);
    if !gnu.is_zero() {
        let c = &coeff * &gnu * dz_log(a);
        contract_a(p, fa, idx + 1, mu, nu, counts, rest_a, c, pole + a, out);
    }
    // with a derivative factor at w
    let keys: Vec<Factor> = counts.iter().filter(|(_, c)| **c > 0).map(|(f, _)| *f).collect();
    for (j, b) in keys {
        let m = counts[&(j, b)];
        let c = &coeff * int(m as i128) * g(p, i, j) * dzdw_log(a, b);
        *counts.get_mut(&(j, b)).unwrap() -= 1;
        contract_a(p, fa, idx + 1, mu, nu, counts, rest_a, c, pole + a + b, out);
        *counts.get_mut(&(j, b)).unwrap() += 1;
    }
}

#[allow(clippy::too_many_arguments)]
fn contract_b(
    p: u32,
    types: &[(Factor, u32)],
    idx: usize,
    mu: &Momentum,
    rest_a: &[Factor],
    rest_b: &mut Vec<Factor>,
    coeff: Rational,
    pole: u32,
    out: &mut Vec<Pattern>,
) {
    if idx == types.len() {
        out.push(Pattern {
            coeff,
            pole,
            rest_a: rest_a.to_vec(),
            rest_b: rest_b.clone(),
        });
        return;
    }
    let ((j, b), m) = types[idx];
    let gmu = mu.g_component(p, j);
    let single = &gmu * dw_log(b);
    let mut power = Rational::one();
    for k in 0..=m {
        if k > 0 {
            if gmu.is_zero() {
                break;
            }
            power *= &single;
        }
        let c = &coeff * binomial(m, k) * &power;
        let before = rest_b.len();
        rest_b.extend(std::iter::repeat_n((j, b), (m - k) as usize));
        contract_b(p, types, idx + 1, mu, rest_a, rest_b, c, pole + b * k, out);
        rest_b.truncate(before);
    }
}

/// `A(z)B(w)` with every power `(z−w)^ν`, `ν ≤ max_power`, using the default
/// Taylor budget.
pub fn wick_ope(a: &FieldExpr, b: &FieldExpr, max_power: &Rational) -> Result<Ope, FreeFieldError> {
    wick_ope_with_budget(a, b, max_power, DEFAULT_TAYLOR_BUDGET)
}

pub fn wick_ope_with_budget(
    a: &FieldExpr,
    b: &FieldExpr,
    max_power: &Rational,
    budget: u32,
) -> Result<Ope, FreeFieldError> {
    a.check(b)?;
    let p = a.p;
    // (rest at z with momentum μ, ν, pole) → remainder at w
    let mut groups: HashMap<(Monomial, Momentum, u32), FieldExpr> = HashMap::new();
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            let mut counts: BTreeMap<Factor, u32> = BTreeMap::new();
            for f in &mb.factors {
                *counts.entry(*f).or_default() += 1;
            }
            let cab = ca * cb;
            for pat in contractions(p, &ma.factors, &ma.momentum, &counts, &mb.momentum) {
                let key = (
                    Monomial::new(pat.rest_a, ma.momentum.clone()),
                    mb.momentum.clone(),
                    pat.pole,
                );
                let rest_b = Monomial::new(pat.rest_b, mb.momentum.clone());
                groups
                    .entry(key)
                    .or_insert_with(|| FieldExpr::zero(p))
                    .add_term(rest_b, &(&cab * &pat.coeff));
            }
        }
    }
    let mut ope = Ope {
        p,
        max_power: max_power.clone(),
        terms: BTreeMap::new(),
    };
    let mut derivatives: HashMap<Monomial, Vec<FieldExpr>> = HashMap::new();
    let mut keys: Vec<_> = groups.keys().cloned().collect();
    keys.sort_by(|x, y| (&x.0, &x.1, x.2).cmp(&(&y.0, &y.1, y.2)));
    for key in keys {
        let rest_b = &groups[&key];
        if rest_b.is_zero() {
            continue;
        }
        let (za, nu, pole) = key;
        let base = za.momentum.pairing(p, &nu) - int(pole as i128);
        let room = (max_power - &base).floor();
        if room.is_negative() {
            continue;
        }
        let depth = room.to_integer().to_i64().unwrap_or(i64::MAX);
        if depth > budget as i64 {
            return Err(FreeFieldError::TruncationExceeded {
                needed: depth,
                budget,
            });
        }
        let ders = derivatives
            .entry(za.clone())
            .or_insert_with(|| vec![FieldExpr::monomial(p, za.clone(), Rational::one())]);
        while ders.len() <= depth as usize {
            let next = ders.last().unwrap().derivative();
            ders.push(next);
        }
        for n in 0..=depth as u32 {
            let term = ders[n as usize]
                .normal_product(rest_b)
                .scale(&(Rational::one() / factorial(n)));
            ope.add(&base + int(n as i128), term);
        }
    }
    Ok(ope)
}

/// Normal-ordered product `(AB)(w)`: the `(z−w)⁰` coefficient of `A(z)B(w)`.
pub fn normal_ordered_product(a: &FieldExpr, b: &FieldExpr) -> Result<FieldExpr, FreeFieldError> {
    Ok(wick_ope(a, b, &Rational::zero())?.coefficient(&Rational::zero()))
}

/// Residue at `z = w` of `e^{α·φ}(z) A(w)`.
pub fn screening_residue(alpha: &Momentum, a: &FieldExpr) -> Result<FieldExpr, FreeFieldError> {
    let p = a.p;
    for m in a.terms.keys() {
        let e = alpha.pairing(p, &m.momentum);
        if !is_integer(&e) {
            return Err(FreeFieldError::BranchCut {
                term: format!("{m:?}"),
                exponent: e.to_string(),
            });
        }
    }
    let minus_one = int(-1);
    Ok(wick_ope(&FieldExpr::vertex(p, alpha.clone()), a, &minus_one)?.coefficient(&minus_one))
}

/// `T = (p/3)(∂φ₁∂φ₁ + ∂φ₁∂φ₂ + ∂φ₂∂φ₂) − (p−1)(∂²φ₁ + ∂²φ₂)`.
pub fn build_t(p: u32) -> FieldExpr {
    let q = rat(p as i128, 3);
    let l = int(1 - p as i128);
    let z = Momentum::zero;
    FieldExpr::from_pairs(
        p,
        [
            (vec![(1, 1), (1, 1)], z(), q.clone()),
            (vec![(1, 1), (2, 1)], z(), q.clone()),
            (vec![(2, 1), (2, 1)], z(), q),
            (vec![(1, 2)], z(), l.clone()),
            (vec![(2, 2)], z(), l),
        ],
    )
}

/// The spin-3 current, cubic in the bosons with the derivative corrections
/// that make it a Virasoro primary in the screening kernel.
pub fn build_w(p: u32) -> FieldExpr {
    let pi = p as i128;
    let a = rat(9 * (pi - 1), 2 * pi);
    let b = rat(9 * (pi - 1), 4 * pi);
    let c = rat(9 * (pi - 1) * (pi - 1), 4 * pi * pi);
    let z = Momentum::zero;
    FieldExpr::from_pairs(
        p,
        [
            (vec![(1, 1), (1, 1), (1, 1)], z(), int(1)),
            (vec![(1, 1), (1, 1), (2, 1)], z(), rat(3, 2)),
            (vec![(1, 1), (2, 1), (2, 1)], z(), rat(-3, 2)),
            (vec![(2, 1), (2, 1), (2, 1)], z(), int(-1)),
            (vec![(1, 2), (1, 1)], z(), -a.clone()),
            (vec![(1, 2), (2, 1)], z(), -b.clone()),
            (vec![(2, 2), (1, 1)], z(), b),
            (vec![(2, 2), (2, 1)], z(), a),
            (vec![(1, 3)], z(), c.clone()),
            (vec![(2, 3)], z(), -c),
        ],
    )
}

impl FieldExpr {
    /// Builds an expression from `(factors, momentum, coefficient)` triples.
    pub fn from_pairs(
        p: u32,
        terms: impl IntoIterator<Item = (Vec<Factor>, Momentum, Rational)>,
    ) -> Self {
        let mut out = Self::zero(p);
        for (f, m, c) in terms {
            out.add_term(Monomial::new(f, m), &c);
        }
        out
    }
}

/// `c = −2(3p−4)(4p−3)/p`.
pub fn central_charge(p: u32) -> Rational {
    let p = p as i128;
    rat(-2 * (3 * p - 4) * (4 * p - 3), p)
}

/// `Δ(c) = Σ c_i(1 − α_i·α_i/2) + ½ Σ c_i c_j α_i·α_j`.
pub fn dimension_of_vertex(p: u32, c: &Momentum) -> Rational {
    let alpha_sq = g(p, 1, 1);
    let linear = (&c.c1 + &c.c2) * (Rational::one() - alpha_sq / int(2));
    linear + c.pairing(p, c) / int(2)
}

/// Fundamental weights `ω₁ = (p/3)(2α₁+α₂)`, `ω₂ = (p/3)(α₁+2α₂)`.
pub fn fundamental_weights(p: u32) -> (Momentum, Momentum) {
    let t = rat(p as i128, 3);
    (
        Momentum::new(&t * int(2), t.clone()),
        Momentum::new(t.clone(), &t * int(2)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(p: u32, i: u8, k: u32) -> FieldExpr {
        FieldExpr::boson(p, i, k).unwrap()
    }

    #[test]
    fn boson_two_point_functions() {
        let p = 3;
        let ope = wick_ope(&d(p, 1, 1), &d(p, 1, 1), &int(0)).unwrap();
        assert_eq!(ope.coefficient(&int(-2)), FieldExpr::constant(p, rat(2, 3)));
        assert!(ope.coefficient(&int(-1)).is_zero());
        assert_eq!(
            ope.coefficient(&int(0)),
            d(p, 1, 1).normal_product(&d(p, 1, 1))
        );
        let ope = wick_ope(&d(p, 1, 1), &d(p, 2, 2), &int(-1)).unwrap();
        // ∂_z∂²_w log = 2!(z−w)^{−3}
        assert_eq!(ope.coefficient(&int(-3)), FieldExpr::constant(p, rat(-2, 3)));
    }

    #[test]
    fn vertex_operators() {
        let p = 2;
        let mu = Momentum::int(1, 0);
        let nu = Momentum::int(0, 1);
        let ope = wick_ope(&FieldExpr::vertex(p, mu.clone()), &FieldExpr::vertex(p, nu.clone()), &rat(1, 2))
            .unwrap();
        assert_eq!(ope.leading_power(), Some(rat(-1, 2)));
        assert_eq!(ope.coefficient(&rat(-1, 2)), FieldExpr::vertex(p, mu.add(&nu)));
        let first = ope.coefficient(&rat(1, 2));
        let expected = FieldExpr::vertex(p, mu.add(&nu)).normal_product(&d(p, 1, 1));
        assert_eq!(first, expected);
        let ope = wick_ope(&d(p, 1, 1), &FieldExpr::vertex(p, mu.clone()), &int(-1)).unwrap();
        assert_eq!(
            ope.coefficient(&int(-1)),
            FieldExpr::vertex(p, mu).scale(&int(1))
        );
    }

    #[test]
    fn derivative_of_vertex() {
        let p = 3;
        let v = FieldExpr::vertex(p, Momentum::int(2, -1));
        let dv = v.derivative();
        let expected = v
            .normal_product(&d(p, 1, 1))
            .scale(&int(2))
            .sub(&v.normal_product(&d(p, 2, 1)));
        assert_eq!(dv, expected);
    }

    #[test]
    fn virasoro_ope_of_t() {
        for p in 2..=6 {
            let t = build_t(p);
            let ope = wick_ope(&t, &t, &int(-1)).unwrap();
            assert_eq!(ope.leading_power(), Some(int(-4)));
            assert_eq!(
                ope.coefficient(&int(-4)),
                FieldExpr::constant(p, central_charge(p) / int(2))
            );
            assert!(ope.coefficient(&int(-3)).is_zero());
            assert_eq!(ope.coefficient(&int(-2)), t.scale(&int(2)));
            assert_eq!(ope.coefficient(&int(-1)), t.derivative());
        }
        assert_eq!(central_charge(2), int(-10));
        assert_eq!(central_charge(3), int(-30));
    }

    #[test]
    fn w_is_primary_of_weight_three() {
        for p in 2..=4 {
            let t = build_t(p);
            let w = build_w(p);
            let ope = wick_ope(&t, &w, &int(-1)).unwrap();
            assert_eq!(ope.leading_power(), Some(int(-2)));
            assert_eq!(ope.coefficient(&int(-2)), w.scale(&int(3)));
            assert_eq!(ope.coefficient(&int(-1)), w.derivative());
        }
    }

    #[test]
    fn t_and_w_coefficients() {
        let t = build_t(2);
        let m = Monomial::new(vec![(1, 1), (1, 1)], Momentum::zero());
        assert_eq!(t.coefficient(&m), rat(2, 3));
        for p in 2..=5 {
            let w = build_w(p);
            let pi = p as i128;
            let m = Monomial::new(vec![(1, 3)], Momentum::zero());
            assert_eq!(w.coefficient(&m), rat(9 * (pi - 1) * (pi - 1), 4 * pi * pi));
            let m = Monomial::new(vec![(1, 1), (1, 1), (2, 1)], Momentum::zero());
            assert_eq!(w.coefficient(&m), rat(3, 2));
        }
    }

    #[test]
    fn vertex_dimensions_match_t_ope() {
        for p in 2..=4u32 {
            let t = build_t(p);
            for (c1, c2) in [(2, 1), (1, 2), (p as i128, 0), (p as i128, p as i128), (-1, 3)] {
                let mu = Momentum::int(c1, c2);
                let ope = wick_ope(&t, &FieldExpr::vertex(p, mu.clone()), &int(-1)).unwrap();
                let delta = dimension_of_vertex(p, &mu);
                assert_eq!(
                    ope.coefficient(&int(-2)),
                    FieldExpr::vertex(p, mu).scale(&delta)
                );
            }
        }
        assert_eq!(dimension_of_vertex(3, &Momentum::int(2, 1)), int(3));
        assert_eq!(dimension_of_vertex(3, &Momentum::int(3, 3)), int(7));
        assert_eq!(dimension_of_vertex(3, &Momentum::int(3, 0)), int(5));
    }

    #[test]
    fn screenings_kill_t_and_w() {
        for p in 2..=3 {
            for alpha in [Momentum::int(1, 0), Momentum::int(0, 1)] {
                assert!(screening_residue(&alpha, &build_t(p)).unwrap().is_zero());
                assert!(screening_residue(&alpha, &build_w(p)).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn long_screening_on_w_is_nonzero_vertex_image() {
        let p = 2;
        let x = FieldExpr::vertex(p, Momentum::int(2, 2));
        let r = screening_residue(&Momentum::int(-2, 0), &x).unwrap();
        assert!(!r.is_zero());
        assert_eq!(r.momenta(), vec![Momentum::int(0, 2)]);
    }

    #[test]
    fn branch_cut_is_reported() {
        let p = 3;
        let x = FieldExpr::vertex(p, Momentum::new(rat(1, 2), int(0)));
        assert!(matches!(
            screening_residue(&Momentum::int(1, 0), &x),
            Err(FreeFieldError::BranchCut { .. })
        ));
    }

    #[test]
    fn truncation_budget() {
        let p = 2;
        let x = FieldExpr::vertex(p, Momentum::int(1, 0));
        let r = wick_ope_with_budget(&x, &x, &int(10), 3);
        assert!(matches!(r, Err(FreeFieldError::TruncationExceeded { .. })));
    }

    #[test]
    fn locality_of_bilinears() {
        // {BA}_q = Σ_{l≥q} (−1)^l/(l−q)! ∂^{l−q}{AB}_l for bosonic A, B
        let p = 3;
        let a = build_t(p);
        let b = d(p, 1, 1).normal_product(&d(p, 2, 2));
        let ab = wick_ope(&a, &b, &int(-1)).unwrap();
        let ba = wick_ope(&b, &a, &int(-1)).unwrap();
        for q in 1..=6u32 {
            let mut expected = FieldExpr::zero(p);
            for l in q..=6u32 {
                let sign = if l % 2 == 0 { 1 } else { -1 };
                let term = ab
                    .coefficient(&int(-(l as i128)))
                    .nth_derivative(l - q)
                    .scale(&(int(sign) / factorial(l - q)));
                expected = expected.add(&term);
            }
            assert_eq!(ba.coefficient(&int(-(q as i128))), expected, "order {q}");
        }
    }

    #[test]
    fn json_schema() {
        let p = 2;
        let x = FieldExpr::from_pairs(
            p,
            [(vec![(2, 1), (1, 3)], Momentum::new(rat(1, 2), int(-2)), rat(-3, 4))],
        );
        let v = x.to_json();
        assert_eq!(
            v,
            serde_json::json!({"p": 2, "terms": [{"coeff": [-3, 4], "factors": [[1, 3], [2, 1]], "momentum": [[1, 2], [-2, 1]]}]})
        );
        assert_eq!(FieldExpr::from_json(&v).unwrap(), x);
        let bad = serde_json::json!({"p": 2, "terms": [{"coeff": [1, 1], "factors": [[3, 1]], "momentum": [[0, 1], [0, 1]]}]});
        assert!(FieldExpr::from_json(&bad).is_err());
    }

    fn arb_expr(p: u32) -> impl Strategy<Value = FieldExpr> {
        let factor = (1u8..=2, 1u32..=3);
        let term = (
            proptest::collection::vec(factor, 0..3),
            -2i128..=2,
            -2i128..=2,
            -5i128..=5,
        );
        proptest::collection::vec(term, 1..4).prop_map(move |ts| {
            FieldExpr::from_pairs(
                p,
                ts.into_iter()
                    .map(|(f, c1, c2, k)| (f, Momentum::int(c1, c2), int(k))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(30))]

        #[test]
        fn vertex_dimension_is_the_t_pole(
            p in 2u32..=4, a in -12i128..12, b in 1i128..5, c in -12i128..12, d in 1i128..5,
        ) {
            let mu = Momentum::new(rat(a, b), rat(c, d));
            let v = FieldExpr::vertex(p, mu.clone());
            let ope = wick_ope(&build_t(p), &v, &int(-2)).unwrap();
            prop_assert_eq!(ope.coefficient(&int(-2)), v.scale(&dimension_of_vertex(p, &mu)));
        }

        #[test]
        fn derivative_is_a_derivation(x in arb_expr(3), y in arb_expr(3)) {
            let lhs = x.normal_product(&y).derivative();
            let rhs = x.derivative().normal_product(&y).add(&x.normal_product(&y.derivative()));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn ope_is_bilinear(x in arb_expr(2), y in arb_expr(2), k in -3i128..=3) {
            let z = build_t(2);
            let max = int(1);
            let sum = wick_ope(&x.add(&y.scale(&int(k))), &z, &max).unwrap();
            let a = wick_ope(&x, &z, &max).unwrap();
            let b = wick_ope(&y, &z, &max).unwrap();
            let mut powers: Vec<Rational> = sum.terms().keys().cloned().collect();
            powers.extend(a.terms().keys().cloned());
            powers.extend(b.terms().keys().cloned());
            for nu in powers {
                prop_assert_eq!(
                    sum.coefficient(&nu),
                    a.coefficient(&nu).add(&b.coefficient(&nu).scale(&int(k)))
                );
            }
        }
    }

    #[test]
    fn fundamental_weights_are_dual() {
        for p in 2..=6 {
            let (w1, w2) = fundamental_weights(p);
            let (a1, a2) = (Momentum::int(1, 0), Momentum::int(0, 1));
            assert!(w1.pairing(p, &a1).is_one());
            assert!(w1.pairing(p, &a2).is_zero());
            assert!(w2.pairing(p, &a1).is_zero());
            assert!(w2.pairing(p, &a2).is_one());
        }
    }
}
