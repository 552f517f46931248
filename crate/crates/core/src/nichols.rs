//! The rank-two Nichols algebra `𝔅(X)` of dimension `p³` in the PBW basis
//! `⟦r,t,s⟧`, `0 ≤ r,t,s ≤ p−1`.
//!
//! The same vector space carries two normalizations. In the *concatenation*
//! picture `⟦r,t,s⟧` is the class of `F₁^r F₃^t F₂^s` with `F₃ = [F₂,F₁]`, and
//! [`NicholsElem::mul_concat`] is the product induced from the tensor algebra.
//! In the *shuffle* picture `⟦r,t,s⟧` is the symmetrizer image divided by
//! `⟨r⟩!⟨s⟩!⟨t⟩!(1−q²)^t`; [`NicholsElem::mul_shuffle`], the coproduct and the
//! antipode all refer to it. [`to_concat_image`] maps one onto the other.
//!
//! ```
//! use nichols_w3::nichols::{NicholsElem, PbwIndex};
//!
//! let p = 3;
//! let f1 = NicholsElem::basis(p, PbwIndex::new(1, 0, 0));
//! let f2 = NicholsElem::basis(p, PbwIndex::new(0, 0, 1));
//! // F₂F₁ = q⁻¹F₁F₂ + F₃
//! let prod = f2.mul_concat(&f1).unwrap();
//! assert_eq!(prod.terms().len(), 2);
//! assert!(prod.coefficient(PbwIndex::new(0, 1, 0)).is_one());
//! ```

pub mod checks;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::braided::{
    bidegree_braiding_exponent, braided_symmetrizer, q_commutator, BraidError, TensorElem,
};
use crate::cyclotomic::{q_binomial, q_factorial, CycNum};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NicholsError {
    #[error("elements live over different fields (p = {left} vs p = {right})")]
    FieldMismatch { left: u32, right: u32 },
    #[error("PBW index {0:?} lies outside the basis box")]
    OutOfBox(PbwIndex),
    #[error("PBW grade {grade} exceeds the oracle bound {bound}")]
    OverBound { grade: i64, bound: usize },
    #[error(transparent)]
    Braid(#[from] BraidError),
}

/// Index of `F₁^r F₃^t F₂^s`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PbwIndex {
    pub r: i64,
    pub t: i64,
    pub s: i64,
}

impl PbwIndex {
    pub const ONE: PbwIndex = PbwIndex::new(0, 0, 0);
    pub const F1: PbwIndex = PbwIndex::new(1, 0, 0);
    pub const F3: PbwIndex = PbwIndex::new(0, 1, 0);
    pub const F2: PbwIndex = PbwIndex::new(0, 0, 1);

    pub const fn new(r: i64, t: i64, s: i64) -> Self {
        PbwIndex { r, t, s }
    }

    /// `0 ≤ r,t,s ≤ p−1`.
    pub fn is_valid(&self, p: u32) -> bool {
        let box_ = 0..p as i64;
        box_.contains(&self.r) && box_.contains(&self.t) && box_.contains(&self.s)
    }

    /// Word length `r + 2t + s`.
    pub fn grade(&self) -> i64 {
        self.r + 2 * self.t + self.s
    }

    /// `(#F₁, #F₂) = (r+t, s+t)`.
    pub fn bidegree(&self) -> (u32, u32) {
        ((self.r + self.t) as u32, (self.s + self.t) as u32)
    }

    /// All `p³` valid indices in lexicographic order.
    pub fn basis(p: u32) -> Vec<PbwIndex> {
        let m = p as i64;
        let mut out = Vec::with_capacity((m * m * m) as usize);
        for r in 0..m {
            for t in 0..m {
                for s in 0..m {
                    out.push(PbwIndex::new(r, t, s));
                }
            }
        }
        out
    }
}

impl fmt::Debug for PbwIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟦{},{},{}⟧", self.r, self.t, self.s)
    }
}

fn qp(p: u32, k: i64) -> CycNum {
    CycNum::q_power(p as i64, k).expect("p was validated when the field was built")
}

fn qfac(p: u32, n: i64) -> CycNum {
    q_factorial(p as i64, n).expect("non-negative argument")
}

fn qbin(p: u32, n: i64, k: i64) -> CycNum {
    q_binomial(p as i64, n, k).expect("binomial arguments in range")
}

fn sign(n: i64) -> i128 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `1 − q²`.
pub fn one_minus_q2(p: u32) -> CycNum {
    &CycNum::one(p) - &qp(p, 2)
}

/// Exponent `t₁(r₂−i) + t₂(s₁−i) − s₁r₂ + i(i+1)/2` shared by both product tables.
fn product_exponent(a: PbwIndex, b: PbwIndex, i: i64) -> i64 {
    a.t * (b.r - i) + b.t * (a.s - i) - a.s * b.r + i * (i + 1) / 2
}

/// Concatenation product of two basis elements, before dropping targets that
/// leave the box.
pub fn concat_structure(p: u32, a: PbwIndex, b: PbwIndex) -> Vec<(PbwIndex, CycNum)> {
    (0..=a.s.min(b.r))
        .map(|i| {
            let c = &(&qp(p, product_exponent(a, b, i)) * &qfac(p, i))
                * &(&qbin(p, a.s, i) * &qbin(p, b.r, i));
            (PbwIndex::new(a.r + b.r - i, a.t + b.t + i, a.s + b.s - i), c)
        })
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// Shuffle product of two basis elements, before dropping targets that leave
/// the box. The q-multinomial `⟨t₁+t₂+i⟩!/(⟨t₁⟩!⟨t₂⟩!⟨i⟩!)` is evaluated as a
/// product of two q-binomials so no division is needed.
pub fn shuffle_structure(p: u32, a: PbwIndex, b: PbwIndex) -> Vec<(PbwIndex, CycNum)> {
    let d = one_minus_q2(p);
    (0..=a.s.min(b.r))
        .map(|i| {
            let binoms = &qbin(p, a.r + b.r - i, a.r) * &qbin(p, a.s + b.s - i, b.s);
            let multinom = &qbin(p, a.t + b.t + i, a.t) * &qbin(p, b.t + i, i);
            let c = &(&binoms * &multinom) * &(&d.pow(i) * &qp(p, product_exponent(a, b, i)));
            (PbwIndex::new(a.r + b.r - i, a.t + b.t + i, a.s + b.s - i), c)
        })
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// Coproduct of a basis element, before dropping factors that leave the box.
/// Each entry is `(left, right, coefficient)`.
pub fn coproduct_structure(p: u32, x: PbwIndex) -> Vec<(PbwIndex, PbwIndex, CycNum)> {
    let PbwIndex { r, t, s } = x;
    let mut out = Vec::new();
    for j in 0..=r {
        for m in 0..=s {
            for k in 0..=t {
                for i in 0..=k {
                    let e = -i * (i + 3) / 2 + (k - m - 2 * i) * j + m * (t - i - k);
                    let c = &(&qp(p, e) * &qfac(p, i)) * &(&qbin(p, i + j, i) * &qbin(p, i + m, i));
                    let c = c.scale(&crate::rational::int(sign(i)));
                    if !c.is_zero() {
                        out.push((
                            PbwIndex::new(r - j, k - i, i + m),
                            PbwIndex::new(j + i, t - k, s - m),
                            c,
                        ));
                    }
                }
            }
        }
    }
    out
}

/// `⟨r⟩!⟨s⟩!⟨t⟩!(1−q²)^t`, the ratio between the symmetrizer image of the
/// concatenation basis element and the shuffle basis element.
pub fn normalization(p: u32, x: PbwIndex) -> CycNum {
    &(&qfac(p, x.r) * &qfac(p, x.s)) * &(&qfac(p, x.t) * &one_minus_q2(p).pow(x.t))
}

/// Finite combination of PBW basis elements.
#[derive(Clone, PartialEq, Eq)]
pub struct NicholsElem {
    p: u32,
    terms: BTreeMap<PbwIndex, CycNum>,
}

impl NicholsElem {
    pub fn zero(p: u32) -> Self {
        NicholsElem {
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(p: u32) -> Self {
        Self::basis(p, PbwIndex::ONE)
    }

    /// Basis element; indices outside the box give zero.
    pub fn basis(p: u32, x: PbwIndex) -> Self {
        Self::monomial(x, CycNum::one(p))
    }

    pub fn monomial(x: PbwIndex, c: CycNum) -> Self {
        let mut out = Self::zero(c.p());
        out.add_term(x, &c);
        out
    }

    pub fn from_terms(p: u32, terms: impl IntoIterator<Item = (PbwIndex, CycNum)>) -> Self {
        let mut out = Self::zero(p);
        for (x, c) in terms {
            out.add_term(x, &c);
        }
        out
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn terms(&self) -> &BTreeMap<PbwIndex, CycNum> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, x: PbwIndex) -> CycNum {
        self.terms.get(&x).cloned().unwrap_or_else(|| CycNum::zero(self.p))
    }

    /// Adds `c·⟦x⟧`; out-of-box indices are the zero element and are dropped.
    pub fn add_term(&mut self, x: PbwIndex, c: &CycNum) {
        assert_eq!(c.p(), self.p, "coefficient field mismatch");
        if c.is_zero() || !x.is_valid(self.p) {
            return;
        }
        match self.terms.get_mut(&x) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&x);
                }
            }
            None => {
                self.terms.insert(x, c.clone());
            }
        }
    }

    fn check_field(&self, other: &Self) -> Result<(), NicholsError> {
        if self.p != other.p {
            return Err(NicholsError::FieldMismatch {
                left: self.p,
                right: other.p,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, NicholsError> {
        self.check_field(other)?;
        let mut out = self.clone();
        for (x, c) in &other.terms {
            out.add_term(*x, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, NicholsError> {
        self.add(&other.scale(&CycNum::from_int(other.p, -1)))
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        Self::from_terms(self.p, self.terms.iter().map(|(x, a)| (*x, a * c)))
    }

    /// Coefficient of `⟦0,0,0⟧`.
    pub fn counit(&self) -> CycNum {
        self.coefficient(PbwIndex::ONE)
    }

    /// Common bidegree of all terms, if any (zero is `(0,0)`).
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        let mut degs = self.terms.keys().map(PbwIndex::bidegree);
        let first = degs.next().unwrap_or((0, 0));
        degs.all(|d| d == first).then_some(first)
    }

    fn bilinear(
        &self,
        other: &Self,
        table: impl Fn(u32, PbwIndex, PbwIndex) -> Vec<(PbwIndex, CycNum)>,
    ) -> Result<Self, NicholsError> {
        self.check_field(other)?;
        let mut out = Self::zero(self.p);
        for (x, a) in &self.terms {
            for (y, b) in &other.terms {
                let ab = a * b;
                for (z, c) in table(self.p, *x, *y) {
                    out.add_term(z, &(&ab * &c));
                }
            }
        }
        Ok(out)
    }

    /// Product induced by concatenation (concatenation normalization).
    pub fn mul_concat(&self, other: &Self) -> Result<Self, NicholsError> {
        self.bilinear(other, concat_structure)
    }

    /// Shuffle product (shuffle normalization).
    pub fn mul_shuffle(&self, other: &Self) -> Result<Self, NicholsError> {
        self.bilinear(other, shuffle_structure)
    }

    pub fn pow_concat(&self, n: u32) -> Self {
        (0..n).fold(Self::unit(self.p), |acc, _| acc.mul_concat(self).expect("same field"))
    }

    pub fn pow_shuffle(&self, n: u32) -> Self {
        (0..n).fold(Self::unit(self.p), |acc, _| acc.mul_shuffle(self).expect("same field"))
    }

    /// Coproduct in the shuffle normalization, first factor on the left.
    pub fn coproduct(&self) -> NicholsTensor {
        let mut out = NicholsTensor::zero(self.p, 2);
        for (x, a) in &self.terms {
            for (l, r, c) in coproduct_structure(self.p, *x) {
                if l.is_valid(self.p) && r.is_valid(self.p) {
                    out.add_term(vec![l, r], &(a * &c));
                }
            }
        }
        out
    }

    /// Antipode from the closed formulas (shuffle normalization).
    pub fn antipode(&self) -> Self {
        let mut out = Self::zero(self.p);
        for (x, a) in &self.terms {
            for (y, c) in antipode_basis(self.p, *x).terms {
                out.add_term(y, &(a * &c));
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "p": self.p,
            "terms": self.terms.iter().map(|(x, c)| serde_json::json!({
                "r": x.r,
                "t": x.t,
                "s": x.s,
                "coeff": c,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self, serde_json::Error> {
        #[derive(Deserialize)]
        struct Term {
            r: i64,
            t: i64,
            s: i64,
            coeff: CycNum,
        }
        #[derive(Deserialize)]
        struct Wire {
            p: u32,
            terms: Vec<Term>,
        }
        let w: Wire = serde_json::from_value(v.clone())?;
        let mut out = Self::zero(w.p);
        for term in w.terms {
            let x = PbwIndex::new(term.r, term.t, term.s);
            if term.coeff.p() != w.p || !x.is_valid(w.p) {
                return Err(serde::de::Error::custom(format!("bad term {x:?}")));
            }
            out.add_term(x, &term.coeff);
        }
        Ok(out)
    }
}

impl fmt::Debug for NicholsElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(x, c)| format!("({c}){x:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Element of `𝔅(X)^{⊗k}` in the PBW basis.
#[derive(Clone, PartialEq, Eq)]
pub struct NicholsTensor {
    p: u32,
    arity: usize,
    terms: BTreeMap<Vec<PbwIndex>, CycNum>,
}

impl NicholsTensor {
    pub fn zero(p: u32, arity: usize) -> Self {
        NicholsTensor {
            p,
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<Vec<PbwIndex>, CycNum> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: &[PbwIndex]) -> CycNum {
        self.terms.get(key).cloned().unwrap_or_else(|| CycNum::zero(self.p))
    }

    pub fn add_term(&mut self, key: Vec<PbwIndex>, c: &CycNum) {
        assert_eq!(key.len(), self.arity);
        if c.is_zero() || !key.iter().all(|x| x.is_valid(self.p)) {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert_with(|| CycNum::zero(c.p()));
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// The coproduct as `(left, right, coefficient)` triples (arity 2 only).
    pub fn triples(&self) -> Vec<(NicholsElem, NicholsElem, CycNum)> {
        assert_eq!(self.arity, 2);
        self.terms
            .iter()
            .map(|(k, c)| {
                (
                    NicholsElem::basis(self.p, k[0]),
                    NicholsElem::basis(self.p, k[1]),
                    c.clone(),
                )
            })
            .collect()
    }

    /// Applies the coproduct to the factor at `slot`.
    pub fn coproduct_at(&self, slot: usize) -> NicholsTensor {
        assert!(slot < self.arity);
        let mut out = NicholsTensor::zero(self.p, self.arity + 1);
        for (key, c) in &self.terms {
            for (l, r, d) in coproduct_structure(self.p, key[slot]) {
                let mut nk = key[..slot].to_vec();
                nk.push(l);
                nk.push(r);
                nk.extend_from_slice(&key[slot + 1..]);
                out.add_term(nk, &(c * &d));
            }
        }
        out
    }

    /// Product in the braided tensor square,
    /// `(a⊗b)(c⊗d) = ψ(b,c)·(a*c)⊗(b*d)` with the diagonal braiding scalar
    /// between the bidegrees of `b` and `c`.
    pub fn mul_braided(&self, other: &NicholsTensor) -> NicholsTensor {
        assert_eq!((self.arity, other.arity), (2, 2));
        let p = self.p;
        let mut out = NicholsTensor::zero(p, 2);
        for (k1, x) in &self.terms {
            for (k2, y) in &other.terms {
                let braid = qp(p, bidegree_braiding_exponent(k1[1].bidegree(), k2[0].bidegree()));
                let c = &(x * y) * &braid;
                for (l, a) in shuffle_structure(p, k1[0], k2[0]) {
                    let ca = &c * &a;
                    for (r, b) in shuffle_structure(p, k1[1], k2[1]) {
                        out.add_term(vec![l, r], &(&ca * &b));
                    }
                }
            }
        }
        out
    }

    /// Multiplies the two factors together with the given product, after
    /// applying `f` to the left and `g` to the right factor.
    pub fn contract(
        &self,
        f: impl Fn(PbwIndex) -> NicholsElem,
        g: impl Fn(PbwIndex) -> NicholsElem,
    ) -> NicholsElem {
        assert_eq!(self.arity, 2);
        let mut out = NicholsElem::zero(self.p);
        for (k, c) in &self.terms {
            let prod = f(k[0]).mul_shuffle(&g(k[1])).expect("same field");
            out = out.add(&prod.scale(c)).expect("same field");
        }
        out
    }
}

impl fmt::Debug for NicholsTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let xs: Vec<String> = k.iter().map(|x| format!("{x:?}")).collect();
                format!("({c}){}", xs.join("⊗"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `S⟦r,0,0⟧ = (−1)^r q^{r(r−1)} ⟦r,0,0⟧` (and likewise for `⟦0,0,s⟧`).
fn antipode_power(p: u32, x: PbwIndex, n: i64) -> NicholsElem {
    let c = qp(p, n * (n - 1)).scale(&crate::rational::int(sign(n)));
    NicholsElem::monomial(x, c)
}

fn antipode_middle(p: u32, t: i64) -> NicholsElem {
    let mut out = NicholsElem::zero(p);
    for i in 0..=t {
        debug_assert_eq!(i * (i - 1) % 2, 0);
        let e = i * (i - 1) / 2 - (i + 3) * t + t * t;
        let c = (&qp(p, e) * &qfac(p, i)).scale(&crate::rational::int(sign(t)));
        out.add_term(PbwIndex::new(i, t - i, i), &c);
    }
    out
}

/// Closed-form antipode of a basis element:
/// `S⟦r,t,s⟧ = q^{rt−rs+ts} S⟦0,0,s⟧ * S⟦0,t,0⟧ * S⟦r,0,0⟧`.
pub fn antipode_basis(p: u32, x: PbwIndex) -> NicholsElem {
    if !x.is_valid(p) {
        return NicholsElem::zero(p);
    }
    let PbwIndex { r, t, s } = x;
    let sr = antipode_power(p, PbwIndex::new(r, 0, 0), r);
    let ss = antipode_power(p, PbwIndex::new(0, 0, s), s);
    let st = antipode_middle(p, t);
    let prod = ss
        .mul_shuffle(&st)
        .and_then(|y| y.mul_shuffle(&sr))
        .expect("same field");
    prod.scale(&qp(p, r * t - r * s + t * s))
}

/// Antipode of every basis element obtained from `m(S⊗id)Δ = ε` by recursion
/// on the grade, independently of the closed formulas.
pub fn antipode_recursive(p: u32) -> HashMap<PbwIndex, NicholsElem> {
    let mut basis = PbwIndex::basis(p);
    basis.sort_by_key(|x| (x.grade(), *x));
    let mut table: HashMap<PbwIndex, NicholsElem> = HashMap::new();
    for x in basis {
        let delta = NicholsElem::basis(p, x).coproduct();
        let lead = delta.coefficient(&[x, PbwIndex::ONE]);
        assert!(lead.is_one(), "coproduct of {x:?} lacks the x⊗1 term");
        let mut acc = NicholsElem::zero(p);
        if x == PbwIndex::ONE {
            acc = NicholsElem::unit(p);
        }
        for (k, c) in delta.terms() {
            if k[1] == PbwIndex::ONE {
                continue;
            }
            let term = table[&k[0]]
                .mul_shuffle(&NicholsElem::basis(p, k[1]))
                .expect("same field")
                .scale(c);
            acc = acc.sub(&term).expect("same field");
        }
        table.insert(x, acc);
    }
    table
}

/// Maps the concatenation basis onto the shuffle basis,
/// `⟦r,t,s⟧ ↦ ⟨r⟩!⟨s⟩!⟨t⟩!(1−q²)^t ⟦r,t,s⟧`; an algebra isomorphism from
/// [`NicholsElem::mul_concat`] to [`NicholsElem::mul_shuffle`].
pub fn to_concat_image(x: &NicholsElem) -> NicholsElem {
    NicholsElem::from_terms(
        x.p,
        x.terms.iter().map(|(i, c)| (*i, c * &normalization(x.p, *i))),
    )
}

/// `F₁^r F₃^t F₂^s` in the tensor algebra, `F₃ = F₂F₁ − q⁻¹F₁F₂`.
pub fn pbw_word(p: u32, x: PbwIndex) -> Result<TensorElem, NicholsError> {
    if x.r < 0 || x.t < 0 || x.s < 0 {
        return Err(NicholsError::OutOfBox(x));
    }
    let f1 = TensorElem::letter(p, 1)?;
    let f2 = TensorElem::letter(p, 2)?;
    let f3 = q_commutator(&f2, &f1)?;
    let word = f1
        .concat_power(x.r as u32)
        .concat(&f3.concat_power(x.t as u32))?
        .concat(&f2.concat_power(x.s as u32))?;
    Ok(word)
}

/// Image of a basis element under the symmetrizer map, shuffle normalization.
pub fn basis_to_tensor(p: u32, x: PbwIndex, bound: usize) -> Result<TensorElem, NicholsError> {
    if !x.is_valid(p) {
        return Err(NicholsError::OutOfBox(x));
    }
    if x.grade() as usize > bound {
        return Err(NicholsError::OverBound {
            grade: x.grade(),
            bound,
        });
    }
    let sym = braided_symmetrizer(&pbw_word(p, x)?, bound)?;
    let n = normalization(p, x).inv().expect("normalization is nonzero inside the box");
    Ok(sym.scale(&n))
}

/// `toTensor` for a general element.
pub fn to_tensor(x: &NicholsElem, bound: usize) -> Result<TensorElem, NicholsError> {
    let mut out = TensorElem::zero(x.p);
    for (i, c) in &x.terms {
        out = out.add(&basis_to_tensor(x.p, *i, bound)?.scale(c))?;
    }
    Ok(out)
}

/// Precomputed symmetrizer images of every basis element up to a grade bound.
pub struct TensorOracle {
    p: u32,
    bound: usize,
    images: HashMap<PbwIndex, TensorElem>,
}

impl TensorOracle {
    pub fn new(p: u32, bound: usize) -> Result<Self, NicholsError> {
        let indices: Vec<PbwIndex> = PbwIndex::basis(p)
            .into_iter()
            .filter(|x| x.grade() as usize <= bound)
            .collect();
        let images = indices
            .par_iter()
            .map(|x| basis_to_tensor(p, *x, bound).map(|t| (*x, t)))
            .collect::<Result<HashMap<_, _>, _>>()?;
        Ok(TensorOracle { p, bound, images })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Indices covered by the oracle, in lexicographic order.
    pub fn indices(&self) -> Vec<PbwIndex> {
        let mut v: Vec<PbwIndex> = self.images.keys().copied().collect();
        v.sort();
        v
    }

    pub fn image(&self, x: PbwIndex) -> Option<&TensorElem> {
        self.images.get(&x)
    }

    pub fn map(&self, x: &NicholsElem) -> Result<TensorElem, NicholsError> {
        let mut out = TensorElem::zero(self.p);
        for (i, c) in &x.terms {
            let img = self.images.get(i).ok_or(NicholsError::OverBound {
                grade: i.grade(),
                bound: self.bound,
            })?;
            out = out.add(&img.scale(c))?;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braided::Word;

    fn q(p: u32, k: i64) -> CycNum {
        qp(p, k)
    }

    fn w(letters: &[u8]) -> Word {
        Word::new(letters.to_vec()).unwrap()
    }

    #[test]
    fn concat_table_examples() {
        for p in 3..=6 {
            let f1 = NicholsElem::basis(p, PbwIndex::F1);
            let f2 = NicholsElem::basis(p, PbwIndex::F2);
            assert_eq!(
                f1.mul_concat(&f1).unwrap(),
                NicholsElem::basis(p, PbwIndex::new(2, 0, 0))
            );
            let expected = NicholsElem::from_terms(
                p,
                [
                    (PbwIndex::new(1, 0, 1), q(p, -1)),
                    (PbwIndex::F3, CycNum::one(p)),
                ],
            );
            assert_eq!(f2.mul_concat(&f1).unwrap(), expected);
            let top = NicholsElem::basis(p, PbwIndex::new(p as i64 - 1, 0, 0));
            assert!(top.mul_concat(&f1).unwrap().is_zero());
        }
    }

    #[test]
    fn shuffle_table_examples() {
        let p = 3;
        let f1 = NicholsElem::basis(p, PbwIndex::F1);
        assert_eq!(
            f1.mul_shuffle(&f1).unwrap(),
            NicholsElem::monomial(PbwIndex::new(2, 0, 0), &CycNum::one(p) + &q(p, 2))
        );
        let f1 = NicholsElem::basis(2, PbwIndex::F1);
        assert!(f1.mul_shuffle(&f1).unwrap().is_zero());
    }

    #[test]
    fn pbw_factorization_in_shuffle_picture() {
        for p in 2..=4 {
            for x in PbwIndex::basis(p) {
                let a = NicholsElem::basis(p, PbwIndex::new(x.r, 0, 0));
                let b = NicholsElem::basis(p, PbwIndex::new(0, x.t, 0));
                let c = NicholsElem::basis(p, PbwIndex::new(0, 0, x.s));
                let prod = a.mul_shuffle(&b).unwrap().mul_shuffle(&c).unwrap();
                assert_eq!(prod, NicholsElem::basis(p, x), "p={p} {x:?}");
            }
        }
    }

    #[test]
    fn symmetrizer_images_of_low_basis_elements() {
        let p = 3;
        let img = |r, t, s| basis_to_tensor(p, PbwIndex::new(r, t, s), 8).unwrap();
        assert_eq!(img(1, 0, 0), TensorElem::word(p, w(&[1])));
        assert_eq!(img(2, 0, 0), TensorElem::word(p, w(&[1, 1])));
        assert_eq!(img(0, 0, 2), TensorElem::word(p, w(&[2, 2])));
        assert_eq!(
            img(1, 0, 1),
            TensorElem::from_terms(p, [(w(&[1, 2]), CycNum::one(p)), (w(&[2, 1]), q(p, -1))])
        );
        assert_eq!(img(0, 1, 0), TensorElem::monomial(w(&[2, 1]), -q(p, -2)));
        assert!(matches!(
            basis_to_tensor(p, PbwIndex::new(2, 2, 2), 7),
            Err(NicholsError::OverBound { .. })
        ));
        assert!(matches!(
            basis_to_tensor(p, PbwIndex::new(3, 0, 0), 8),
            Err(NicholsError::OutOfBox(_))
        ));
    }

    #[test]
    fn shuffle_truncation_is_automatic() {
        for p in 2..=4 {
            let basis = PbwIndex::basis(p);
            for a in &basis {
                for b in &basis {
                    for (z, c) in shuffle_structure(p, *a, *b) {
                        assert!(z.is_valid(p), "p={p} {a:?}*{b:?} -> {z:?} with {c}");
                    }
                }
                for (l, r, c) in coproduct_structure(p, *a) {
                    assert!(l.is_valid(p) && r.is_valid(p), "Δ{a:?} -> {l:?}⊗{r:?} with {c}");
                }
            }
        }
    }

    #[test]
    fn coproduct_of_generators_and_low_terms() {
        let p = 4;
        let d = NicholsElem::basis(p, PbwIndex::F1).coproduct();
        assert_eq!(d.terms().len(), 2);
        assert!(d.coefficient(&[PbwIndex::ONE, PbwIndex::F1]).is_one());
        assert!(d.coefficient(&[PbwIndex::F1, PbwIndex::ONE]).is_one());
        let x = PbwIndex::new(2, 1, 3);
        let d = NicholsElem::basis(p, x).coproduct();
        assert_eq!(
            d.coefficient(&[PbwIndex::F2, PbwIndex::new(2, 1, 2)]),
            q(p, 1 - 2)
        );
        let expected = -(&q(p, -4) * &crate::cyclotomic::q_int(p as i64, 3).unwrap());
        assert_eq!(d.coefficient(&[PbwIndex::F2, PbwIndex::new(3, 0, 3)]), expected);
    }

    #[test]
    fn antipode_examples() {
        let p = 3;
        let s1 = NicholsElem::basis(p, PbwIndex::F1).antipode();
        assert_eq!(s1, NicholsElem::monomial(PbwIndex::F1, CycNum::from_int(p, -1)));
        let s3 = NicholsElem::basis(p, PbwIndex::F3).antipode();
        let expected = NicholsElem::from_terms(
            p,
            [(PbwIndex::F3, -q(p, -2)), (PbwIndex::new(1, 0, 1), -q(p, -3))],
        );
        assert_eq!(s3, expected);
    }

    #[test]
    fn counit_is_linear() {
        let p = 3;
        let x = NicholsElem::from_terms(
            p,
            [(PbwIndex::ONE, q(p, 1)), (PbwIndex::F1, CycNum::from_int(p, 5))],
        );
        assert_eq!(x.counit(), q(p, 1));
        assert!(NicholsElem::basis(p, PbwIndex::F2).counit().is_zero());
        assert_eq!(x.scale(&q(p, 2)).counit(), q(p, 3));
    }

    #[test]
    fn out_of_box_basis_is_zero() {
        assert!(NicholsElem::basis(2, PbwIndex::new(2, 0, 0)).is_zero());
        assert!(NicholsElem::basis(2, PbwIndex::new(-1, 0, 0)).is_zero());
    }

    #[test]
    fn field_mismatch_is_an_error() {
        let a = NicholsElem::unit(2);
        let b = NicholsElem::unit(3);
        assert!(matches!(a.mul_concat(&b), Err(NicholsError::FieldMismatch { .. })));
    }

    #[test]
    fn json_round_trip() {
        let p = 3;
        let x = NicholsElem::from_terms(
            p,
            [(PbwIndex::new(1, 2, 0), q(p, 1)), (PbwIndex::F2, CycNum::from_int(p, -2))],
        );
        let v = x.to_json();
        assert_eq!(v["terms"][0]["r"], 0);
        assert_eq!(v["terms"][1]["t"], 2);
        assert_eq!(NicholsElem::from_json(&v).unwrap(), x);
        let bad = serde_json::json!({"p": 3, "terms": [{"r": 3, "t": 0, "s": 0, "coeff": CycNum::one(3)}]});
        assert!(NicholsElem::from_json(&bad).is_err());
    }

    #[test]
    fn isomorphism_sends_generators_to_generators() {
        let p = 3;
        let x = NicholsElem::basis(p, PbwIndex::F1);
        assert_eq!(to_concat_image(&x), x);
        let f3 = to_concat_image(&NicholsElem::basis(p, PbwIndex::F3));
        assert_eq!(f3, NicholsElem::monomial(PbwIndex::F3, one_minus_q2(p)));
    }
}
