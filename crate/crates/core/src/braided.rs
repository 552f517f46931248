//! The braided tensor algebra over the two-dimensional braided vector space
//! with basis `F₁, F₂` and diagonal braiding
//!
//! ```text
//! Ψ(F_i ⊗ F_j) = q_ij F_j ⊗ F_i,    q₁₁ = q₂₂ = q²,  q₁₂ = q₂₁ = q⁻¹.
//! ```
//!
//! Elements are finite combinations of words in the letters `1, 2`. The module
//! provides the quantum shuffle product, deconcatenation, and the total braided
//! symmetrizer. Everything here is brute force on purpose: the closed PBW
//! formulas in [`crate::nichols`] are checked against it.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclotomic::CycNum;

/// Default largest word length accepted by [`braided_symmetrizer`].
pub const DEFAULT_GRADE_BOUND: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraidError {
    #[error("elements live over different fields (p = {left} vs p = {right})")]
    FieldMismatch { left: u32, right: u32 },
    #[error("letters must be 1 or 2, got {0}")]
    InvalidLetter(u8),
    #[error("element is not homogeneous")]
    Inhomogeneous,
    #[error("word length {grade} exceeds the configured bound {bound}")]
    OverBound { grade: usize, bound: usize },
}

/// A word in the letters `1 ↦ F₁` and `2 ↦ F₂`; the empty word is the unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(letters: impl Into<Vec<u8>>) -> Result<Self, BraidError> {
        let letters = letters.into();
        if let Some(&bad) = letters.iter().find(|&&l| l != 1 && l != 2) {
            return Err(BraidError::InvalidLetter(bad));
        }
        Ok(Word(letters))
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(number of 1s, number of 2s)`.
    pub fn bidegree(&self) -> (u32, u32) {
        let ones = self.0.iter().filter(|&&l| l == 1).count() as u32;
        (ones, self.0.len() as u32 - ones)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn split_at(&self, k: usize) -> (Word, Word) {
        (Word(self.0[..k].to_vec()), Word(self.0[k..].to_vec()))
    }
}

impl TryFrom<Vec<u8>> for Word {
    type Error = BraidError;
    fn try_from(v: Vec<u8>) -> Result<Self, BraidError> {
        Word::new(v)
    }
}

impl From<Word> for Vec<u8> {
    fn from(w: Word) -> Vec<u8> {
        w.0
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "F{l}")?;
        }
        Ok(())
    }
}

/// Exponent `e` in `q_ij = q^e`.
pub fn braiding_exponent(i: u8, j: u8) -> i64 {
    if i == j {
        2
    } else {
        -1
    }
}

/// `q_ij` of the braiding matrix.
pub fn braiding_coefficient(p: u32, i: u8, j: u8) -> Result<CycNum, BraidError> {
    for l in [i, j] {
        if l != 1 && l != 2 {
            return Err(BraidError::InvalidLetter(l));
        }
    }
    Ok(CycNum::q_power(p as i64, braiding_exponent(i, j)).expect("p validated by caller"))
}

/// Exponent of the diagonal-braiding scalar between homogeneous elements of
/// bidegrees `a` and `b`: `q₁₁^{a₁b₁} q₁₂^{a₁b₂} q₂₁^{a₂b₁} q₂₂^{a₂b₂}`.
pub fn bidegree_braiding_exponent(a: (u32, u32), b: (u32, u32)) -> i64 {
    let (a1, a2) = (a.0 as i64, a.1 as i64);
    let (b1, b2) = (b.0 as i64, b.1 as i64);
    2 * a1 * b1 - a1 * b2 - a2 * b1 + 2 * a2 * b2
}

/// Finite linear combination of words with coefficients in ℚ(ζ_{2p}).
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElem {
    p: u32,
    terms: BTreeMap<Word, CycNum>,
}

impl TensorElem {
    pub fn zero(p: u32) -> Self {
        TensorElem {
            p,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(p: u32) -> Self {
        Self::word(p, Word::empty())
    }

    pub fn word(p: u32, w: Word) -> Self {
        Self::monomial(w, CycNum::one(p))
    }

    pub fn monomial(w: Word, c: CycNum) -> Self {
        let mut out = Self::zero(c.p());
        out.add_term(w, &c);
        out
    }

    /// The generator `F_i`.
    pub fn letter(p: u32, i: u8) -> Result<Self, BraidError> {
        Ok(Self::word(p, Word::new(vec![i])?))
    }

    pub fn from_terms(p: u32, terms: impl IntoIterator<Item = (Word, CycNum)>) -> Self {
        let mut out = Self::zero(p);
        for (w, c) in terms {
            out.add_term(w, &c);
        }
        out
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn terms(&self) -> &BTreeMap<Word, CycNum> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> CycNum {
        self.terms.get(w).cloned().unwrap_or_else(|| CycNum::zero(self.p))
    }

    /// The counit: coefficient of the empty word.
    pub fn counit(&self) -> CycNum {
        self.coefficient(&Word::empty())
    }

    pub fn add_term(&mut self, w: Word, c: &CycNum) {
        assert_eq!(c.p(), self.p, "coefficient field mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    fn check_field(&self, other: &Self) -> Result<(), BraidError> {
        if self.p != other.p {
            return Err(BraidError::FieldMismatch {
                left: self.p,
                right: other.p,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, BraidError> {
        self.check_field(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, BraidError> {
        self.add(&other.scale(&CycNum::from_int(other.p, -1)))
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        Self::from_terms(self.p, self.terms.iter().map(|(w, x)| (w.clone(), x * c)))
    }

    /// Concatenation product of the tensor algebra.
    pub fn concat(&self, other: &Self) -> Result<Self, BraidError> {
        self.check_field(other)?;
        let mut out = Self::zero(self.p);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), &(a * b));
            }
        }
        Ok(out)
    }

    pub fn concat_power(&self, n: u32) -> Self {
        (0..n).fold(Self::unit(self.p), |acc, _| acc.concat(self).expect("same field"))
    }

    /// Common word length, if every term has the same one.
    pub fn homogeneous_length(&self) -> Option<usize> {
        let mut lens = self.terms.keys().map(Word::len);
        let first = lens.next().unwrap_or(0);
        lens.all(|l| l == first).then_some(first)
    }

    /// Common bidegree, if every term has the same one (zero is `(0,0)`).
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        let mut degs = self.terms.keys().map(Word::bidegree);
        let first = degs.next().unwrap_or((0, 0));
        degs.all(|d| d == first).then_some(first)
    }

    /// Quantum shuffle product.
    pub fn shuffle_product(&self, other: &Self) -> Result<Self, BraidError> {
        self.check_field(other)?;
        let p = self.p;
        let mut acc: BTreeMap<Word, CycNum> = BTreeMap::new();
        let mut hist = HashMap::new();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                hist.clear();
                shuffle_histogram(u.letters(), v.letters(), 2 * p as i64, &mut hist);
                let ab = a * b;
                for (w, counts) in hist.drain() {
                    let term = &ab * &CycNum::from_laurent(p, &counts);
                    match acc.get_mut(&w) {
                        Some(e) => *e += &term,
                        None => {
                            acc.insert(w, term);
                        }
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(TensorElem { p, terms: acc })
    }

    /// Deconcatenation coproduct `w ↦ Σ_k w[..k] ⊗ w[k..]`.
    pub fn deconcat(&self) -> TensorPower {
        let mut out = TensorPower::zero(self.p, 2);
        for (w, c) in &self.terms {
            for k in 0..=w.len() {
                let (l, r) = w.split_at(k);
                out.add_term(vec![l, r], c);
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "p": self.p,
            "terms": self.terms.iter().map(|(w, c)| serde_json::json!({
                "word": w,
                "coeff": c,
            })).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Debug for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("({c})·{w:?}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Enumerates the `(m, n)`-shuffles of `u` and `v`, recording for each output
/// word how often each power of `q` (mod `2p`) arises from the braiding factors
/// picked up when letters of `v` pass letters of `u`.
fn shuffle_histogram(u: &[u8], v: &[u8], modulus: i64, hist: &mut HashMap<Word, Vec<i64>>) {
    // suffix counts of letters in u
    let mut ones = vec![0i64; u.len() + 1];
    let mut twos = vec![0i64; u.len() + 1];
    for i in (0..u.len()).rev() {
        ones[i] = ones[i + 1] + (u[i] == 1) as i64;
        twos[i] = twos[i + 1] + (u[i] == 2) as i64;
    }
    let mut buf = Vec::with_capacity(u.len() + v.len());
    #[allow(clippy::too_many_arguments)]
    fn rec(
        u: &[u8],
        v: &[u8],
        i: usize,
        j: usize,
        exp: i64,
        ones: &[i64],
        twos: &[i64],
        modulus: i64,
        buf: &mut Vec<u8>,
        hist: &mut HashMap<Word, Vec<i64>>,
    ) {
        if i == u.len() && j == v.len() {
            let counts = hist
                .entry(Word(buf.clone()))
                .or_insert_with(|| vec![0; modulus as usize]);
            counts[exp.rem_euclid(modulus) as usize] += 1;
            return;
        }
        if i < u.len() {
            buf.push(u[i]);
            rec(u, v, i + 1, j, exp, ones, twos, modulus, buf, hist);
            buf.pop();
        }
        if j < v.len() {
            let crossed = if v[j] == 1 {
                2 * ones[i] - twos[i]
            } else {
                2 * twos[i] - ones[i]
            };
            buf.push(v[j]);
            rec(u, v, i, j + 1, exp + crossed, ones, twos, modulus, buf, hist);
            buf.pop();
        }
    }
    rec(u, v, 0, 0, 0, &ones, &twos, modulus, &mut buf, hist);
}

/// The total braided symmetrizer `𝔖_n` applied to a homogeneous element of
/// word length `n`, computed as `𝔖_n = 𝔅_{1,n-1} ∘ (id ⊗ 𝔖_{n-1})`, i.e. the
/// iterated shuffle product of the individual letters.
pub fn braided_symmetrizer(x: &TensorElem, bound: usize) -> Result<TensorElem, BraidError> {
    let n = x.homogeneous_length().ok_or(BraidError::Inhomogeneous)?;
    if n > bound {
        return Err(BraidError::OverBound { grade: n, bound });
    }
    let p = x.p;
    let mut out = TensorElem::zero(p);
    for (w, c) in &x.terms {
        let mut acc = TensorElem::unit(p);
        for &l in w.letters().iter().rev() {
            acc = TensorElem::letter(p, l)?.shuffle_product(&acc)?;
        }
        out = out.add(&acc.scale(c))?;
    }
    Ok(out)
}

/// Braiding scalar between two bidegree-homogeneous elements.
pub fn braiding_between(x: &TensorElem, y: &TensorElem) -> Result<CycNum, BraidError> {
    x.check_field(y)?;
    let a = x.bidegree().ok_or(BraidError::Inhomogeneous)?;
    let b = y.bidegree().ok_or(BraidError::Inhomogeneous)?;
    Ok(CycNum::q_power(x.p as i64, bidegree_braiding_exponent(a, b)).expect("valid p"))
}

/// Braided commutator `[x, y] = xy − (braiding scalar) yx` in the tensor
/// algebra, for bidegree-homogeneous `x`, `y`.
pub fn q_commutator(x: &TensorElem, y: &TensorElem) -> Result<TensorElem, BraidError> {
    let c = braiding_between(x, y)?;
    x.concat(y)?.sub(&y.concat(x)?.scale(&c))
}

/// Element of `T(X)^{⊗k}`: coefficients indexed by `k`-tuples of words.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorPower {
    p: u32,
    arity: usize,
    terms: BTreeMap<Vec<Word>, CycNum>,
}

impl TensorPower {
    pub fn zero(p: u32, arity: usize) -> Self {
        TensorPower {
            p,
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Word>, CycNum> {
        &self.terms
    }

    pub fn coefficient(&self, key: &[Word]) -> CycNum {
        self.terms.get(key).cloned().unwrap_or_else(|| CycNum::zero(self.p))
    }

    pub fn add_term(&mut self, key: Vec<Word>, c: &CycNum) {
        assert_eq!(key.len(), self.arity);
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert_with(|| CycNum::zero(c.p()));
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// `a ⊗ b` as an element of arity 2.
    pub fn tensor(a: &TensorElem, b: &TensorElem) -> Result<TensorPower, BraidError> {
        a.check_field(b)?;
        let mut out = TensorPower::zero(a.p, 2);
        for (u, x) in &a.terms {
            for (v, y) in &b.terms {
                out.add_term(vec![u.clone(), v.clone()], &(x * y));
            }
        }
        Ok(out)
    }

    pub fn add(&mut self, other: &TensorPower) {
        assert_eq!(self.arity, other.arity);
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c);
        }
    }

    /// `(id ⊗ … ⊗ Δ ⊗ … ⊗ id)` with deconcatenation at position `slot`.
    pub fn deconcat_at(&self, slot: usize) -> TensorPower {
        assert!(slot < self.arity);
        let mut out = TensorPower::zero(self.p, self.arity + 1);
        for (key, c) in &self.terms {
            let w = &key[slot];
            for k in 0..=w.len() {
                let (l, r) = w.split_at(k);
                let mut nk = key[..slot].to_vec();
                nk.push(l);
                nk.push(r);
                nk.extend_from_slice(&key[slot + 1..]);
                out.add_term(nk, c);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Debug for TensorPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(k, c)| {
                let ws: Vec<String> = k.iter().map(|w| format!("{w:?}")).collect();
                format!("({c})·{}", ws.join("⊗"))
            })
            .collect();
        write!(f, "{}", if parts.is_empty() { "0".into() } else { parts.join(" + ") })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{q_factorial, CycNum};
    use proptest::prelude::*;

    fn q(p: u32, k: i64) -> CycNum {
        CycNum::q_power(p as i64, k).unwrap()
    }

    fn w(letters: &[u8]) -> Word {
        Word::new(letters.to_vec()).unwrap()
    }

    fn f(p: u32, i: u8) -> TensorElem {
        TensorElem::letter(p, i).unwrap()
    }

    #[test]
    fn braiding_matrix_entries() {
        let p = 5;
        assert_eq!(braiding_coefficient(p, 1, 1).unwrap(), q(p, 2));
        assert_eq!(braiding_coefficient(p, 2, 2).unwrap(), q(p, 2));
        assert_eq!(braiding_coefficient(p, 1, 2).unwrap(), q(p, -1));
        let prod = braiding_coefficient(p, 2, 1).unwrap() * braiding_coefficient(p, 1, 2).unwrap();
        assert_eq!(prod, q(p, -2));
        assert_eq!(braiding_coefficient(p, 3, 1), Err(BraidError::InvalidLetter(3)));
    }

    #[test]
    fn shuffle_examples() {
        for p in 2..=6 {
            let f1f2 = f(p, 1).shuffle_product(&f(p, 2)).unwrap();
            let expected = TensorElem::from_terms(p, [(w(&[1, 2]), CycNum::one(p)), (w(&[2, 1]), q(p, -1))]);
            assert_eq!(f1f2, expected);

            let f1f1 = f(p, 1).shuffle_product(&f(p, 1)).unwrap();
            let expected = TensorElem::monomial(w(&[1, 1]), &CycNum::one(p) + &q(p, 2));
            assert_eq!(f1f1, expected);
        }
        // mismatched p
        assert!(matches!(
            f(2, 1).shuffle_product(&f(3, 1)),
            Err(BraidError::FieldMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn symmetrizer_examples() {
        let p = 4;
        let s = braided_symmetrizer(&TensorElem::word(p, w(&[1, 2])), 8).unwrap();
        let expected = TensorElem::from_terms(p, [(w(&[1, 2]), CycNum::one(p)), (w(&[2, 1]), q(p, -1))]);
        assert_eq!(s, expected);

        // first Serre generator lies in the kernel
        let serre = q_commutator(&f(p, 1), &q_commutator(&f(p, 1), &f(p, 2)).unwrap()).unwrap();
        let explicit = TensorElem::from_terms(
            p,
            [
                (w(&[1, 1, 2]), CycNum::one(p)),
                (w(&[1, 2, 1]), -(&q(p, 1) + &q(p, -1))),
                (w(&[2, 1, 1]), CycNum::one(p)),
            ],
        );
        assert_eq!(serre, explicit);
        assert!(braided_symmetrizer(&serre, 8).unwrap().is_zero());

        // F₁^{⊗p} ↦ ⟨p⟩! F₁^{⊗p} = 0, and nonzero below p
        for p in 2..=6u32 {
            let pw = f(p, 1).concat_power(p);
            assert!(braided_symmetrizer(&pw, 8).unwrap().is_zero());
            let below = f(p, 1).concat_power(p - 1);
            let img = braided_symmetrizer(&below, 8).unwrap();
            let fac = q_factorial(p as i64, p as i64 - 1).unwrap();
            assert_eq!(img, below.scale(&fac));
        }
    }

    #[test]
    fn symmetrizer_errors() {
        let p = 3;
        let mixed = f(p, 1).add(&TensorElem::word(p, w(&[1, 2]))).unwrap();
        assert_eq!(braided_symmetrizer(&mixed, 8), Err(BraidError::Inhomogeneous));
        let long = TensorElem::word(p, w(&[1; 9]));
        assert_eq!(
            braided_symmetrizer(&long, 8),
            Err(BraidError::OverBound { grade: 9, bound: 8 })
        );
        assert!(braided_symmetrizer(&long, 9).unwrap().is_zero());
    }

    #[test]
    fn deconcat_examples() {
        let p = 3;
        let d = f(p, 1).deconcat();
        assert_eq!(d.terms().len(), 2);
        assert!(d.coefficient(&[Word::empty(), w(&[1])]).is_one());
        assert!(d.coefficient(&[w(&[1]), Word::empty()]).is_one());
        let d = TensorElem::word(p, w(&[1, 2])).deconcat();
        assert_eq!(d.terms().len(), 3);
        for key in [[Word::empty(), w(&[1, 2])], [w(&[1]), w(&[2])], [w(&[1, 2]), Word::empty()]] {
            assert!(d.coefficient(&key).is_one());
        }
    }

    #[test]
    fn braiding_between_bidegrees() {
        let p = 5;
        assert_eq!(braiding_between(&f(p, 1), &f(p, 1)).unwrap(), q(p, 2));
        assert_eq!(braiding_between(&f(p, 1), &f(p, 2)).unwrap(), q(p, -1));
        let mixed = f(p, 1).add(&f(p, 2)).unwrap();
        assert_eq!(braiding_between(&mixed, &f(p, 1)), Err(BraidError::Inhomogeneous));
        // bidegree (r+t, s+t) against F₂ = (0,1): exponent −(r+t) + 2(s+t)
        for (r, t, s) in [(1u32, 2u32, 0u32), (0, 1, 3), (2, 0, 2)] {
            let e = bidegree_braiding_exponent((r + t, s + t), (0, 1));
            assert_eq!(e, -(r as i64 + t as i64) + 2 * (s as i64 + t as i64));
        }
    }

    #[test]
    fn serre_identities_in_the_shuffle_algebra() {
        for p in 2..=8 {
            let qq = &q(p, 1) + &q(p, -1);
            for (a, b) in [(1u8, 2u8), (2, 1)] {
                let (fa, fb) = (f(p, a), f(p, b));
                let aab = fa.shuffle_product(&fa).unwrap().shuffle_product(&fb).unwrap();
                let aba = fa.shuffle_product(&fb).unwrap().shuffle_product(&fa).unwrap();
                let baa = fb.shuffle_product(&fa).unwrap().shuffle_product(&fa).unwrap();
                let total = aab.sub(&aba.scale(&qq)).unwrap().add(&baa).unwrap();
                assert!(total.is_zero(), "p={p} ({a},{b})");
            }
        }
    }

    #[test]
    fn word_json() {
        let x = TensorElem::monomial(w(&[2, 1]), q(3, 1));
        let v = x.to_json();
        assert_eq!(v["terms"][0]["word"], serde_json::json!([2, 1]));
        assert!(serde_json::from_str::<Word>("[1,3]").is_err());
    }

    fn arb_word(max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(1u8..=2, 0..=max_len).prop_map(Word)
    }

    fn arb_elem(p: u32, max_len: usize) -> impl Strategy<Value = TensorElem> {
        prop::collection::vec((arb_word(max_len), -3i64..=3, 0i64..12), 0..=3).prop_map(move |ts| {
            TensorElem::from_terms(
                p,
                ts.into_iter()
                    .map(|(w, c, e)| (w, CycNum::q_power(p as i64, e).unwrap().scale(&crate::rational::int(c as i128)))),
            )
        })
    }

    fn arb_homogeneous(p: u32, len: usize) -> impl Strategy<Value = TensorElem> {
        prop::collection::vec((prop::collection::vec(1u8..=2, len), -3i64..=3), 1..=3).prop_map(move |ts| {
            TensorElem::from_terms(p, ts.into_iter().map(|(w, c)| (Word(w), CycNum::from_int(p, c as i128))))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn shuffle_is_associative_and_unital(
            (a, b, c) in (2u32..=5).prop_flat_map(|p| (arb_elem(p, 3), arb_elem(p, 3), arb_elem(p, 2)))
        ) {
            let p = a.p();
            let ab_c = a.shuffle_product(&b).unwrap().shuffle_product(&c).unwrap();
            let a_bc = a.shuffle_product(&b.shuffle_product(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
            let one = TensorElem::unit(p);
            prop_assert_eq!(one.shuffle_product(&a).unwrap(), a.clone());
            prop_assert_eq!(a.shuffle_product(&one).unwrap(), a);
        }

        #[test]
        fn deconcat_is_coassociative(a in arb_elem(4, 5)) {
            let d = a.deconcat();
            prop_assert_eq!(d.deconcat_at(0), d.deconcat_at(1));
            // counit on either side
            let mut left = TensorElem::zero(4);
            let mut right = TensorElem::zero(4);
            for (k, c) in d.terms() {
                if k[0].is_empty() { left.add_term(k[1].clone(), c); }
                if k[1].is_empty() { right.add_term(k[0].clone(), c); }
            }
            prop_assert_eq!(&left, &a);
            prop_assert_eq!(&right, &a);
        }

        #[test]
        fn symmetrizer_turns_concatenation_into_shuffle(
            (x, y) in (1usize..=3, 1usize..=3).prop_flat_map(|(m, n)| (arb_homogeneous(3, m), arb_homogeneous(3, n)))
        ) {
            let lhs = braided_symmetrizer(&x.concat(&y).unwrap(), 8).unwrap();
            let rhs = braided_symmetrizer(&x, 8).unwrap()
                .shuffle_product(&braided_symmetrizer(&y, 8).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
