//! Verification sweeps over the PBW basis. Each function returns one
//! [`CheckEntry`] (or a report of several) describing what was compared.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    antipode_recursive, coproduct_structure, shuffle_structure, to_concat_image, NicholsElem,
    NicholsTensor, PbwIndex, TensorOracle,
};
use crate::braided::{braided_symmetrizer, q_commutator, TensorElem, TensorPower};
use crate::cyclotomic::CycNum;
use crate::report::{CheckEntry, CheckReport};

fn basis_pairs(p: u32) -> Vec<(PbwIndex, PbwIndex)> {
    let basis = PbwIndex::basis(p);
    basis
        .iter()
        .flat_map(|a| basis.iter().map(move |b| (*a, *b)))
        .collect()
}

fn collect_failures<T: Send + Sync>(
    items: Vec<T>,
    check: impl Fn(&T) -> Option<String> + Sync,
) -> (usize, Vec<String>) {
    let n = items.len();
    let failures: Vec<String> = items.par_iter().filter_map(&check).collect();
    (n, failures)
}

/// `toTensor(a * b) = toTensor(a) ⧢ toTensor(b)` for every basis pair within
/// the oracle's grade bound.
pub fn oracle_equivalence(oracle: &TensorOracle) -> CheckEntry {
    let p = oracle.p();
    let idx = oracle.indices();
    let pairs: Vec<(PbwIndex, PbwIndex)> = idx
        .iter()
        .flat_map(|a| idx.iter().map(move |b| (*a, *b)))
        .filter(|(a, b)| (a.grade() + b.grade()) as usize <= oracle.bound())
        .collect();
    let (n, failures) = collect_failures(pairs, |(a, b)| {
        let lhs = NicholsElem::basis(p, *a)
            .mul_shuffle(&NicholsElem::basis(p, *b))
            .and_then(|x| oracle.map(&x));
        let rhs = oracle
            .image(*a)
            .unwrap()
            .shuffle_product(oracle.image(*b).unwrap());
        match (lhs, rhs) {
            (Ok(l), Ok(r)) if l == r => None,
            (l, r) => Some(format!("{a:?}*{b:?}: closed form {l:?} vs oracle {r:?}")),
        }
    });
    CheckEntry::from_failures(
        format!("oracle-equivalence p={p} grade<={}", oracle.bound()),
        "shuffle product of PBW images",
        n,
        failures,
    )
}

/// The normalization map carries the concatenation table onto the shuffle
/// table on the full basis.
pub fn product_isomorphism(p: u32) -> CheckEntry {
    let (n, failures) = collect_failures(basis_pairs(p), |(a, b)| {
        let x = NicholsElem::basis(p, *a);
        let y = NicholsElem::basis(p, *b);
        let lhs = to_concat_image(&x.mul_concat(&y).unwrap());
        let rhs = to_concat_image(&x)
            .mul_shuffle(&to_concat_image(&y))
            .unwrap();
        (lhs != rhs).then(|| format!("{a:?}·{b:?}: {lhs:?} vs {rhs:?}"))
    });
    CheckEntry::from_failures(
        format!("concat-shuffle-isomorphism p={p}"),
        "PBW multiplication table vs shuffle product",
        n,
        failures,
    )
}

/// Random element with at most `len` terms and small coefficients `±m·q^k`.
pub fn random_element(p: u32, rng: &mut impl Rng, len: usize) -> NicholsElem {
    let basis = PbwIndex::basis(p);
    let mut out = NicholsElem::zero(p);
    for _ in 0..rng.gen_range(1..=len) {
        let x = basis[rng.gen_range(0..basis.len())];
        let m = rng.gen_range(-3i128..=3);
        let k = rng.gen_range(0..2 * p as i64);
        let c = CycNum::q_power(p as i64, k).unwrap().scale(&crate::rational::int(m));
        out.add_term(x, &c);
    }
    out
}

/// Associativity of both products on `samples` random triples.
pub fn associativity(p: u32, samples: usize, seed: u64) -> Vec<CheckEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p as u64);
    let triples: Vec<[NicholsElem; 3]> = (0..samples)
        .map(|_| {
            [
                random_element(p, &mut rng, 3),
                random_element(p, &mut rng, 3),
                random_element(p, &mut rng, 3),
            ]
        })
        .collect();
    type Mul = fn(&NicholsElem, &NicholsElem) -> Result<NicholsElem, super::NicholsError>;
    let products: [(&str, &str, Mul); 2] = [
        ("concat", "PBW multiplication table", NicholsElem::mul_concat),
        ("shuffle", "shuffle product of PBW images", NicholsElem::mul_shuffle),
    ];
    products
        .iter()
        .map(|(name, anchor, mul)| {
            let failures: Vec<String> = triples
                .par_iter()
                .filter_map(|[a, b, c]| {
                    let l = mul(&mul(a, b).unwrap(), c).unwrap();
                    let r = mul(a, &mul(b, c).unwrap()).unwrap();
                    (l != r).then(|| format!("({a:?})({b:?})({c:?})"))
                })
                .collect();
            CheckEntry::from_failures(
                format!("associativity-{name} p={p}"),
                *anchor,
                samples,
                failures,
            )
        })
        .collect()
}

/// `(Δ⊗id)Δ = (id⊗Δ)Δ` on the full basis.
pub fn coassociativity(p: u32) -> CheckEntry {
    let (n, failures) = collect_failures(PbwIndex::basis(p), |x| {
        let d = NicholsElem::basis(p, *x).coproduct();
        let l = d.coproduct_at(0);
        let r = d.coproduct_at(1);
        (l != r).then(|| format!("{x:?}"))
    });
    CheckEntry::from_failures(
        format!("coassociativity p={p}"),
        "PBW coproduct",
        n,
        failures,
    )
}

/// `(ε⊗id)Δ = id = (id⊗ε)Δ` on the full basis.
pub fn counit_axioms(p: u32) -> CheckEntry {
    let (n, failures) = collect_failures(PbwIndex::basis(p), |x| {
        let d = NicholsElem::basis(p, *x).coproduct();
        let mut left = NicholsElem::zero(p);
        let mut right = NicholsElem::zero(p);
        for (k, c) in d.terms() {
            if k[0] == PbwIndex::ONE {
                left.add_term(k[1], c);
            }
            if k[1] == PbwIndex::ONE {
                right.add_term(k[0], c);
            }
        }
        let id = NicholsElem::basis(p, *x);
        (left != id || right != id).then(|| format!("{x:?}"))
    });
    CheckEntry::from_failures(format!("counit p={p}"), "counit of PBW coproduct", n, failures)
}

/// The lowest terms of the coproduct: `1⊗x + F₁⊗⟦r−1,t,s⟧ +
/// q^{t−r}F₂⊗⟦r,t,s−1⟧ − q^{−r−2}⟨r+1⟩F₂⊗⟦r+1,t−1,s⟧ + …`.
pub fn coproduct_low_terms(p: u32) -> CheckEntry {
    let (n, failures) = collect_failures(PbwIndex::basis(p), |x| {
        let PbwIndex { r, t, s } = *x;
        let d = NicholsElem::basis(p, *x).coproduct();
        let q = |k| CycNum::q_power(p as i64, k).unwrap();
        let mut bad = Vec::new();
        let expect = |key: [PbwIndex; 2], want: CycNum, bad: &mut Vec<String>| {
            if key[1].is_valid(p) && d.coefficient(&key) != want {
                bad.push(format!("{key:?}"));
            }
        };
        expect([PbwIndex::ONE, *x], CycNum::one(p), &mut bad);
        if r > 0 {
            expect([PbwIndex::F1, PbwIndex::new(r - 1, t, s)], CycNum::one(p), &mut bad);
        }
        if s > 0 {
            expect([PbwIndex::F2, PbwIndex::new(r, t, s - 1)], q(t - r), &mut bad);
        }
        if t > 0 {
            let c = -(&q(-r - 2) * &crate::cyclotomic::q_int(p as i64, r + 1).unwrap());
            expect([PbwIndex::F2, PbwIndex::new(r + 1, t - 1, s)], c, &mut bad);
        }
        // no other grade-0 or grade-1 left factors
        for k in d.terms().keys() {
            let known = k[0] == PbwIndex::ONE
                || (k[0] == PbwIndex::F1 && k[1] == PbwIndex::new(r - 1, t, s))
                || (k[0] == PbwIndex::F2
                    && (k[1] == PbwIndex::new(r, t, s - 1)
                        || k[1] == PbwIndex::new(r + 1, t - 1, s)));
            if k[0].grade() <= 1 && !known {
                bad.push(format!("unexpected {k:?}"));
            }
        }
        (!bad.is_empty()).then(|| format!("{x:?}: {}", bad.join(",")))
    });
    CheckEntry::from_failures(
        format!("coproduct-low-grade p={p}"),
        "PBW coproduct, lowest terms",
        n,
        failures,
    )
}

/// The coproduct agrees with deconcatenation of the symmetrizer images.
pub fn coproduct_matches_deconcat(oracle: &TensorOracle) -> CheckEntry {
    let p = oracle.p();
    let (n, failures) = collect_failures(oracle.indices(), |x| {
        let lhs = oracle.image(*x).unwrap().deconcat();
        let mut rhs = TensorPower::zero(p, 2);
        for (k, c) in NicholsElem::basis(p, *x).coproduct().terms() {
            let (Some(a), Some(b)) = (oracle.image(k[0]), oracle.image(k[1])) else {
                return Some(format!("{x:?}: factor outside the oracle"));
            };
            let ab = TensorPower::tensor(&a.scale(c), b).unwrap();
            rhs.add(&ab);
        }
        (lhs != rhs).then(|| format!("{x:?}"))
    });
    CheckEntry::from_failures(
        format!("coproduct-vs-deconcatenation p={p} grade<={}", oracle.bound()),
        "PBW coproduct",
        n,
        failures,
    )
}

/// `Δ(x*y) = Δ(x)Δ(y)` in the braided tensor square, on the full basis.
pub fn coproduct_homomorphism(p: u32) -> CheckEntry {
    let coproducts: Vec<NicholsTensor> = PbwIndex::basis(p)
        .into_iter()
        .map(|x| NicholsElem::basis(p, x).coproduct())
        .collect();
    let basis = PbwIndex::basis(p);
    let n = basis.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let (count, failures) = collect_failures(pairs, |&(i, j)| {
        let (a, b) = (basis[i], basis[j]);
        let mut prod = NicholsElem::zero(p);
        for (z, c) in shuffle_structure(p, a, b) {
            prod.add_term(z, &c);
        }
        let lhs = prod.coproduct();
        let rhs = coproducts[i].mul_braided(&coproducts[j]);
        (lhs != rhs).then(|| format!("{a:?}*{b:?}"))
    });
    CheckEntry::from_failures(
        format!("coproduct-homomorphism p={p}"),
        "PBW coproduct and shuffle product",
        count,
        failures,
    )
}

/// `Σ S(x′)*x″ = Σ x′*S(x″) = ε(x)1` on the full basis, closed-form `S`.
pub fn antipode_axioms(p: u32) -> CheckEntry {
    let (n, failures) = collect_failures(PbwIndex::basis(p), |x| {
        let d = NicholsElem::basis(p, *x).coproduct();
        let eps = NicholsElem::unit(p).scale(&NicholsElem::basis(p, *x).counit());
        let id = |y| NicholsElem::basis(p, y);
        let s = |y| NicholsElem::basis(p, y).antipode();
        let left = d.contract(s, id);
        let right = d.contract(id, s);
        (left != eps || right != eps).then(|| format!("{x:?}: {left:?} / {right:?}"))
    });
    CheckEntry::from_failures(
        format!("antipode-axioms p={p}"),
        "antipode on PBW basis",
        n,
        failures,
    )
}

/// Closed-form antipode equals the one obtained recursively from the axiom.
pub fn antipode_closed_form(p: u32) -> CheckEntry {
    let table = antipode_recursive(p);
    let (n, failures) = collect_failures(PbwIndex::basis(p), |x| {
        let closed = NicholsElem::basis(p, *x).antipode();
        (closed != table[x]).then(|| format!("{x:?}: {closed:?} vs {:?}", table[x]))
    });
    CheckEntry::from_failures(
        format!("antipode-closed-form p={p}"),
        "antipode on PBW basis",
        n,
        failures,
    )
}

/// Raw coefficients that fall outside the box vanish on their own, both in
/// the shuffle table and in the coproduct.
pub fn truncation_is_automatic(p: u32) -> CheckEntry {
    let (n, failures) = collect_failures(basis_pairs(p), |(a, b)| {
        let bad_product = shuffle_structure(p, *a, *b)
            .into_iter()
            .any(|(z, _)| !z.is_valid(p));
        let bad_coproduct = b == &PbwIndex::ONE
            && coproduct_structure(p, *a)
                .into_iter()
                .any(|(l, r, _)| !l.is_valid(p) || !r.is_valid(p));
        (bad_product || bad_coproduct).then(|| format!("{a:?},{b:?}"))
    });
    CheckEntry::from_failures(
        format!("automatic-truncation p={p}"),
        "shuffle product of PBW images",
        n,
        failures,
    )
}

/// Generators of the defining ideal vanish under the symmetrizer, the
/// rewritten double-bracket relations hold in the PBW product, and the PBW
/// generators are nilpotent of order `p`.
pub fn serre_check(p: u32) -> CheckReport {
    let mut report = CheckReport::new();
    let bound = 8.max(2 * p as usize);
    let f1 = TensorElem::letter(p, 1).unwrap();
    let f2 = TensorElem::letter(p, 2).unwrap();
    let f3 = q_commutator(&f2, &f1).unwrap();
    let mut generators: Vec<(&str, TensorElem)> = Vec::new();
    if p > 2 {
        generators.push(("[F1,[F1,F2]]", q_commutator(&f1, &q_commutator(&f1, &f2).unwrap()).unwrap()));
        generators.push(("[F2,[F2,F1]]", q_commutator(&f2, &f3).unwrap()));
    }
    generators.push(("F1^p", f1.concat_power(p)));
    generators.push(("[F2,F1]^p", f3.concat_power(p)));
    generators.push(("F2^p", f2.concat_power(p)));
    let q = CycNum::q_power(p as i64, 1).unwrap();
    let rel = |a: &TensorElem, b: &TensorElem| {
        a.concat(b).unwrap().sub(&b.concat(a).unwrap().scale(&q)).unwrap()
    };
    generators.push(("F2F3-qF3F2", rel(&f2, &f3)));
    generators.push(("F3F1-qF1F3", rel(&f3, &f1)));
    for (name, g) in generators {
        let img = braided_symmetrizer(&g, bound);
        let passed = matches!(&img, Ok(x) if x.is_zero());
        report.push(CheckEntry::new(
            format!("ideal-generator {name} p={p}"),
            "symmetrizer kernel",
            passed,
            match img {
                Ok(x) if x.is_zero() => "symmetrizer image is zero".to_string(),
                Ok(x) => format!("symmetrizer image {x:?}"),
                Err(e) => e.to_string(),
            },
        ));
    }

    let b = |x| NicholsElem::basis(p, x);
    let q = NicholsElem::unit(p).scale(&q);
    let lhs = b(PbwIndex::F2).mul_concat(&b(PbwIndex::F3)).unwrap();
    let rhs = q.mul_concat(&b(PbwIndex::F3).mul_concat(&b(PbwIndex::F2)).unwrap()).unwrap();
    report.push(CheckEntry::new(
        format!("F2F3=qF3F2 p={p}"),
        "PBW multiplication table",
        lhs == rhs,
        format!("{lhs:?} vs {rhs:?}"),
    ));
    let lhs = b(PbwIndex::F3).mul_concat(&b(PbwIndex::F1)).unwrap();
    let rhs = q.mul_concat(&b(PbwIndex::F1).mul_concat(&b(PbwIndex::F3)).unwrap()).unwrap();
    report.push(CheckEntry::new(
        format!("F3F1=qF1F3 p={p}"),
        "PBW multiplication table",
        lhs == rhs,
        format!("{lhs:?} vs {rhs:?}"),
    ));
    for (name, x) in [("F1", PbwIndex::F1), ("F3", PbwIndex::F3), ("F2", PbwIndex::F2)] {
        let below = b(x).pow_concat(p - 1);
        let at = b(x).pow_concat(p);
        report.push(CheckEntry::new(
            format!("nilpotency {name}^p=0 p={p}"),
            "PBW multiplication table",
            at.is_zero() && !below.is_zero(),
            format!("{name}^(p-1) nonzero: {}, {name}^p zero: {}", !below.is_zero(), at.is_zero()),
        ));
    }
    report
}

/// Everything above for one `p`; the oracle is built with grade `bound`.
pub fn verify_all(p: u32, bound: usize, samples: usize, seed: u64) -> CheckReport {
    let mut report = CheckReport::new();
    match TensorOracle::new(p, bound) {
        Ok(oracle) => {
            report.push(oracle_equivalence(&oracle));
            report.push(coproduct_matches_deconcat(&oracle));
        }
        Err(e) => report.push(CheckEntry::new("oracle", "symmetrizer images", false, e.to_string())),
    }
    report.push(truncation_is_automatic(p));
    report.push(product_isomorphism(p));
    for e in associativity(p, samples, seed) {
        report.push(e);
    }
    report.push(coassociativity(p));
    report.push(counit_axioms(p));
    report.push(coproduct_low_terms(p));
    report.push(coproduct_homomorphism(p));
    report.push(antipode_axioms(p));
    report.push(antipode_closed_form(p));
    report.extend(serre_check(p));
    report
}
