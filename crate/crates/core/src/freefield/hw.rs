//! Highest-weight bookkeeping: `(x, y) = (m/√p, n/√p)`, Weyl orbits and
//! the integer rules locating singular vectors.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{dimension_of_vertex, fundamental_weights, Momentum};
use crate::rational::{int, is_integer, rat, to_i64, Rational, RationalPair};

/// `x = m/√p`, `y = n/√p`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HwParams {
    pub m: Rational,
    pub n: Rational,
}

impl HwParams {
    pub fn new(m: Rational, n: Rational) -> Self {
        HwParams { m, n }
    }

    pub fn int(m: i128, n: i128) -> Self {
        HwParams::new(int(m), int(n))
    }

    /// `(m² + n² + mn)/(3p) − (p−1)²/p`.
    pub fn l0(&self, p: u32) -> Rational {
        let (m, n) = (&self.m, &self.n);
        let pi = p as i128;
        (m * m + n * n + m * n) / int(3 * pi) - rat((pi - 1) * (pi - 1), pi)
    }

    /// `(m−n)(2m+n)(m+2n)/(2p³)`.
    pub fn w0(&self, p: u32) -> Rational {
        let (m, n) = (&self.m, &self.n);
        let two = int(2);
        let pi = p as i128;
        (m - n) * (&two * m + n) * (m + &two * n) / int(2 * pi * pi * pi)
    }
}

impl fmt::Debug for HwParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})/√p", self.m, self.n)
    }
}

impl Serialize for HwParams {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [RationalPair(self.m.clone()), RationalPair(self.n.clone())].serialize(s)
    }
}

impl<'de> Deserialize<'de> for HwParams {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [m, n] = <[RationalPair; 2]>::deserialize(d)?;
        Ok(HwParams::new(m.0, n.0))
    }
}

/// Parameters of `e^{c₁φ₁ + c₂φ₂}`: `m = p − 1 + 2c₁ − c₂`, `n = p − 1 + 2c₂ − c₁`.
pub fn xy_from_momentum(p: u32, c: &Momentum) -> HwParams {
    let base = int(p as i128 - 1);
    let two = int(2);
    HwParams::new(
        &base + &two * &c.c1 - &c.c2,
        &base + &two * &c.c2 - &c.c1,
    )
}

/// The six Weyl images, identity first (duplicates kept).
pub fn weyl_images(h: &HwParams) -> [HwParams; 6] {
    let (x, y) = (&h.m, &h.n);
    let s = x + y;
    [
        h.clone(),
        HwParams::new(-x, s.clone()),
        HwParams::new(s.clone(), -y),
        HwParams::new(y.clone(), -&s),
        HwParams::new(-&s, x.clone()),
        HwParams::new(-y, -x),
    ]
}

/// Distinct elements of the Weyl orbit, in canonical order.
pub fn weyl_orbit(h: &HwParams) -> BTreeSet<HwParams> {
    weyl_images(h).into_iter().collect()
}

/// Which rule produced a singular vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    /// `x = a√p − c/√p`
    X,
    /// `y = b√p − d/√p`
    Y,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularVector {
    pub level: i64,
    pub params: HwParams,
    /// Orbit representative the rule was applied to.
    pub representative: HwParams,
    pub rule: Rule,
    /// `(a, c)` or `(b, d)`.
    pub integers: [i64; 2],
}

/// Singular vectors of level `≤ max_level` found by applying both integer
/// rules to every Weyl representative; one entry per (level, orbit of
/// the new parameters), sorted by level.
pub fn singular_vector_levels(p: u32, h: &HwParams, max_level: i64) -> Vec<SingularVector> {
    let pp = int(p as i128);
    let mut seen: BTreeSet<(i64, Vec<HwParams>)> = BTreeSet::new();
    let mut out = Vec::new();
    for rep in weyl_orbit(h) {
        for rule in [Rule::X, Rule::Y] {
            let coord = match rule {
                Rule::X => &rep.m,
                Rule::Y => &rep.n,
            };
            if !is_integer(coord) {
                continue;
            }
            for a in -max_level..=max_level {
                if a == 0 {
                    continue;
                }
                let ar = int(a as i128);
                // coord = a·p − c
                let c = &ar * &pp - coord;
                if c.is_zero() || c.is_negative() != (a < 0) {
                    continue;
                }
                let Some(level) = to_i64(&(&ar * &c)) else {
                    continue;
                };
                if level > max_level {
                    continue;
                }
                let shift = &ar * &pp;
                let params = match rule {
                    Rule::X => HwParams::new(&rep.m - &shift * int(2), &rep.n + &shift),
                    Rule::Y => HwParams::new(&rep.m + &shift, &rep.n - &shift * int(2)),
                };
                let key = (level, weyl_orbit(&params).into_iter().collect());
                if seen.insert(key) {
                    out.push(SingularVector {
                        level,
                        params,
                        representative: rep.clone(),
                        rule,
                        integers: [a, to_i64(&c).unwrap_or(0)],
                    });
                }
            }
        }
    }
    out.sort_by(|x, y| (x.level, &x.params).cmp(&(y.level, &y.params)));
    out
}

/// `Θ_{n₁,n₂}`: momentum, Virasoro dimension and highest-weight parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateField {
    pub momentum: Momentum,
    pub dimension: Rational,
    pub params: HwParams,
}

/// `μ = ((1−n₁)/p)ω₁ + ((1−n₂)/p)ω₂`.
pub fn state_field(p: u32, n1: i64, n2: i64) -> StateField {
    let (w1, w2) = fundamental_weights(p);
    let pp = p as i128;
    let momentum = w1
        .scale(&rat(1 - n1 as i128, pp))
        .add(&w2.scale(&rat(1 - n2 as i128, pp)));
    let dimension = dimension_of_vertex(p, &momentum);
    let params = xy_from_momentum(p, &momentum);
    StateField {
        momentum,
        dimension,
        params,
    }
}

/// `Δ_{n₁,n₂} = p − n₁ − n₂ + (n₁² + n₁n₂ + n₂²)/(3p) − (p−1)²/p`.
pub fn state_dimension(p: u32, n1: i64, n2: i64) -> Rational {
    let (pi, a, b) = (p as i128, n1 as i128, n2 as i128);
    int(pi - a - b) + rat(a * a + a * b + b * b, 3 * pi) - rat((pi - 1) * (pi - 1), pi)
}

/// The displayed orbit of `Θ_{n₁,n₂}` in `(m, n)` units.
pub fn state_orbit_list(p: u32, n1: i64, n2: i64) -> [HwParams; 6] {
    let (p, a, b) = (p as i128, n1 as i128, n2 as i128);
    [
        HwParams::int(p - a, p - b),
        HwParams::int(b - p, a - p),
        HwParams::int(p - b, a + b - 2 * p),
        HwParams::int(a + b - 2 * p, p - a),
        HwParams::int(a - p, 2 * p - a - b),
        HwParams::int(2 * p - a - b, b - p),
    ]
}

/// Level multiset of the reported singular vectors up to `bound`.
pub fn levels_up_to(found: &[SingularVector], bound: i64) -> Vec<i64> {
    found.iter().map(|s| s.level).filter(|l| *l <= bound).collect()
}

/// `true` when `W₀` vanishes, the value fixed by `𝕎 = e^{pφ₁+pφ₂}`.
pub fn is_w0_neutral(p: u32, h: &HwParams) -> bool {
    h.w0(p).is_zero()
}
