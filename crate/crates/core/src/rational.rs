//! Exact rationals shared by every module (arbitrary precision).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Rational = BigRational;

/// Shorthand constructor; panics on a zero denominator.
pub fn rat(num: i128, den: i128) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i128) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub(crate) fn factorial(n: u32) -> Rational {
    (1..=n as i128).fold(Rational::one(), |acc, k| acc * int(k))
}

pub(crate) fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

/// Integer value, when `x` is an integer that fits in `i64`.
pub(crate) fn to_i64(x: &Rational) -> Option<i64> {
    if is_integer(x) {
        x.numer().to_i64()
    } else {
        None
    }
}

/// `[num, den]` pair with `den > 0` and `gcd(num, den) = 1`. Components that
/// do not fit in 64 bits are written as decimal strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPair(pub Rational);

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WireInt {
    Small(i64),
    Big(String),
}

impl WireInt {
    fn from_big(b: &BigInt) -> Self {
        b.to_i64().map(WireInt::Small).unwrap_or_else(|| WireInt::Big(b.to_string()))
    }

    fn into_big(self) -> Result<BigInt, String> {
        match self {
            WireInt::Small(v) => Ok(BigInt::from(v)),
            WireInt::Big(s) => s.parse().map_err(|_| format!("invalid integer {s:?}")),
        }
    }
}

impl Serialize for RationalPair {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [WireInt::from_big(self.0.numer()), WireInt::from_big(self.0.denom())].serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalPair {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [num, den] = <[WireInt; 2]>::deserialize(d)?;
        let num = num.into_big().map_err(serde::de::Error::custom)?;
        let den = den.into_big().map_err(serde::de::Error::custom)?;
        if den.is_zero() {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(RationalPair(Rational::new(num, den)))
    }
}
