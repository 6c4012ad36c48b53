//! Exact arithmetic helpers shared by every module.
//!
//! Counts are `BigUint`, probabilities and average degrees are `BigRational`.
//! Both serialize as decimal strings (`"72"`, `"35/4"`) so JSON reports stay
//! exact and stable.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// `p/q` as a rational.
pub fn ratio(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    BigRational::from_integer(BigInt::from(p))
}

pub fn from_usize(p: usize) -> Rational {
    BigRational::from_integer(BigInt::from(p))
}

pub fn from_biguint(p: &BigUint) -> Rational {
    BigRational::from_integer(BigInt::from(p.clone()))
}

/// Lossy conversion used only where logs are taken.
pub fn to_f64(r: &Rational) -> f64 {
    if let Some(x) = r.to_f64() {
        if x.is_finite() && (x != 0.0 || r.is_zero()) {
            return x;
        }
    }
    // Very large or very small magnitudes: go through logs of the parts.
    let sign = if r.is_negative() { -1.0 } else { 1.0 };
    (ln_bigint(r.numer().abs()) - ln_bigint(r.denom().clone())).exp() * sign
}

/// Natural log of a positive rational, accurate even when the numerator or
/// denominator overflow `f64`.
pub fn ln(r: &Rational) -> f64 {
    debug_assert!(r.is_positive());
    ln_bigint(r.numer().clone()) - ln_bigint(r.denom().clone())
}

fn ln_bigint(x: BigInt) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top: BigInt = &x >> shift;
    top.to_f64().unwrap().ln() + (shift as f64) * std::f64::consts::LN_2
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

pub mod biguint_str {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

pub mod rational_str {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

pub mod opt_rational_str {
    use num_rational::BigRational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(x: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_str(&x.to_string()),
            None => s.serialize_none(),
        }
    }
}
