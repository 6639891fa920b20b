//! Exact rational helpers and serde adapters that render rationals as
//! `"p/q"` strings (integers as `"p"`).

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn q(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn qi(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn from_biguint(value: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(value.clone()))
}

pub fn to_string(value: &Rational) -> String {
    value.to_string()
}

pub fn parse(s: &str) -> Result<Rational, crate::Error> {
    s.trim()
        .parse::<Rational>()
        .map_err(|e| crate::Error::Parse(format!("bad rational {s:?}: {e}")))
}

pub fn abs(value: &Rational) -> Rational {
    value.abs()
}

/// Exact integer value if the rational is integral.
pub fn as_integer(value: &Rational) -> Option<BigInt> {
    value.is_integer().then(|| value.to_integer())
}

pub fn is_zero(value: &Rational) -> bool {
    value.is_zero()
}

pub fn one() -> Rational {
    Rational::one()
}

pub mod as_str {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = String::deserialize(d)?;
        super::parse(&raw).map_err(serde::de::Error::custom)
    }
}

pub mod opt_as_str {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match value {
            Some(v) => s.serialize_some(&v.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let raw = Option::<String>::deserialize(d)?;
        raw.map(|r| super::parse(&r).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// `IndexMap<Partition, Rational>` as an ordered JSON object of strings.
pub mod map_as_str {
    use super::Rational;
    use crate::partitions::Partition;
    use indexmap::IndexMap;
    use serde::ser::SerializeMap;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        value: &IndexMap<Partition, Rational>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(value.len()))?;
        for (k, v) in value {
            map.serialize_entry(&k.to_string(), &v.to_string())?;
        }
        map.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<IndexMap<Partition, Rational>, D::Error> {
        let raw = IndexMap::<String, String>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| {
                let key = k.parse::<Partition>().map_err(serde::de::Error::custom)?;
                let val = super::parse(&v).map_err(serde::de::Error::custom)?;
                Ok((key, val))
            })
            .collect()
    }
}

/// Rational interval bounds for e^(-1/2) from the alternating Taylor series.
/// Returns `(lo, hi)` with `hi - lo <= width`.
pub fn exp_neg_half_bounds(width: &Rational) -> (Rational, Rational) {
    // sum_k (-1/2)^k / k!; consecutive partial sums bracket the limit.
    let mut term = Rational::one();
    let mut sum = Rational::one();
    let half = q(-1, 2);
    let mut k = 1i64;
    loop {
        term = term * &half / qi(k);
        let next = &sum + &term;
        let (lo, hi) = if next < sum {
            (next.clone(), sum.clone())
        } else {
            (sum.clone(), next.clone())
        };
        if &(&hi - &lo) <= width {
            return (lo, hi);
        }
        sum = next;
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_integers_without_denominator() {
        assert_eq!(to_string(&q(4, 2)), "2");
        assert_eq!(to_string(&q(-1, 6)), "-1/6");
        assert_eq!(parse("-1/6").unwrap(), q(-1, 6));
    }

    #[test]
    fn exp_bounds_bracket_float_value() {
        let (lo, hi) = exp_neg_half_bounds(&q(1, 1_000_000));
        let approx = (-0.5f64).exp();
        let lo_f = lo.numer().to_string().parse::<f64>().unwrap()
            / lo.denom().to_string().parse::<f64>().unwrap();
        let hi_f = hi.numer().to_string().parse::<f64>().unwrap()
            / hi.denom().to_string().parse::<f64>().unwrap();
        assert!(lo_f <= approx + 1e-12 && approx <= hi_f + 1e-12);
        assert!(&hi - &lo <= q(1, 1_000_000));
    }
}
