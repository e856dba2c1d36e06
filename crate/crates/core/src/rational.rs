//! Exact rationals and their string encoding.
//!
//! Rationals are written as `"p/q"` with `q > 0` and `gcd(p, q) = 1`, or as
//! `"p"` when the denominator is one. Integers in JSON documents are also
//! accepted on input; floating-point numbers are not.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_ratio(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn format_q(value: &Q) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn parse_q(text: &str) -> Option<Q> {
    let text = text.trim();
    match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Q::new(n, d))
            }
        }
        None => text.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

/// Reads a rational from a JSON integer or a `"p/q"` string.
pub fn q_from_json(value: &Value, location: &str) -> Result<Q> {
    match value {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(q(i))
            } else if let Some(u) = n.as_u64() {
                Ok(Q::from_integer(BigInt::from(u)))
            } else {
                Err(Error::parse(
                    location,
                    format!("inexact number {n}; write rationals as \"p/q\" strings"),
                ))
            }
        }
        Value::String(s) => {
            parse_q(s).ok_or_else(|| Error::parse(location, format!("invalid rational `{s}`")))
        }
        other => Err(Error::parse(
            location,
            format!("expected a rational, found {other}"),
        )),
    }
}

pub fn q_to_json(value: &Q) -> Value {
    Value::String(format_q(value))
}

pub fn is_integer(value: &Q) -> bool {
    value.denom().is_one()
}

/// Greatest common divisor of the absolute values of nonzero integers;
/// zero when every entry is zero.
pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(&v.abs()))
}

/// Serde adapter writing a [`Q`] as its canonical string.
pub mod serde_q {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_q(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let value = Value::deserialize(d)?;
        q_from_json(&value, "rational").map_err(de::Error::custom)
    }
}

pub mod serde_q_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(values: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(values.len()))?;
        for v in values {
            seq.serialize_element(&format_q(v))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Q>, D::Error> {
        let values = Vec::<Value>::deserialize(d)?;
        values
            .iter()
            .map(|v| q_from_json(v, "rational").map_err(de::Error::custom))
            .collect()
    }
}

pub mod serde_q_opt {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        value: &Option<Q>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        match value {
            Some(v) => s.serialize_str(&format_q(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Option<Q>, D::Error> {
        match Option::<Value>::deserialize(d)? {
            None | Some(Value::Null) => Ok(None),
            Some(v) => q_from_json(&v, "rational")
                .map(Some)
                .map_err(de::Error::custom),
        }
    }
}

pub mod serde_bigint {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        let value = Value::deserialize(d)?;
        let q = q_from_json(&value, "integer").map_err(de::Error::custom)?;
        if !is_integer(&q) {
            return Err(de::Error::custom("expected an integer"));
        }
        Ok(q.to_integer())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_strings() {
        assert_eq!(format_q(&q_ratio(6, -4)), "-3/2");
        assert_eq!(format_q(&q(7)), "7");
        assert_eq!(format_q(&q_ratio(0, 5)), "0");
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_q("-3/2"), Some(q_ratio(-3, 2)));
        assert_eq!(parse_q(" 4 / 8 "), Some(q_ratio(1, 2)));
        assert_eq!(parse_q("12"), Some(q(12)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(parse_q("x"), None);
    }

    #[test]
    fn json_rejects_floats() {
        let v: Value = serde_json::from_str("0.5").unwrap();
        assert!(q_from_json(&v, "here").is_err());
        let v: Value = serde_json::from_str("\"1/3\"").unwrap();
        assert_eq!(q_from_json(&v, "here").unwrap(), q_ratio(1, 3));
    }

    #[test]
    fn gcd_ignores_signs_and_zeros() {
        let vals: Vec<BigInt> = [0, -6, 9, 0].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(gcd_all(&vals), BigInt::from(3));
        let zeros = [BigInt::zero()];
        assert!(gcd_all(&zeros).is_zero());
    }
}
