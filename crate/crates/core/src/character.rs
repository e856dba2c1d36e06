//! Characters `A_L → ℝ` given by rational values on standard generators.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{Map, Value};

use crate::complex::FlagComplex;
use crate::error::{Error, Result};
use crate::rational::{self, gcd_all, is_integer, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    values: BTreeMap<String, Q>,
}

impl Character {
    pub fn new(values: BTreeMap<String, Q>) -> Self {
        Character { values }
    }

    /// Character on `l` with the given values in vertex order.
    pub fn from_values(l: &FlagComplex, values: &[Q]) -> Result<Self> {
        if values.len() != l.vertex_count() {
            return Err(Error::CharacterDomain(format!(
                "{} values for {} vertices",
                values.len(),
                l.vertex_count()
            )));
        }
        Ok(Character {
            values: l
                .names()
                .iter()
                .cloned()
                .zip(values.iter().cloned())
                .collect(),
        })
    }

    pub fn from_ints(l: &FlagComplex, values: &[i64]) -> Result<Self> {
        let qs: Vec<Q> = values.iter().map(|&v| rational::q(v)).collect();
        Self::from_values(l, &qs)
    }

    /// Zero everywhere except the listed vertices.
    pub fn supported_on(l: &FlagComplex, values: &[(&str, i64)]) -> Result<Self> {
        let mut out = vec![Q::zero(); l.vertex_count()];
        for &(name, v) in values {
            out[l.index_of(name)?] = rational::q(v);
        }
        Self::from_values(l, &out)
    }

    pub fn values(&self) -> &BTreeMap<String, Q> {
        &self.values
    }

    pub fn get(&self, vertex: &str) -> Option<&Q> {
        self.values.get(vertex)
    }

    /// Values in the vertex order of `l`; the domain must be exactly `V(l)`.
    pub fn aligned(&self, l: &FlagComplex) -> Result<Vec<Q>> {
        if self.values.len() != l.vertex_count() {
            return Err(Error::CharacterDomain(format!(
                "character has {} values, complex has {} vertices",
                self.values.len(),
                l.vertex_count()
            )));
        }
        l.names()
            .iter()
            .map(|n| {
                self.values
                    .get(n)
                    .cloned()
                    .ok_or_else(|| Error::CharacterDomain(format!("no value for vertex `{n}`")))
            })
            .collect()
    }

    /// The restriction to the vertices of a subcomplex.
    pub fn restrict(&self, sub: &FlagComplex) -> Result<Character> {
        let values = sub
            .names()
            .iter()
            .map(|n| {
                self.values
                    .get(n)
                    .map(|v| (n.clone(), v.clone()))
                    .ok_or_else(|| Error::CharacterDomain(format!("no value for vertex `{n}`")))
            })
            .collect::<Result<_>>()?;
        Ok(Character { values })
    }

    pub fn is_zero(&self) -> bool {
        self.values.values().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.values.values().all(is_integer)
    }

    /// gcd of the absolute values; `None` unless integral.
    pub fn gcd(&self) -> Option<BigInt> {
        if !self.is_integral() {
            return None;
        }
        let ints: Vec<BigInt> = self.values.values().map(|v| v.to_integer()).collect();
        Some(gcd_all(&ints))
    }

    /// Integral with gcd one, i.e. an epimorphism onto ℤ.
    pub fn is_primitive(&self) -> bool {
        self.gcd().is_some_and(|g| g.is_one())
    }

    pub fn scale(&self, k: &Q) -> Character {
        Character {
            values: self
                .values
                .iter()
                .map(|(n, v)| (n.clone(), v * k))
                .collect(),
        }
    }

    pub fn add(&self, other: &Character) -> Result<Character> {
        if self.values.len() != other.values.len()
            || self
                .values
                .keys()
                .zip(other.values.keys())
                .any(|(a, b)| a != b)
        {
            return Err(Error::CharacterDomain(
                "characters on different vertex sets".into(),
            ));
        }
        Ok(Character {
            values: self
                .values
                .iter()
                .zip(other.values.values())
                .map(|((n, a), b)| (n.clone(), a + b))
                .collect(),
        })
    }

    /// Splits a nonzero integral character as `gcd · primitive`.
    pub fn primitive_part(&self) -> Result<(Character, BigInt)> {
        let g = self.gcd().ok_or(Error::NonIntegral)?;
        if g.is_zero() {
            return Err(Error::ZeroCharacter);
        }
        Ok((self.scale(&Q::from_integer(g.clone()).recip()), g))
    }

    /// Requires an integral, primitive, nonzero character.
    pub fn require_epimorphism(&self) -> Result<()> {
        self.require_integral_nonzero()?;
        let g = self.gcd().expect("integral");
        if !g.is_one() {
            return Err(Error::NonPrimitive { gcd: g.to_string() });
        }
        Ok(())
    }

    pub fn require_integral_nonzero(&self) -> Result<()> {
        if !self.is_integral() {
            return Err(Error::NonIntegral);
        }
        if self.is_zero() {
            return Err(Error::ZeroCharacter);
        }
        Ok(())
    }

    /// `{"values":{"a":"1","b":"-1/2",...}}`, keys sorted.
    pub fn to_json(&self) -> Value {
        let map: Map<String, Value> = self
            .values
            .iter()
            .map(|(k, v)| (k.clone(), rational::q_to_json(v)))
            .collect();
        serde_json::json!({ "values": map })
    }

    pub fn max_abs(&self) -> Q {
        self.values
            .values()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(Q::zero)
    }
}

pub fn character_from_json(doc: &Value) -> Result<Character> {
    let values = doc
        .get("values")
        .and_then(Value::as_object)
        .ok_or_else(|| Error::parse("values", "missing or not an object"))?;
    let mut out = BTreeMap::new();
    for (k, v) in values {
        out.insert(k.clone(), rational::q_from_json(v, &format!("values.{k}"))?);
    }
    Ok(Character::new(out))
}

/// Parses the character JSON document.
pub fn parse_character(text: &str) -> Result<Character> {
    let doc: Value = serde_json::from_str(text).map_err(|e| {
        Error::parse(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    character_from_json(&doc)
}
