//! The zonotope subgroup of the translation-invariant polytope group on
//! `H₁(A_L; ℝ) = ℝ^{V(L)}`, the L²-polytope of a one-ended coherent
//! right-angled Artin group, and the Thurston semi-norm it induces.
//!
//! An element is a finite formal ℤ-combination of lattice segments
//! `[0, d]`. Parallel segments merge (`[0, 2d] = 2·[0, d]` up to
//! translation) and `[0, -d]` is a translate of `[0, d]`, so every element
//! has a unique representation with primitive, sign-normalised directions.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::character::Character;
use crate::chordal::require_chordal;
use crate::complex::FlagComplex;
use crate::error::{Error, Result};
use crate::rational::{self, q, Q};

/// A primitive lattice direction whose first nonzero coordinate is positive.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Direction(Vec<i64>);

impl Direction {
    /// Splits `v` as `m · d` with `d` canonical and `m > 0`; `None` for zero.
    pub fn canonicalize(v: &[i64]) -> Option<(Direction, i64)> {
        let g = v.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        if g == 0 {
            return None;
        }
        let sign = v.iter().find(|&&x| x != 0).map_or(1, |&x| x.signum());
        let d = v.iter().map(|&x| sign * x / g).collect();
        Some((Direction(d), g))
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// Pairing with a character given in ambient coordinate order.
    pub fn pair(&self, phi: &[Q]) -> Q {
        self.0
            .iter()
            .zip(phi)
            .filter(|(&c, _)| c != 0)
            .map(|(&c, p)| q(c) * p)
            .sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZonotopeElement {
    ambient: Vec<String>,
    coeffs: BTreeMap<Direction, i64>,
}

impl ZonotopeElement {
    /// The neutral element (a point).
    pub fn neutral(ambient: Vec<String>) -> Self {
        ZonotopeElement {
            ambient,
            coeffs: BTreeMap::new(),
        }
    }

    /// `coeff · [0, dir]`.
    pub fn segment(ambient: Vec<String>, dir: &[i64], coeff: i64) -> Result<Self> {
        if dir.len() != ambient.len() {
            return Err(Error::AmbientMismatch);
        }
        let mut z = Self::neutral(ambient);
        z.add_generator(dir, coeff);
        Ok(z)
    }

    /// Segment `[0, e_v]` along a standard generator.
    pub fn unit_segment(ambient: Vec<String>, vertex: &str) -> Result<Self> {
        let pos = ambient
            .iter()
            .position(|n| n == vertex)
            .ok_or_else(|| Error::UnknownVertex(vertex.to_string()))?;
        let mut dir = vec![0; ambient.len()];
        dir[pos] = 1;
        Self::segment(ambient, &dir, 1)
    }

    fn add_generator(&mut self, dir: &[i64], coeff: i64) {
        let Some((d, m)) = Direction::canonicalize(dir) else {
            return;
        };
        let entry = self.coeffs.entry(d.clone()).or_insert(0);
        *entry += coeff * m;
        if *entry == 0 {
            self.coeffs.remove(&d);
        }
    }

    pub fn ambient(&self) -> &[String] {
        &self.ambient
    }

    pub fn generators(&self) -> impl Iterator<Item = (&Direction, i64)> {
        self.coeffs.iter().map(|(d, &c)| (d, c))
    }

    pub fn is_neutral(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Minkowski sum, extended to formal differences.
    pub fn combine(&self, other: &Self) -> Result<Self> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        let mut out = self.clone();
        for (d, &c) in &other.coeffs {
            out.add_generator(&d.0, c);
        }
        Ok(out)
    }

    pub fn negate(&self) -> Self {
        ZonotopeElement {
            ambient: self.ambient.clone(),
            coeffs: self.coeffs.iter().map(|(d, &c)| (d.clone(), -c)).collect(),
        }
    }

    /// An honest zonotope rather than a formal difference.
    pub fn is_single(&self) -> bool {
        self.coeffs.values().all(|&c| c >= 0)
    }

    /// Width along φ: `Σ_d coeff_d · |φ(d)|`.
    pub fn thickness(&self, phi: &Character) -> Result<Q> {
        let values = self.character_values(phi)?;
        Ok(self
            .coeffs
            .iter()
            .map(|(d, &c)| q(c) * d.pair(&values).abs())
            .sum())
    }

    fn character_values(&self, phi: &Character) -> Result<Vec<Q>> {
        if phi.values().len() != self.ambient.len() {
            return Err(Error::AmbientMismatch);
        }
        self.ambient
            .iter()
            .map(|n| phi.get(n).cloned().ok_or(Error::AmbientMismatch))
            .collect()
    }

    /// `{"ambient":[...],"generators":[{"dir":[...],"coeff":c},...]}`.
    pub fn to_json(&self) -> Value {
        let gens: Vec<Value> = self
            .coeffs
            .iter()
            .map(|(d, c)| json!({ "dir": d.0, "coeff": c }))
            .collect();
        json!({ "ambient": self.ambient, "generators": gens })
    }

    /// Reads the JSON form. Without an `ambient` field the coordinates are
    /// named `x0, x1, ...`.
    pub fn from_json(doc: &Value) -> Result<Self> {
        let gens = doc
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::parse("generators", "missing or not an array"))?;
        let mut parsed = Vec::with_capacity(gens.len());
        for (i, g) in gens.iter().enumerate() {
            let loc = format!("generators[{i}]");
            let dir: Vec<i64> = g
                .get("dir")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::parse(&loc, "missing dir"))?
                .iter()
                .map(|x| {
                    x.as_i64()
                        .ok_or_else(|| Error::parse(&loc, "dir entries must be integers"))
                })
                .collect::<Result<_>>()?;
            let coeff = g
                .get("coeff")
                .and_then(Value::as_i64)
                .ok_or_else(|| Error::parse(&loc, "coeff must be an integer"))?;
            parsed.push((loc, dir, coeff));
        }
        let ambient: Vec<String> = match doc.get("ambient") {
            Some(a) => a
                .as_array()
                .ok_or_else(|| Error::parse("ambient", "not an array"))?
                .iter()
                .map(|x| {
                    x.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| Error::parse("ambient", "entries must be strings"))
                })
                .collect::<Result<_>>()?,
            None => {
                let dim = parsed.first().map_or(0, |(_, d, _)| d.len());
                (0..dim).map(|i| format!("x{i}")).collect()
            }
        };
        let mut z = Self::neutral(ambient);
        for (loc, dir, coeff) in parsed {
            if dir.len() != z.ambient.len() {
                return Err(Error::parse(loc, "dir has the wrong dimension"));
            }
            z.add_generator(&dir, coeff);
        }
        Ok(z)
    }
}

/// Checks the one-ended coherent case: connected, chordal, ≥ 2 vertices.
pub fn require_one_ended_coherent(l: &FlagComplex) -> Result<()> {
    if l.vertex_count() < 2 {
        return Err(Error::Singleton);
    }
    if !l.is_connected() {
        return Err(Error::Disconnected);
    }
    require_chordal(l)
}

/// Cut ranks of all vertices, in vertex order.
pub fn cut_ranks(l: &FlagComplex) -> Result<Vec<usize>> {
    (0..l.vertex_count()).map(|v| l.cut_rank_index(v)).collect()
}

/// `Σ_v cut_L(v) · [0, e_v]`.
pub fn l2_polytope(l: &FlagComplex) -> Result<ZonotopeElement> {
    require_one_ended_coherent(l)?;
    let n = l.vertex_count();
    let mut z = ZonotopeElement::neutral(l.names().to_vec());
    for (v, rank) in cut_ranks(l)?.into_iter().enumerate() {
        let mut dir = vec![0; n];
        dir[v] = 1;
        z.add_generator(&dir, rank as i64);
    }
    Ok(z)
}

/// Thickness of the L²-polytope along φ.
pub fn thurston_norm(l: &FlagComplex, phi: &Character) -> Result<Q> {
    phi.aligned(l)?;
    l2_polytope(l)?.thickness(phi)
}

/// Floating-point evaluation of the same closed form for real characters,
/// accurate to an absolute tolerance of 1e-12 for moderate inputs.
pub fn thurston_norm_real(l: &FlagComplex, phi: &BTreeMap<String, f64>) -> Result<f64> {
    require_one_ended_coherent(l)?;
    if phi.len() != l.vertex_count() {
        return Err(Error::CharacterDomain("value count does not match".into()));
    }
    let mut total = 0.0;
    for (v, rank) in cut_ranks(l)?.into_iter().enumerate() {
        let value = phi
            .get(l.name(v))
            .ok_or_else(|| Error::CharacterDomain(format!("no value for `{}`", l.name(v))))?;
        if !value.is_finite() {
            return Err(Error::Precondition(
                "character values must be finite".into(),
            ));
        }
        total += rank as f64 * value.abs();
    }
    Ok(total)
}

/// Unit ball `{φ : Σ_v w_v |φ_v| ≤ 1}` of the Thurston semi-norm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormBall {
    pub vertex_names: Vec<String>,
    pub weights: BTreeMap<String, usize>,
    /// Points `±e_v / w_v` for `w_v > 0`, in coordinates of `vertex_names`.
    pub bounded_vertices: Vec<Vec<Q>>,
    /// `e_v` for `w_v = 0`.
    pub lineality_basis: Vec<Vec<i64>>,
}

impl NormBall {
    /// No bounded directions: the ball is all of `H¹(A_L; ℝ)`.
    pub fn is_whole_space(&self) -> bool {
        self.bounded_vertices.is_empty()
    }

    pub fn contains(&self, phi: &Character) -> Result<bool> {
        let mut norm = Q::zero();
        for name in &self.vertex_names {
            let value = phi
                .get(name)
                .ok_or_else(|| Error::CharacterDomain(format!("no value for `{name}`")))?;
            norm += q(self.weights[name] as i64) * value.abs();
        }
        Ok(norm <= q(1))
    }

    pub fn to_json(&self) -> Value {
        let weights: serde_json::Map<String, Value> = self
            .weights
            .iter()
            .map(|(k, &w)| (k.clone(), json!(w)))
            .collect();
        let vertices: Vec<Value> = self
            .bounded_vertices
            .iter()
            .map(|p| Value::Array(p.iter().map(rational::q_to_json).collect()))
            .collect();
        json!({
            "coordinates": self.vertex_names,
            "weights": weights,
            "vertices": vertices,
            "lineality": self.lineality_basis,
        })
    }
}

pub fn norm_ball(l: &FlagComplex) -> Result<NormBall> {
    require_one_ended_coherent(l)?;
    let n = l.vertex_count();
    let ranks = cut_ranks(l)?;
    let mut bounded = Vec::new();
    let mut lineality = Vec::new();
    for (v, &w) in ranks.iter().enumerate() {
        if w == 0 {
            let mut e = vec![0; n];
            e[v] = 1;
            lineality.push(e);
        } else {
            for sign in [1, -1] {
                let mut p = vec![Q::zero(); n];
                p[v] = rational::q_ratio(sign, w as i64);
                bounded.push(p);
            }
        }
    }
    Ok(NormBall {
        vertex_names: l.names().to_vec(),
        weights: l.names().iter().cloned().zip(ranks).collect(),
        bounded_vertices: bounded,
        lineality_basis: lineality,
    })
}
