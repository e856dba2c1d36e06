//! Closed-form L²-Betti numbers and L²-Euler characteristics of
//! right-angled Artin groups and of kernels of their characters, and the
//! fibering criterion for rational characters.

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::character::Character;
use crate::complex::FlagComplex;
use crate::error::{Error, Result};
use crate::homology::{euler_raag, reduced_betti};
use crate::rational::{q, Q};

/// Default number of degrees worth reporting: top clique dimension + 1.
pub fn default_max_degree(l: &FlagComplex) -> Result<usize> {
    Ok(l.f_vector()?.len())
}

/// `b_i^{(2)}(A_L) = b̄_{i-1}(L)` for `0 ≤ i ≤ max_i`.
pub fn l2_betti_group(l: &FlagComplex, max_i: usize) -> Result<Vec<Q>> {
    let betti = reduced_betti(l)?;
    Ok((0..=max_i)
        .map(|i| q(betti.get(i as isize - 1) as i64))
        .collect())
}

/// `b_i^{(2)}(ker φ) = Σ_v |φ(v)| · b̄_{i-1}(Lk v)` for an epimorphism φ.
pub fn l2_betti_kernel(l: &FlagComplex, phi: &Character, max_i: usize) -> Result<Vec<Q>> {
    phi.require_epimorphism()?;
    let values = phi.aligned(l)?;
    let mut out = vec![Q::zero(); max_i + 1];
    for (v, value) in values.iter().enumerate() {
        if value.is_zero() {
            continue;
        }
        let betti = reduced_betti(&l.link_indices(v))?;
        for (i, slot) in out.iter_mut().enumerate() {
            *slot += value.abs() * q(betti.get(i as isize - 1) as i64);
        }
    }
    Ok(out)
}

/// `χ^{(2)}(ker φ) = Σ_v |φ(v)| · χ(A_{Lk v})` for an epimorphism φ.
pub fn l2_euler_kernel(l: &FlagComplex, phi: &Character) -> Result<Q> {
    phi.require_epimorphism()?;
    let values = phi.aligned(l)?;
    let mut total = Q::zero();
    for (v, value) in values.iter().enumerate() {
        if value.is_zero() {
            continue;
        }
        total += value.abs() * q(euler_raag(&l.link_indices(v))?);
    }
    Ok(total)
}

/// The same quantity as [`l2_euler_kernel`], computed from the reduced
/// homology of each link instead of from its clique counts.
pub fn l2_euler_kernel_via_betti(l: &FlagComplex, phi: &Character) -> Result<Q> {
    phi.require_epimorphism()?;
    let values = phi.aligned(l)?;
    let mut total = Q::zero();
    for (v, value) in values.iter().enumerate() {
        if value.is_zero() {
            continue;
        }
        // χ(A_K) = 1 - χ(K) = -Σ_d (-1)^d b̄_d(K)
        let chi_group = -reduced_betti(&l.link_indices(v))?.alternating_sum();
        total += value.abs() * q(chi_group);
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberingReport {
    pub fibered: bool,
    pub living: FlagComplex,
    pub connected: bool,
    pub dominating: bool,
}

impl Serialize for FiberingReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FiberingReport", 4)?;
        st.serialize_field("connected", &self.connected)?;
        st.serialize_field("dominating", &self.dominating)?;
        st.serialize_field("fibered", &self.fibered)?;
        st.serialize_field("living", &self.living.to_json())?;
        st.end()
    }
}

/// Indices of vertices where φ is nonzero.
pub(crate) fn living_indices(values: &[Q]) -> Vec<usize> {
    values
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, _)| i)
        .collect()
}

/// The kernel of a rational character is finitely generated iff its living
/// subcomplex is connected and dominating.
pub fn is_fibered(l: &FlagComplex, phi: &Character) -> Result<FiberingReport> {
    let values = phi.aligned(l)?;
    if phi.is_zero() {
        return Err(Error::ZeroCharacter);
    }
    let alive = living_indices(&values);
    let living = l.induced_indices(&alive);
    let connected = living.is_connected();
    let mut near = vec![false; l.vertex_count()];
    for &v in &alive {
        near[v] = true;
        for &w in l.neighbors(v) {
            near[w] = true;
        }
    }
    let dominating = near.iter().all(|&b| b);
    Ok(FiberingReport {
        fibered: connected && dominating,
        living,
        connected,
        dominating,
    })
}
