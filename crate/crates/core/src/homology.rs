//! Reduced rational homology of flag complexes.
//!
//! Simplices are sorted vertex tuples; the boundary of `(v0, ..., vd)`
//! has sign `(-1)^i` on the face omitting `vi`. Ranks are computed by
//! fraction-free elimination over the integers, which gives the rank over ℚ.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::complex::FlagComplex;
use crate::error::Result;

/// Reduced Betti numbers `b̄_d` for `d = -1, 0, ..., top_dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedBettiVector {
    /// `betti[0]` is dimension −1.
    pub betti: Vec<usize>,
    /// Largest simplex dimension, −1 for the empty complex.
    pub top_dim: isize,
}

impl ReducedBettiVector {
    /// `b̄_d`; zero outside the stored range.
    pub fn get(&self, dim: isize) -> usize {
        if dim < -1 {
            return 0;
        }
        self.betti.get((dim + 1) as usize).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.betti.iter().all(|&b| b == 0)
    }

    /// `Σ_d (-1)^d b̄_d`, which equals `χ(L) - 1`.
    pub fn alternating_sum(&self) -> i64 {
        self.betti
            .iter()
            .enumerate()
            .map(|(i, &b)| {
                let d = i as i64 - 1;
                if d.rem_euclid(2) == 0 {
                    b as i64
                } else {
                    -(b as i64)
                }
            })
            .sum()
    }
}

impl Serialize for ReducedBettiVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let keyed: BTreeMap<String, usize> = self
            .betti
            .iter()
            .enumerate()
            .map(|(i, &b)| ((i as isize - 1).to_string(), b))
            .collect();
        let mut st = s.serialize_struct("ReducedBettiVector", 2)?;
        st.serialize_field("betti", &keyed)?;
        st.serialize_field("top_dim", &self.top_dim)?;
        st.end()
    }
}

/// Chain-level data: simplex counts and boundary ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSummary {
    /// `f[d + 1]` = number of `d`-simplices, starting from the empty simplex.
    pub f: Vec<usize>,
    /// `ranks[d + 1]` = rank of `∂_d : C_d → C_{d-1}`, with `∂_{-1} = 0` and
    /// `∂_0` the augmentation.
    pub ranks: Vec<usize>,
}

/// Rank over ℚ of an integer matrix given as sparse rows.
pub fn sparse_rank(rows: Vec<BTreeMap<usize, BigInt>>) -> usize {
    let mut pivots: HashMap<usize, BTreeMap<usize, BigInt>> = HashMap::new();
    for mut row in rows {
        while let Some((&lead, _)) = row.iter().next() {
            let Some(pivot) = pivots.get(&lead) else {
                pivots.insert(lead, row);
                break;
            };
            let p = pivot[&lead].clone();
            let a = row[&lead].clone();
            // row <- p*row - a*pivot, then strip the content.
            for v in row.values_mut() {
                *v *= &p;
            }
            for (&c, pv) in pivot {
                let entry = row.entry(c).or_insert_with(BigInt::zero);
                *entry -= &a * pv;
            }
            row.retain(|_, v| !v.is_zero());
            let content = row.values().fold(BigInt::zero(), |g, v| g.gcd(v));
            if !content.is_zero() && content.abs() != BigInt::from(1) {
                for v in row.values_mut() {
                    *v /= &content;
                }
            }
        }
    }
    pivots.len()
}

pub fn chain_summary(l: &FlagComplex) -> Result<ChainSummary> {
    let simplices = l.simplices_by_dim()?;
    let mut f = vec![1];
    f.extend(simplices.iter().map(Vec::len));
    let mut ranks = vec![0];
    ranks.push(if l.is_empty() { 0 } else { 1 });
    for d in 1..simplices.len() {
        let faces: HashMap<&[usize], usize> = simplices[d - 1]
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_slice(), i))
            .collect();
        let rows = simplices[d]
            .iter()
            .map(|s| {
                let mut row = BTreeMap::new();
                let mut face = Vec::with_capacity(d);
                for omit in 0..=d {
                    face.clear();
                    face.extend(
                        s.iter()
                            .enumerate()
                            .filter(|&(i, _)| i != omit)
                            .map(|(_, &v)| v),
                    );
                    let sign = if omit % 2 == 0 { 1 } else { -1 };
                    row.insert(faces[face.as_slice()], BigInt::from(sign));
                }
                row
            })
            .collect();
        ranks.push(sparse_rank(rows));
    }
    Ok(ChainSummary { f, ranks })
}

/// Exact reduced Betti numbers over ℚ.
pub fn reduced_betti(l: &FlagComplex) -> Result<ReducedBettiVector> {
    let chain = chain_summary(l)?;
    let len = chain.f.len();
    let betti = (0..len)
        .map(|i| {
            let next = chain.ranks.get(i + 1).copied().unwrap_or(0);
            chain.f[i] - chain.ranks[i] - next
        })
        .collect();
    Ok(ReducedBettiVector {
        betti,
        top_dim: len as isize - 2,
    })
}

/// `χ(A_L) = 1 - χ(L)`; the trivial group for the empty complex has χ = 1.
pub fn euler_raag(l: &FlagComplex) -> Result<i64> {
    Ok(1 - l.euler_characteristic()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> FlagComplex {
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let edges: Vec<(String, String)> = (0..n)
            .map(|i| (names[i].clone(), names[(i + 1) % n].clone()))
            .collect();
        FlagComplex::new(&names, &edges).unwrap()
    }

    #[test]
    fn betti_examples() {
        let point = FlagComplex::edgeless(&["a"]).unwrap();
        assert!(reduced_betti(&point).unwrap().is_zero());
        let two = FlagComplex::edgeless(&["a", "b"]).unwrap();
        let b = reduced_betti(&two).unwrap();
        assert_eq!(b.betti, vec![0, 1]);
        let c4 = reduced_betti(&cycle(4)).unwrap();
        assert_eq!((c4.get(0), c4.get(1)), (0, 1));
        assert_eq!(c4.top_dim, 1);
        let empty = reduced_betti(&FlagComplex::empty()).unwrap();
        assert_eq!(empty.betti, vec![1]);
        assert_eq!(empty.top_dim, -1);
    }

    #[test]
    fn octahedron_is_a_two_sphere() {
        // Flag complex of K_{2,2,2}.
        let names = ["a", "a'", "b", "b'", "c", "c'"];
        let mut edges = Vec::new();
        for i in 0..6 {
            for j in i + 1..6 {
                if i / 2 != j / 2 {
                    edges.push((names[i], names[j]));
                }
            }
        }
        let l = FlagComplex::new(&names, &edges).unwrap();
        let b = reduced_betti(&l).unwrap();
        assert_eq!(b.betti, vec![0, 0, 0, 1]);
        assert_eq!(euler_raag(&l).unwrap(), 1 - 2);
    }

    #[test]
    fn euler_examples() {
        for n in 1..6 {
            let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
            let e = FlagComplex::edgeless(&names).unwrap();
            assert_eq!(euler_raag(&e).unwrap(), 1 - n as i64);
            let k = FlagComplex::simplex(&names).unwrap();
            assert_eq!(euler_raag(&k).unwrap(), 0);
        }
        let p3 = FlagComplex::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(euler_raag(&p3).unwrap(), 0);
        assert_eq!(euler_raag(&FlagComplex::empty()).unwrap(), 1);
    }

    #[test]
    fn rank_nullity_and_euler_consistency() {
        let l = cycle(6);
        let chain = chain_summary(&l).unwrap();
        let betti = reduced_betti(&l).unwrap();
        for d in 0..chain.f.len() {
            // rank + nullity = number of simplices
            let nullity = chain.f[d] - chain.ranks[d];
            assert_eq!(chain.ranks[d] + nullity, chain.f[d]);
        }
        assert_eq!(
            betti.alternating_sum(),
            l.euler_characteristic().unwrap() - 1
        );
    }

    #[test]
    fn sparse_rank_small_matrices() {
        let row = |entries: &[(usize, i64)]| {
            entries
                .iter()
                .map(|&(c, v)| (c, BigInt::from(v)))
                .collect::<BTreeMap<_, _>>()
        };
        assert_eq!(
            sparse_rank(vec![row(&[(0, 2), (1, 4)]), row(&[(0, 1), (1, 2)])]),
            1
        );
        assert_eq!(
            sparse_rank(vec![row(&[(0, 2), (1, 3)]), row(&[(0, 4), (1, 5)])]),
            2
        );
        assert_eq!(sparse_rank(vec![row(&[])]), 0);
    }

    #[test]
    fn serializes_keyed_by_dimension() {
        let two = FlagComplex::edgeless(&["a", "b"]).unwrap();
        let v = serde_json::to_value(reduced_betti(&two).unwrap()).unwrap();
        assert_eq!(v["betti"]["-1"], 0);
        assert_eq!(v["betti"]["0"], 1);
    }
}
