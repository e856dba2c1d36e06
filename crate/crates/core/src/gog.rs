//! Graphs of groups with symbolic vertex and edge groups.
//!
//! Groups are never represented by words. Each vertex or edge group is a
//! [`GroupDescriptor`] carrying exactly the data needed for Euler
//! characteristics and first L²-Betti numbers.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::complex::FlagComplex;
use crate::error::{Error, Result};
use crate::rational::{self, q, Q};

/// Symbolic description of a subgroup of a right-angled Artin group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupDescriptor {
    Trivial,
    /// The parabolic subgroup `A_{L|S}`; `chi` is `1 - χ(L|S)`.
    Parabolic {
        vertices: Vec<String>,
        #[serde(with = "rational::serde_q")]
        chi: Q,
    },
    /// Kernel of the character restricted to the parabolic subgroup on
    /// the one-neighbourhood of a living block, whose image is `k·ℤ`.
    BlockKernel {
        block: Vec<String>,
        neighborhood: Vec<String>,
        #[serde(with = "rational::serde_bigint")]
        k: BigInt,
        #[serde(with = "rational::serde_q")]
        chi: Q,
    },
    /// Fundamental group of a finite tree of groups, obtained by
    /// collapsing tree edges: `pieces` are the vertex groups, `joins` the
    /// edge groups.
    Amalgam {
        pieces: Vec<GroupDescriptor>,
        joins: Vec<GroupDescriptor>,
    },
}

impl GroupDescriptor {
    /// Parabolic descriptor for the named vertices of `l`.
    pub fn parabolic(l: &FlagComplex, vertices: &[usize]) -> Result<Self> {
        let sub = l.induced_indices(vertices);
        Ok(GroupDescriptor::Parabolic {
            vertices: sub.names().to_vec(),
            chi: q(1 - sub.euler_characteristic()?),
        })
    }

    pub fn euler(&self) -> Q {
        match self {
            GroupDescriptor::Trivial => Q::one(),
            GroupDescriptor::Parabolic { chi, .. } | GroupDescriptor::BlockKernel { chi, .. } => {
                chi.clone()
            }
            GroupDescriptor::Amalgam { pieces, joins } => {
                let p: Q = pieces.iter().map(GroupDescriptor::euler).sum();
                let j: Q = joins.iter().map(GroupDescriptor::euler).sum();
                p - j
            }
        }
    }

    pub fn is_trivial(&self) -> bool {
        match self {
            GroupDescriptor::Trivial => true,
            GroupDescriptor::Parabolic { vertices, .. } => vertices.is_empty(),
            // An isolated living vertex: the kernel inside ℤ is trivial.
            GroupDescriptor::BlockKernel { neighborhood, .. } => neighborhood.len() <= 1,
            GroupDescriptor::Amalgam { pieces, .. } => pieces.iter().all(Self::is_trivial),
        }
    }

    /// First L²-Betti number, `b₀ - χ`. Valid for subgroups of coherent
    /// right-angled Artin groups, whose L²-homology sits in degrees 0 and 1.
    pub fn l2_betti1(&self) -> Q {
        let b0 = if self.is_trivial() {
            Q::one()
        } else {
            Q::zero()
        };
        b0 - self.euler()
    }
}

/// How an edge group sits inside its endpoint groups.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Inclusion {
    /// Parabolic inclusions induced by vertex-set containment.
    Containment,
    /// An inclusion recorded only by description.
    Symbolic { note: String },
}

/// A positive edge. Its reverse is implicit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GogEdge {
    pub source: usize,
    pub target: usize,
    pub group: GroupDescriptor,
    pub inclusion: Inclusion,
}

impl GogEdge {
    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

/// An oriented edge; positive edge `i` gives oriented edges `2i` and `2i + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrientedEdge {
    pub id: usize,
    pub positive: usize,
    pub origin: usize,
    pub terminus: usize,
}

impl OrientedEdge {
    pub fn reverse_id(&self) -> usize {
        self.id ^ 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphOfGroups {
    pub vertices: Vec<GroupDescriptor>,
    pub edges: Vec<GogEdge>,
    /// Indices of positive edges forming a spanning tree.
    pub spanning_tree: Vec<usize>,
    /// φ-value of the stable letter of each non-tree positive edge.
    #[serde(with = "stable_letter_map")]
    pub stable_letters: BTreeMap<usize, Q>,
}

mod stable_letter_map {
    use super::*;
    use serde::{de, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<usize, Q>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(map.len()))?;
        for (k, v) in map {
            m.serialize_entry(&k.to_string(), &rational::format_q(v))?;
        }
        m.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BTreeMap<usize, Q>, D::Error> {
        let raw = BTreeMap::<String, serde_json::Value>::deserialize(d)?;
        raw.into_iter()
            .map(|(k, v)| {
                let idx = k.parse::<usize>().map_err(de::Error::custom)?;
                let val = rational::q_from_json(&v, "stable_letters").map_err(de::Error::custom)?;
                Ok((idx, val))
            })
            .collect()
    }
}

impl GraphOfGroups {
    pub fn single_vertex(group: GroupDescriptor) -> Self {
        GraphOfGroups {
            vertices: vec![group],
            edges: Vec::new(),
            spanning_tree: Vec::new(),
            stable_letters: BTreeMap::new(),
        }
    }

    /// Both orientations of every positive edge; the involution swaps
    /// `2i` and `2i + 1` and so has no fixed points.
    pub fn oriented_edges(&self) -> Vec<OrientedEdge> {
        let mut out = Vec::with_capacity(2 * self.edges.len());
        for (i, e) in self.edges.iter().enumerate() {
            out.push(OrientedEdge {
                id: 2 * i,
                positive: i,
                origin: e.source,
                terminus: e.target,
            });
            out.push(OrientedEdge {
                id: 2 * i + 1,
                positive: i,
                origin: e.target,
                terminus: e.source,
            });
        }
        out
    }

    pub fn is_single_vertex(&self) -> bool {
        self.vertices.len() == 1
    }

    /// Checks edge endpoints, the spanning tree and stable-letter keys.
    pub fn validate(&self) -> Result<()> {
        let n = self.vertices.len();
        if n == 0 {
            return Err(Error::Precondition(
                "graph of groups has no vertices".into(),
            ));
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.source >= n || e.target >= n {
                return Err(Error::Precondition(format!(
                    "edge {i} has an endpoint out of range"
                )));
            }
        }
        let mut tree = self.spanning_tree.clone();
        tree.sort_unstable();
        tree.dedup();
        if tree.len() != self.spanning_tree.len() || tree.len() + 1 != n {
            return Err(Error::Precondition(
                "spanning tree must have exactly |V| - 1 distinct edges".into(),
            ));
        }
        let mut dsu = Dsu::new(n);
        for &t in &tree {
            let e = self
                .edges
                .get(t)
                .ok_or_else(|| Error::Precondition(format!("tree edge {t} does not exist")))?;
            if !dsu.union(e.source, e.target) {
                return Err(Error::Precondition("spanning tree contains a cycle".into()));
            }
        }
        for &k in self.stable_letters.keys() {
            if k >= self.edges.len() || tree.binary_search(&k).is_ok() {
                return Err(Error::Precondition(format!(
                    "stable letter recorded on tree or missing edge {k}"
                )));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("graph of groups serializes")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let gog: GraphOfGroups = serde_json::from_value(value.clone())
            .map_err(|e| Error::parse("graph_of_groups", e.to_string()))?;
        gog.validate()?;
        Ok(gog)
    }
}

/// Union-find on `0..n`.
pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> GraphOfGroups {
        GraphOfGroups {
            vertices: vec![GroupDescriptor::Amalgam {
                pieces: vec![
                    GroupDescriptor::Trivial,
                    GroupDescriptor::Parabolic {
                        vertices: vec!["a".into()],
                        chi: q(0),
                    },
                ],
                joins: vec![GroupDescriptor::Trivial],
            }],
            edges: vec![GogEdge {
                source: 0,
                target: 0,
                group: GroupDescriptor::BlockKernel {
                    block: vec!["b".into()],
                    neighborhood: vec!["a".into(), "b".into()],
                    k: BigInt::from(2),
                    chi: q(-1),
                },
                inclusion: Inclusion::Symbolic {
                    note: "kernel".into(),
                },
            }],
            spanning_tree: vec![],
            stable_letters: BTreeMap::from([(0, q(2))]),
        }
    }

    #[test]
    fn json_round_trip() {
        let g = sample();
        let back = GraphOfGroups::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        let text = serde_json::to_string(&g.to_json()).unwrap();
        assert!(text.contains("\"kind\":\"block_kernel\""));
        assert!(text.contains("\"stable_letters\":{\"0\":\"2\"}"));
    }

    #[test]
    fn euler_of_descriptors() {
        let g = sample();
        assert_eq!(g.vertices[0].euler(), q(0));
        assert!(!g.vertices[0].is_trivial());
        assert_eq!(g.edges[0].group.l2_betti1(), q(1));
        assert_eq!(GroupDescriptor::Trivial.l2_betti1(), q(0));
    }

    #[test]
    fn involution_pairs_orientations() {
        let g = sample();
        let o = g.oriented_edges();
        assert_eq!(o.len(), 2);
        assert_eq!(o[0].reverse_id(), 1);
        assert_eq!(o[1].reverse_id(), 0);
        assert_ne!(o[0].id, o[0].reverse_id());
    }

    #[test]
    fn validation_rejects_bad_trees() {
        let mut g = sample();
        g.spanning_tree = vec![0];
        assert!(g.validate().is_err());
        let mut g = sample();
        g.edges[0].target = 3;
        assert!(g.validate().is_err());
    }
}
