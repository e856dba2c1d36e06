//! Single-vertex graph-of-groups splittings dual to a character.
//!
//! For a connected chordal complex the living blocks `B` (components of
//! the living subcomplex) and the components `C` of the dead part are
//! arranged in a bipartite graph with one edge per component of each
//! `N₁(B) ∩ C`. That graph is a tree. Each block node `A_{N₁(B)}` is then
//! replaced by the HNN extension of `ker φ_B` with stable letter of φ-value
//! `k_B`, and collapsing the remaining tree edges leaves a single vertex
//! with one loop per living block. Disconnected complexes are handled per
//! component and joined through a trivial hub.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::character::Character;
use crate::chordal::require_chordal;
use crate::complex::FlagComplex;
use crate::error::{Error, Result};
use crate::gog::{Dsu, GogEdge, GraphOfGroups, GroupDescriptor, Inclusion};
use crate::homology::euler_raag;
use crate::l2::living_indices;
use crate::rational::{self, gcd_all, is_integer, q, Q};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockRow {
    pub block: Vec<String>,
    pub neighborhood: Vec<String>,
    #[serde(with = "rational::serde_bigint")]
    pub k: BigInt,
    #[serde(with = "rational::serde_q")]
    pub chi: Q,
    /// `-k_B · χ(ker φ_B)`.
    #[serde(with = "rational::serde_q")]
    pub contribution: Q,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertificateEdge {
    pub block: usize,
    pub complement: usize,
    pub intersection: Vec<String>,
}

/// The bipartite block/complement graph of one connected component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreeCertificate {
    pub component: Vec<String>,
    /// Vertex sets of `N₁(B)` for each living block.
    pub block_nodes: Vec<Vec<String>>,
    /// Vertex sets of the dead components `C`.
    pub complement_nodes: Vec<Vec<String>>,
    pub edges: Vec<CertificateEdge>,
    pub is_tree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplittingReport {
    #[serde(with = "rational::serde_q")]
    pub complexity: Q,
    pub blocks: Vec<BlockRow>,
    pub tree_certificates: Vec<TreeCertificate>,
}

/// Connected components of the subcomplex induced on `set`, as sorted
/// global index lists ordered by minimal vertex.
fn components_of(l: &FlagComplex, set: &[usize]) -> Vec<Vec<usize>> {
    let mut set = set.to_vec();
    set.sort_unstable();
    set.dedup();
    l.induced_indices(&set)
        .component_indices()
        .into_iter()
        .map(|c| c.into_iter().map(|i| set[i]).collect())
        .collect()
}

fn one_neighborhood(l: &FlagComplex, block: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = block.to_vec();
    for &v in block {
        out.extend(l.neighbors(v).iter().copied());
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter()
        .copied()
        .filter(|x| b.binary_search(x).is_ok())
        .collect()
}

/// Components of the living subcomplex, by vertex name.
pub fn living_blocks(l: &FlagComplex, phi: &Character) -> Result<Vec<Vec<String>>> {
    let values = phi.aligned(l)?;
    if phi.is_zero() {
        return Err(Error::ZeroCharacter);
    }
    Ok(components_of(l, &living_indices(&values))
        .iter()
        .map(|b| l.names_of(b))
        .collect())
}

struct ComponentSplitting {
    vertex_group: GroupDescriptor,
    loops: Vec<(GroupDescriptor, BigInt)>,
    rows: Vec<BlockRow>,
    certificate: TreeCertificate,
}

fn split_component(l: &FlagComplex, comp: &[usize], values: &[Q]) -> Result<ComponentSplitting> {
    let alive: Vec<usize> = comp
        .iter()
        .copied()
        .filter(|&v| !values[v].is_zero())
        .collect();
    let dead: Vec<usize> = comp
        .iter()
        .copied()
        .filter(|&v| values[v].is_zero())
        .collect();
    let blocks = components_of(l, &alive);
    let complements = components_of(l, &dead);
    let hoods: Vec<Vec<usize>> = blocks.iter().map(|b| one_neighborhood(l, b)).collect();

    let mut cert_edges = Vec::new();
    let mut joins = Vec::new();
    for (i, hood) in hoods.iter().enumerate() {
        for (j, c) in complements.iter().enumerate() {
            for piece in components_of(l, &intersect(hood, c)) {
                joins.push(GroupDescriptor::parabolic(l, &piece)?);
                cert_edges.push((i, j, piece));
            }
        }
    }
    for i in 0..hoods.len() {
        for j in i + 1..hoods.len() {
            let meet = intersect(&hoods[i], &hoods[j]);
            if !meet.is_empty() && components_of(l, &meet).len() != 1 {
                return Err(Error::Internal(format!(
                    "one-neighbourhoods of blocks {i} and {j} meet in a disconnected set"
                )));
            }
        }
    }

    let nodes = blocks.len() + complements.len();
    let mut dsu = Dsu::new(nodes);
    let mut acyclic = true;
    for (i, j, _) in &cert_edges {
        acyclic &= dsu.union(*i, blocks.len() + j);
    }
    let connected = (0..nodes).all(|x| dsu.find(x) == dsu.find(0));
    let is_tree = acyclic && connected && cert_edges.len() + 1 == nodes;
    let certificate = TreeCertificate {
        component: l.names_of(comp),
        block_nodes: hoods.iter().map(|h| l.names_of(h)).collect(),
        complement_nodes: complements.iter().map(|c| l.names_of(c)).collect(),
        edges: cert_edges
            .iter()
            .map(|(i, j, piece)| CertificateEdge {
                block: *i,
                complement: *j,
                intersection: l.names_of(piece),
            })
            .collect(),
        is_tree,
    };
    if !is_tree {
        return Err(Error::Internal(
            "block/complement intersection graph is not a tree".into(),
        ));
    }

    let mut pieces = Vec::new();
    let mut loops = Vec::new();
    let mut rows = Vec::new();
    for (block, hood) in blocks.iter().zip(&hoods) {
        let ints: Vec<BigInt> = block.iter().map(|&v| values[v].to_integer()).collect();
        let k = gcd_all(&ints);
        let mut weighted = Q::zero();
        for &v in block {
            weighted += values[v].abs() * q(euler_raag(&l.link_indices(v))?);
        }
        let chi = weighted / Q::from_integer(k.clone());
        let kernel = GroupDescriptor::BlockKernel {
            block: l.names_of(block),
            neighborhood: l.names_of(hood),
            k: k.clone(),
            chi: chi.clone(),
        };
        rows.push(BlockRow {
            block: l.names_of(block),
            neighborhood: l.names_of(hood),
            k: k.clone(),
            contribution: -Q::from_integer(k.clone()) * &chi,
            chi,
        });
        pieces.push(kernel.clone());
        loops.push((kernel, k));
    }
    for c in &complements {
        pieces.push(GroupDescriptor::parabolic(l, c)?);
    }
    let vertex_group = if pieces.len() == 1 && joins.is_empty() {
        pieces.pop().expect("one piece")
    } else {
        GroupDescriptor::Amalgam { pieces, joins }
    };
    Ok(ComponentSplitting {
        vertex_group,
        loops,
        rows,
        certificate,
    })
}

/// Builds a single-vertex splitting of `A_L` dual to an integral character.
///
/// For connected chordal `L` and primitive φ its complexity equals the
/// splitting complexity `c(A_L; φ)`; for other inputs it is only an upper
/// bound for that infimum.
pub fn dual_splitting(
    l: &FlagComplex,
    phi: &Character,
) -> Result<(GraphOfGroups, SplittingReport)> {
    let values = phi.aligned(l)?;
    phi.require_integral_nonzero()?;
    require_chordal(l)?;

    let comps = l.component_indices();
    let mut groups = Vec::new();
    let mut loops = Vec::new();
    let mut rows = Vec::new();
    let mut certificates = Vec::new();
    for comp in &comps {
        if comp.iter().all(|&v| values[v].is_zero()) {
            groups.push(GroupDescriptor::parabolic(l, comp)?);
            continue;
        }
        let part = split_component(l, comp, &values)?;
        groups.push(part.vertex_group);
        loops.extend(part.loops);
        rows.extend(part.rows);
        certificates.push(part.certificate);
    }
    let vertex = if groups.len() == 1 {
        groups.pop().expect("one component")
    } else {
        let hubs = vec![GroupDescriptor::Trivial; groups.len()];
        let mut pieces = vec![GroupDescriptor::Trivial];
        pieces.extend(groups);
        GroupDescriptor::Amalgam {
            pieces,
            joins: hubs,
        }
    };

    let mut gog = GraphOfGroups::single_vertex(vertex);
    for (i, (kernel, k)) in loops.into_iter().enumerate() {
        gog.edges.push(GogEdge {
            source: 0,
            target: 0,
            group: kernel,
            inclusion: Inclusion::Symbolic {
                note: "both ends include the block kernel into the vertex group".into(),
            },
        });
        gog.stable_letters.insert(i, Q::from_integer(k));
    }
    let complexity = rows.iter().map(|r| r.contribution.clone()).sum();
    Ok((
        gog,
        SplittingReport {
            complexity,
            blocks: rows,
            tree_certificates: certificates,
        },
    ))
}

/// `c(X; φ) = -Σ_{e ∈ E⁺} |φ(t_e)| · χ(X_e)`, using the recorded stable
/// letters. Zero for a splitting without edges.
pub fn splitting_complexity(gog: &GraphOfGroups) -> Result<Q> {
    if !gog.is_single_vertex() {
        return Err(Error::NotSingleVertex(gog.vertices.len()));
    }
    let mut total = Q::zero();
    for (i, e) in gog.edges.iter().enumerate() {
        let t = gog
            .stable_letters
            .get(&i)
            .ok_or(Error::MissingStableLetter(i))?;
        total -= t.abs() * e.group.euler();
    }
    Ok(total)
}

/// `Σ_v χ(X_v) - Σ_{e ∈ E⁺} χ(X_e)`.
pub fn euler_check(gog: &GraphOfGroups) -> Q {
    let v: Q = gog.vertices.iter().map(GroupDescriptor::euler).sum();
    let e: Q = gog.edges.iter().map(|e| e.group.euler()).sum();
    v - e
}

/// Free-product splitting over the components: a trivial hub joined to
/// one parabolic vertex per component by trivial edges.
pub fn free_product_splitting(l: &FlagComplex) -> Result<GraphOfGroups> {
    let mut gog = GraphOfGroups::single_vertex(GroupDescriptor::Trivial);
    for (i, comp) in l.component_indices().iter().enumerate() {
        gog.vertices.push(GroupDescriptor::parabolic(l, comp)?);
        gog.edges.push(GogEdge {
            source: 0,
            target: i + 1,
            group: GroupDescriptor::Trivial,
            inclusion: Inclusion::Containment,
        });
        gog.spanning_tree.push(i);
    }
    Ok(gog)
}

/// The finite piece `Y^(k)` of the infinite cyclic cover of a single-vertex
/// splitting, spanned by the vertex lifts `v_{-k}, ..., v_k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverTruncation {
    pub level: usize,
    pub vertex_count: usize,
    /// Lifts of each positive edge present in the truncation.
    pub lifts: Vec<usize>,
    /// `(i, j, e)`: a lift of edge `e` from `v_i` to `v_j`.
    pub edges: Vec<(i64, i64, usize)>,
    pub connected: bool,
    /// `(2k + 1) · b₁(X_v)`.
    #[serde(with = "rational::serde_q")]
    pub vertex_betti_total: Q,
    /// `Σ_e k_e · b₁(X_e)`.
    #[serde(with = "rational::serde_q")]
    pub edge_betti_total: Q,
    #[serde(with = "rational::serde_q")]
    pub difference: Q,
}

/// Counts edge lifts in the level-`k` truncation of the cyclic cover.
///
/// Requires a single vertex, integral nonzero stable letters on every edge
/// and gcd of their absolute values equal to one.
pub fn cyclic_cover_truncation(gog: &GraphOfGroups, level: usize) -> Result<CoverTruncation> {
    if !gog.is_single_vertex() {
        return Err(Error::NotSingleVertex(gog.vertices.len()));
    }
    let mut steps = Vec::with_capacity(gog.edges.len());
    for i in 0..gog.edges.len() {
        let t = gog
            .stable_letters
            .get(&i)
            .ok_or(Error::MissingStableLetter(i))?;
        if !is_integer(t) || t.is_zero() {
            return Err(Error::Precondition(format!(
                "stable letter of edge {i} must be a nonzero integer"
            )));
        }
        steps.push(t.to_integer());
    }
    if !gcd_all(&steps).is_one() {
        return Err(Error::Precondition(
            "stable letters must have gcd one".into(),
        ));
    }
    let k = level as i64;
    let width = 2 * level + 1;
    let mut dsu = Dsu::new(width);
    let mut lifts = vec![0usize; steps.len()];
    let mut edges = Vec::new();
    for (e, step) in steps.iter().enumerate() {
        let Ok(step) = i64::try_from(step) else {
            continue;
        };
        for i in -k..=k {
            let j = i + step;
            if (-k..=k).contains(&j) {
                lifts[e] += 1;
                edges.push((i, j, e));
                dsu.union((i + k) as usize, (j + k) as usize);
            }
        }
    }
    let connected = (0..width).all(|x| dsu.find(x) == dsu.find(0));
    let vertex_betti_total = q(width as i64) * gog.vertices[0].l2_betti1();
    let edge_betti_total: Q = gog
        .edges
        .iter()
        .zip(&lifts)
        .map(|(e, &n)| q(n as i64) * e.group.l2_betti1())
        .sum();
    Ok(CoverTruncation {
        level,
        vertex_count: width,
        lifts,
        edges,
        connected,
        difference: &vertex_betti_total - &edge_betti_total,
        vertex_betti_total,
        edge_betti_total,
    })
}
