//! Chordality, clique separators and clique-tree splittings.

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::complex::FlagComplex;
use crate::error::{Error, Result};
use crate::gog::{Dsu, GogEdge, GraphOfGroups, GroupDescriptor, Inclusion};

/// Outcome of a chordality test together with a checkable certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChordalityWitness {
    pub verdict: bool,
    /// Perfect elimination ordering, present iff chordal.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub peo: Option<Vec<String>>,
    /// Induced cycle of length at least four, present iff not chordal.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bad_cycle: Option<Vec<String>>,
}

/// Lexicographic breadth-first search by partition refinement. Ties are
/// broken by vertex order.
pub fn lex_bfs(l: &FlagComplex) -> Vec<usize> {
    let n = l.vertex_count();
    let mut classes: VecDeque<Vec<usize>> = VecDeque::new();
    if n > 0 {
        classes.push_back((0..n).collect());
    }
    let mut order = Vec::with_capacity(n);
    while let Some(mut first) = classes.pop_front() {
        let v = first.remove(0);
        if !first.is_empty() {
            classes.push_front(first);
        }
        order.push(v);
        let mut refined = VecDeque::with_capacity(classes.len() * 2);
        for class in classes {
            let (hit, miss): (Vec<usize>, Vec<usize>) =
                class.into_iter().partition(|&u| l.adjacent(u, v));
            if !hit.is_empty() {
                refined.push_back(hit);
            }
            if !miss.is_empty() {
                refined.push_back(miss);
            }
        }
        classes = refined;
    }
    order
}

/// Checks that every vertex's later neighbours in `order` form a clique.
/// Returns the first violating triple `(v, x, y)` with `x`, `y` later
/// non-adjacent neighbours of `v`.
pub fn peo_violation(l: &FlagComplex, order: &[usize]) -> Option<(usize, usize, usize)> {
    let mut pos = vec![usize::MAX; l.vertex_count()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    for &v in order {
        let later: Vec<usize> = l
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| pos[w] > pos[v])
            .collect();
        for (i, &x) in later.iter().enumerate() {
            for &y in &later[i + 1..] {
                if !l.adjacent(x, y) {
                    return Some((v, x, y));
                }
            }
        }
    }
    None
}

/// Whether `order` is a permutation of the vertices and a perfect
/// elimination ordering.
pub fn is_perfect_elimination_ordering(l: &FlagComplex, order: &[usize]) -> bool {
    let mut seen = vec![false; l.vertex_count()];
    if order.len() != l.vertex_count() {
        return false;
    }
    for &v in order {
        if v >= seen.len() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    peo_violation(l, order).is_none()
}

/// Whether `cycle` is an induced cycle of length at least four.
pub fn is_induced_cycle(l: &FlagComplex, cycle: &[usize]) -> bool {
    let k = cycle.len();
    if k < 4 {
        return false;
    }
    let distinct: HashSet<usize> = cycle.iter().copied().collect();
    if distinct.len() != k {
        return false;
    }
    for i in 0..k {
        for j in i + 1..k {
            let consecutive = j == i + 1 || (i == 0 && j == k - 1);
            if l.adjacent(cycle[i], cycle[j]) != consecutive {
                return false;
            }
        }
    }
    true
}

/// Shortest path from `x` to `y` avoiding the closed neighbourhood of `v`
/// apart from `x` and `y`; closing it through `v` gives an induced cycle.
fn cycle_through(l: &FlagComplex, v: usize, x: usize, y: usize) -> Option<Vec<usize>> {
    let n = l.vertex_count();
    let mut blocked = vec![false; n];
    blocked[v] = true;
    for &w in l.neighbors(v) {
        blocked[w] = true;
    }
    blocked[x] = false;
    blocked[y] = false;
    let mut prev = vec![usize::MAX; n];
    let mut queue = VecDeque::from([x]);
    prev[x] = x;
    while let Some(u) = queue.pop_front() {
        if u == y {
            break;
        }
        for &w in l.neighbors(u) {
            // x and y themselves may only be endpoints.
            if blocked[w] || prev[w] != usize::MAX || (u == x && w == y) {
                continue;
            }
            prev[w] = u;
            queue.push_back(w);
        }
    }
    if prev[y] == usize::MAX {
        return None;
    }
    let mut path = vec![y];
    let mut cur = y;
    while cur != x {
        cur = prev[cur];
        path.push(cur);
    }
    path.push(v);
    Some(path)
}

/// Rotates to start at the minimal vertex and orients towards its smaller
/// cycle neighbour.
fn canonical_cycle(mut cycle: Vec<usize>) -> Vec<usize> {
    let k = cycle.len();
    let start = (0..k).min_by_key(|&i| cycle[i]).unwrap_or(0);
    cycle.rotate_left(start);
    if k > 2 && cycle[k - 1] < cycle[1] {
        cycle[1..].reverse();
    }
    cycle
}

/// Some induced cycle of length ≥ 4, trying the given triple first.
fn extract_induced_cycle(l: &FlagComplex, hint: (usize, usize, usize)) -> Option<Vec<usize>> {
    let (v, x, y) = hint;
    if let Some(c) = cycle_through(l, v, x, y) {
        return Some(canonical_cycle(c));
    }
    for v in 0..l.vertex_count() {
        let nbrs: Vec<usize> = l.neighbors(v).iter().copied().collect();
        for (i, &x) in nbrs.iter().enumerate() {
            for &y in &nbrs[i + 1..] {
                if !l.adjacent(x, y) {
                    if let Some(c) = cycle_through(l, v, x, y) {
                        return Some(canonical_cycle(c));
                    }
                }
            }
        }
    }
    None
}

/// Index-level chordality result: `Ok(peo)` or `Err(induced cycle)`.
pub fn chordality_indices(l: &FlagComplex) -> std::result::Result<Vec<usize>, Vec<usize>> {
    let mut order = lex_bfs(l);
    order.reverse();
    match peo_violation(l, &order) {
        None => Ok(order),
        Some(triple) => Err(extract_induced_cycle(l, triple)
            .expect("a graph without a perfect elimination ordering has an induced long cycle")),
    }
}

/// Tests chordality; the result always carries a verified witness.
pub fn is_chordal(l: &FlagComplex) -> ChordalityWitness {
    match chordality_indices(l) {
        Ok(peo) => ChordalityWitness {
            verdict: true,
            peo: Some(l.names_of(&peo)),
            bad_cycle: None,
        },
        Err(cycle) => ChordalityWitness {
            verdict: false,
            peo: None,
            bad_cycle: Some(l.names_of(&cycle)),
        },
    }
}

/// Fails with [`Error::NotChordal`] carrying the witness cycle.
pub fn require_chordal(l: &FlagComplex) -> Result<()> {
    match chordality_indices(l) {
        Ok(_) => Ok(()),
        Err(cycle) => Err(Error::NotChordal {
            cycle: l.names_of(&cycle),
        }),
    }
}

fn separates(l: &FlagComplex, removed: &[bool], from: &[usize], to: &[bool]) -> bool {
    let n = l.vertex_count();
    let mut seen = vec![false; n];
    let mut stack: Vec<usize> = from.iter().copied().filter(|&v| !removed[v]).collect();
    for &v in &stack {
        seen[v] = true;
    }
    while let Some(u) = stack.pop() {
        if to[u] {
            return false;
        }
        for &w in l.neighbors(u) {
            if !removed[w] && !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    true
}

/// A clique whose removal puts `k0` and `k1` in different components.
///
/// Starts from the open neighbourhood of `k0` and drops vertices greedily
/// in vertex order while separation is preserved, so the result is minimal
/// by inclusion. For connected `k0` and `k1` a minimal separator of a
/// chordal complex is a clique; for disconnected inputs no clique separator
/// need exist, which is reported as [`Error::NoCliqueSeparator`].
pub fn find_separating_clique<S: AsRef<str>>(
    l: &FlagComplex,
    k0: &[S],
    k1: &[S],
) -> Result<Vec<String>> {
    let a = l.indices_of(k0)?;
    let b = l.indices_of(k1)?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyVertexSet);
    }
    if a.iter().any(|v| b.binary_search(v).is_ok()) {
        return Err(Error::Overlapping);
    }
    if a.iter().any(|&u| b.iter().any(|&v| l.adjacent(u, v))) {
        return Err(Error::Adjacent);
    }
    if !l.is_connected() {
        return Err(Error::Disconnected);
    }
    require_chordal(l)?;

    let n = l.vertex_count();
    let mut removed = vec![false; n];
    for &u in &a {
        for &w in l.neighbors(u) {
            if a.binary_search(&w).is_err() {
                removed[w] = true;
            }
        }
    }
    let mut target = vec![false; n];
    for &v in &b {
        target[v] = true;
    }
    for v in 0..n {
        if removed[v] {
            removed[v] = false;
            if !separates(l, &removed, &a, &target) {
                removed[v] = true;
            }
        }
    }
    let sep: Vec<usize> = (0..n).filter(|&v| removed[v]).collect();
    if !l.is_clique(&sep) {
        return Err(Error::NoCliqueSeparator);
    }
    Ok(l.names_of(&sep))
}

/// Tree of groups for a connected chordal complex: maximal cliques as
/// free abelian vertex groups, clique-tree separators as edge groups.
///
/// The clique tree is a maximum-weight spanning tree of the clique
/// intersection graph (weight = size of the intersection), chosen by
/// Kruskal's algorithm with ties broken by clique order.
pub fn clique_tree_splitting(l: &FlagComplex) -> Result<GraphOfGroups> {
    if l.vertex_count() == 0 || !l.is_connected() {
        return Err(Error::Disconnected);
    }
    require_chordal(l)?;
    let cliques = l.maximal_clique_indices();
    let mut candidates = Vec::new();
    for i in 0..cliques.len() {
        for j in i + 1..cliques.len() {
            let meet: Vec<usize> = cliques[i]
                .iter()
                .copied()
                .filter(|v| cliques[j].binary_search(v).is_ok())
                .collect();
            if !meet.is_empty() {
                candidates.push((meet.len(), i, j, meet));
            }
        }
    }
    candidates.sort_by(|x, y| y.0.cmp(&x.0).then((x.1, x.2).cmp(&(y.1, y.2))));

    let mut dsu = Dsu::new(cliques.len());
    let mut edges = Vec::new();
    for (_, i, j, meet) in candidates {
        if dsu.union(i, j) {
            edges.push(GogEdge {
                source: i,
                target: j,
                group: GroupDescriptor::parabolic(l, &meet)?,
                inclusion: Inclusion::Containment,
            });
        }
    }
    if edges.len() + 1 != cliques.len() {
        return Err(Error::Internal(
            "clique intersection graph is disconnected".into(),
        ));
    }
    let vertices = cliques
        .iter()
        .map(|c| GroupDescriptor::parabolic(l, c))
        .collect::<Result<Vec<_>>>()?;
    let spanning_tree = (0..edges.len()).collect();
    Ok(GraphOfGroups {
        vertices,
        edges,
        spanning_tree,
        stable_letters: Default::default(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn p3() -> FlagComplex {
        FlagComplex::new(&["a", "b", "c"], &[("a", "b"), ("b", "c")]).unwrap()
    }

    fn c4() -> FlagComplex {
        FlagComplex::new(
            &["a", "b", "c", "d"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
        )
        .unwrap()
    }

    fn two_triangles() -> FlagComplex {
        FlagComplex::new(
            &["v1", "v2", "w1", "w2"],
            &[
                ("v1", "v2"),
                ("v1", "w1"),
                ("v2", "w1"),
                ("v1", "w2"),
                ("v2", "w2"),
            ],
        )
        .unwrap()
    }

    fn strs(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn p3_is_chordal_with_valid_peo() {
        let w = is_chordal(&p3());
        assert!(w.verdict);
        let peo = w.peo.unwrap();
        let idx = p3().indices_of(&peo).unwrap();
        assert_eq!(idx.len(), 3);
        let order: Vec<usize> = peo.iter().map(|n| p3().index_of(n).unwrap()).collect();
        assert!(is_perfect_elimination_ordering(&p3(), &order));
        // The ordering listed alongside the P3 example is also valid.
        assert!(is_perfect_elimination_ordering(&p3(), &[0, 2, 1]));
    }

    #[test]
    fn c4_witness_cycle() {
        let w = is_chordal(&c4());
        assert!(!w.verdict);
        assert_eq!(w.bad_cycle.unwrap(), strs(&["a", "b", "c", "d"]));
        assert!(is_induced_cycle(&c4(), &[0, 1, 2, 3]));
        assert!(!is_induced_cycle(&c4(), &[0, 1, 2]));
    }

    #[test]
    fn two_triangles_chordal() {
        assert!(is_chordal(&two_triangles()).verdict);
    }

    #[test]
    fn long_cycle_with_pendant() {
        // C5 with a chord-free tail; the cycle must be found.
        let l = FlagComplex::new(
            &["a", "b", "c", "d", "e", "t"],
            &[
                ("a", "b"),
                ("b", "c"),
                ("c", "d"),
                ("d", "e"),
                ("e", "a"),
                ("t", "a"),
            ],
        )
        .unwrap();
        let w = is_chordal(&l);
        assert!(!w.verdict);
        let cyc = l.indices_of(w.bad_cycle.as_ref().unwrap()).unwrap();
        assert_eq!(cyc.len(), 5);
        let order: Vec<usize> = w
            .bad_cycle
            .unwrap()
            .iter()
            .map(|n| l.index_of(n).unwrap())
            .collect();
        assert!(is_induced_cycle(&l, &order));
    }

    #[test]
    fn empty_and_disconnected_are_chordal() {
        assert!(is_chordal(&FlagComplex::empty()).verdict);
        assert!(is_chordal(&FlagComplex::edgeless(&["x", "y", "z"]).unwrap()).verdict);
    }

    #[test]
    fn separating_cliques() {
        assert_eq!(
            find_separating_clique(&p3(), &["a"], &["c"]).unwrap(),
            strs(&["b"])
        );
        assert_eq!(
            find_separating_clique(&two_triangles(), &["w1"], &["w2"]).unwrap(),
            strs(&["v1", "v2"])
        );
        assert_eq!(
            find_separating_clique(&p3(), &["a"], &["b"]).unwrap_err(),
            Error::Adjacent
        );
        assert_eq!(
            find_separating_clique(&p3(), &["a"], &["a"]).unwrap_err(),
            Error::Overlapping
        );
        assert!(matches!(
            find_separating_clique(&c4(), &["a"], &["c"]),
            Err(Error::NotChordal { .. })
        ));
        assert_eq!(
            find_separating_clique::<&str>(&p3(), &[], &["c"]).unwrap_err(),
            Error::EmptyVertexSet
        );
    }

    #[test]
    fn separator_for_disconnected_k0_in_path() {
        let p5 = FlagComplex::new(
            &["a", "b", "c", "d", "e"],
            &[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e")],
        )
        .unwrap();
        assert_eq!(
            find_separating_clique(&p5, &["a", "c"], &["e"]).unwrap(),
            strs(&["d"])
        );
        assert_eq!(
            find_separating_clique(&p5, &["a", "e"], &["c"]).unwrap_err(),
            Error::NoCliqueSeparator
        );
    }

    #[test]
    fn clique_tree_examples() {
        let g = clique_tree_splitting(&p3()).unwrap();
        assert_eq!(g.vertices.len(), 2);
        assert_eq!(g.edges.len(), 1);
        assert_eq!(
            g.edges[0].group,
            GroupDescriptor::Parabolic {
                vertices: strs(&["b"]),
                chi: q(0)
            }
        );
        let k3 = FlagComplex::simplex(&["a", "b", "c"]).unwrap();
        let g = clique_tree_splitting(&k3).unwrap();
        assert_eq!(g.vertices.len(), 1);
        assert!(g.edges.is_empty());

        let g = clique_tree_splitting(&two_triangles()).unwrap();
        let sizes: Vec<usize> = g
            .vertices
            .iter()
            .map(|v| match v {
                GroupDescriptor::Parabolic { vertices, .. } => vertices.len(),
                _ => 0,
            })
            .collect();
        assert_eq!(sizes, vec![3, 3]);
        assert!(
            matches!(&g.edges[0].group, GroupDescriptor::Parabolic { vertices, .. } if vertices.len() == 2)
        );
        g.validate().unwrap();
    }

    #[test]
    fn clique_tree_rejects_bad_input() {
        assert!(matches!(
            clique_tree_splitting(&c4()),
            Err(Error::NotChordal { .. })
        ));
        assert_eq!(
            clique_tree_splitting(&FlagComplex::edgeless(&["a", "b"]).unwrap()).unwrap_err(),
            Error::Disconnected
        );
    }
}
