//! Finite simplicial graphs and their implicit flag completions.
//!
//! A [`FlagComplex`] stores only the 1-skeleton. Its simplices are the cliques
//! of the graph and are enumerated on demand. Vertices are opaque strings;
//! the declaration order is the global total order used for orientations,
//! tie-breaking and every deterministic output.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Default bound on the number of vertices for which full clique
/// enumeration is attempted.
pub const DEFAULT_CLIQUE_CAP: usize = 64;

/// A flag complex given by its 1-skeleton.
#[derive(Debug, Clone)]
pub struct FlagComplex {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<BTreeSet<usize>>,
    clique_cap: usize,
}

impl PartialEq for FlagComplex {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.adj == other.adj
    }
}

impl Eq for FlagComplex {}

impl FlagComplex {
    /// Builds a complex, rejecting self-loops, duplicate edges and
    /// undeclared endpoints.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Self> {
        let mut builder = Builder::default();
        for (i, v) in vertices.iter().enumerate() {
            builder.declare(v.as_ref(), &format!("vertices[{i}]"))?;
        }
        for (i, (a, b)) in edges.iter().enumerate() {
            builder.edge(a.as_ref(), b.as_ref(), &format!("edges[{i}]"), false)?;
        }
        Ok(builder.finish())
    }

    pub fn empty() -> Self {
        Builder::default().finish()
    }

    /// Edgeless complex on the given vertices.
    pub fn edgeless<S: AsRef<str>>(vertices: &[S]) -> Result<Self> {
        Self::new::<&str>(
            &vertices.iter().map(|v| v.as_ref()).collect::<Vec<_>>(),
            &[],
        )
    }

    /// Complete graph (a simplex) on the given vertices.
    pub fn simplex<S: AsRef<str>>(vertices: &[S]) -> Result<Self> {
        let names: Vec<&str> = vertices.iter().map(|v| v.as_ref()).collect();
        let mut edges = Vec::new();
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                edges.push((names[i], names[j]));
            }
        }
        Self::new(&names, &edges)
    }

    /// Returns the same complex with a different clique-enumeration cap.
    /// Subcomplexes derived from it inherit the cap.
    pub fn with_clique_cap(mut self, cap: usize) -> Self {
        self.clique_cap = cap;
        self
    }

    pub fn clique_cap(&self) -> usize {
        self.clique_cap
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adj[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    /// Edges as index pairs `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, nbrs) in self.adj.iter().enumerate() {
            out.extend(nbrs.range(u + 1..).map(|&v| (u, v)));
        }
        out
    }

    pub fn names_of(&self, vertices: &[usize]) -> Vec<String> {
        vertices.iter().map(|&v| self.names[v].clone()).collect()
    }

    pub fn indices_of<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        let mut out: Vec<usize> = names
            .iter()
            .map(|n| self.index_of(n.as_ref()))
            .collect::<Result<_>>()?;
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.adjacent(u, v)))
    }

    /// Induced subcomplex on a set of vertex indices, keeping the parent's
    /// vertex order.
    pub fn induced_indices(&self, vertices: &[usize]) -> FlagComplex {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let local: HashMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let names: Vec<String> = keep.iter().map(|&v| self.names[v].clone()).collect();
        let index = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        let adj = keep
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|w| local.get(w).copied())
                    .collect()
            })
            .collect();
        FlagComplex {
            names,
            index,
            adj,
            clique_cap: self.clique_cap,
        }
    }

    /// Induced subcomplex spanned by the named vertices.
    pub fn induced<S: AsRef<str>>(&self, vertices: &[S]) -> Result<FlagComplex> {
        Ok(self.induced_indices(&self.indices_of(vertices)?))
    }

    /// The complement of an induced subcomplex: everything spanned by the
    /// vertices outside `removed`.
    pub fn without_indices(&self, removed: &[usize]) -> FlagComplex {
        let removed: HashSet<usize> = removed.iter().copied().collect();
        let keep: Vec<usize> = (0..self.vertex_count())
            .filter(|v| !removed.contains(v))
            .collect();
        self.induced_indices(&keep)
    }

    pub fn link_indices(&self, v: usize) -> FlagComplex {
        let nbrs: Vec<usize> = self.adj[v].iter().copied().collect();
        self.induced_indices(&nbrs)
    }

    /// Link of a vertex: the subcomplex induced on its neighbours.
    pub fn link(&self, v: &str) -> Result<FlagComplex> {
        Ok(self.link_indices(self.index_of(v)?))
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// minimal vertex.
    pub fn component_indices(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<FlagComplex> {
        self.component_indices()
            .iter()
            .map(|c| self.induced_indices(c))
            .collect()
    }

    pub fn component_count(&self) -> usize {
        self.component_indices().len()
    }

    /// Connected and nonempty.
    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    pub fn cut_rank_index(&self, v: usize) -> Result<usize> {
        if self.vertex_count() < 2 {
            return Err(Error::Singleton);
        }
        Ok(self.without_indices(&[v]).component_count() - 1)
    }

    /// One less than the number of components left after deleting `v`.
    pub fn cut_rank(&self, v: &str) -> Result<usize> {
        self.cut_rank_index(self.index_of(v)?)
    }

    /// Maximal cliques as sorted index tuples in lexicographic order
    /// (Bron–Kerbosch with Tomita pivoting).
    pub fn maximal_clique_indices(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let all: Vec<usize> = (0..self.vertex_count()).collect();
        self.bron_kerbosch(&mut Vec::new(), all, Vec::new(), &mut out);
        for c in &mut out {
            c.sort_unstable();
        }
        out.sort();
        out
    }

    fn bron_kerbosch(
        &self,
        r: &mut Vec<usize>,
        p: Vec<usize>,
        x: Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if p.is_empty() {
            if x.is_empty() && !r.is_empty() {
                out.push(r.clone());
            }
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| {
                (
                    p.iter().filter(|&&w| self.adjacent(u, w)).count(),
                    usize::MAX - u,
                )
            })
            .expect("p is nonempty");
        let candidates: Vec<usize> = p
            .iter()
            .copied()
            .filter(|&v| !self.adjacent(pivot, v))
            .collect();
        let mut p = p;
        let mut x = x;
        for v in candidates {
            let np = p.iter().copied().filter(|&w| self.adjacent(v, w)).collect();
            let nx = x.iter().copied().filter(|&w| self.adjacent(v, w)).collect();
            r.push(v);
            self.bron_kerbosch(r, np, nx, out);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }

    /// Maximal cliques by vertex name.
    pub fn maximal_cliques(&self) -> Vec<Vec<String>> {
        self.maximal_clique_indices()
            .iter()
            .map(|c| self.names_of(c))
            .collect()
    }

    fn check_cap(&self) -> Result<()> {
        if self.vertex_count() > self.clique_cap {
            return Err(Error::CliqueCap {
                vertices: self.vertex_count(),
                cap: self.clique_cap,
            });
        }
        Ok(())
    }

    /// All nonempty simplices grouped by dimension; entry `d` lists the
    /// `d`-simplices as sorted index tuples in lexicographic order.
    pub fn simplices_by_dim(&self) -> Result<Vec<Vec<Vec<usize>>>> {
        self.check_cap()?;
        let mut by_dim: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut current = Vec::new();
        for v in 0..self.vertex_count() {
            let cand: Vec<usize> = self.adj[v].range(v + 1..).copied().collect();
            current.push(v);
            self.extend_cliques(&mut current, &cand, &mut by_dim);
            current.pop();
        }
        for layer in &mut by_dim {
            layer.sort();
        }
        Ok(by_dim)
    }

    fn extend_cliques(
        &self,
        current: &mut Vec<usize>,
        candidates: &[usize],
        by_dim: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let d = current.len() - 1;
        if by_dim.len() <= d {
            by_dim.push(Vec::new());
        }
        by_dim[d].push(current.clone());
        for (i, &w) in candidates.iter().enumerate() {
            let next: Vec<usize> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&u| self.adjacent(w, u))
                .collect();
            current.push(w);
            self.extend_cliques(current, &next, by_dim);
            current.pop();
        }
    }

    /// Number of `d`-simplices for `d = 0, 1, ...`.
    pub fn f_vector(&self) -> Result<Vec<usize>> {
        Ok(self.simplices_by_dim()?.iter().map(Vec::len).collect())
    }

    /// Euler characteristic of the flag completion.
    pub fn euler_characteristic(&self) -> Result<i64> {
        Ok(self
            .f_vector()?
            .iter()
            .enumerate()
            .map(|(d, &f)| if d % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum())
    }

    pub fn to_json(&self) -> Value {
        let edges: Vec<Value> = self
            .edges()
            .into_iter()
            .map(|(u, v)| json!([self.names[u], self.names[v]]))
            .collect();
        json!({ "vertices": self.names, "edges": edges })
    }
}

#[derive(Default)]
struct Builder {
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<BTreeSet<usize>>,
}

impl Builder {
    fn declare(&mut self, name: &str, location: &str) -> Result<usize> {
        if self.index.contains_key(name) {
            return Err(Error::parse(location, format!("duplicate vertex `{name}`")));
        }
        Ok(self.insert(name))
    }

    fn insert(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index.get(name) {
            return i;
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), i);
        self.adj.push(BTreeSet::new());
        i
    }

    fn edge(&mut self, a: &str, b: &str, location: &str, declare: bool) -> Result<()> {
        if a == b {
            return Err(Error::parse(location, format!("self-loop at `{a}`")));
        }
        let lookup = |s: &mut Self, n: &str| -> Result<usize> {
            if declare {
                Ok(s.insert(n))
            } else {
                s.index
                    .get(n)
                    .copied()
                    .ok_or_else(|| Error::parse(location, format!("undeclared endpoint `{n}`")))
            }
        };
        let u = lookup(self, a)?;
        let v = lookup(self, b)?;
        if !self.adj[u].insert(v) {
            return Err(Error::parse(
                location,
                format!("duplicate edge `{a}`-`{b}`"),
            ));
        }
        self.adj[v].insert(u);
        Ok(())
    }

    fn finish(self) -> FlagComplex {
        FlagComplex {
            names: self.names,
            index: self.index,
            adj: self.adj,
            clique_cap: DEFAULT_CLIQUE_CAP,
        }
    }
}

/// Parses either the JSON document
/// `{"vertices":[...],"edges":[[a,b],...]}` or a plain edge list with one
/// edge per line (single-token lines declare isolated vertices, `#` starts
/// a comment).
pub fn parse_complex(text: &str) -> Result<FlagComplex> {
    if text.trim_start().starts_with('{') {
        parse_complex_json(text)
    } else {
        parse_edge_list(text)
    }
}

fn parse_complex_json(text: &str) -> Result<FlagComplex> {
    let doc: Value = serde_json::from_str(text).map_err(|e| {
        Error::parse(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    complex_from_json(&doc)
}

pub fn complex_from_json(doc: &Value) -> Result<FlagComplex> {
    let obj = doc
        .as_object()
        .ok_or_else(|| Error::parse("document", "expected a JSON object"))?;
    let vertices = obj
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::parse("vertices", "missing or not an array"))?;
    let edges = match obj.get("edges") {
        None => &[][..],
        Some(v) => v
            .as_array()
            .ok_or_else(|| Error::parse("edges", "not an array"))?
            .as_slice(),
    };
    let mut builder = Builder::default();
    for (i, v) in vertices.iter().enumerate() {
        let loc = format!("vertices[{i}]");
        let name = v
            .as_str()
            .ok_or_else(|| Error::parse(&loc, "vertex identifier must be a string"))?;
        builder.declare(name, &loc)?;
    }
    for (i, e) in edges.iter().enumerate() {
        let loc = format!("edges[{i}]");
        let pair = e
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| Error::parse(&loc, "edge must be a pair of strings"))?;
        let a = pair[0]
            .as_str()
            .ok_or_else(|| Error::parse(&loc, "edge endpoint must be a string"))?;
        let b = pair[1]
            .as_str()
            .ok_or_else(|| Error::parse(&loc, "edge endpoint must be a string"))?;
        builder.edge(a, b, &loc, false)?;
    }
    Ok(builder.finish())
}

fn parse_edge_list(text: &str) -> Result<FlagComplex> {
    let mut builder = Builder::default();
    for (lineno, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let loc = format!("line {}", lineno + 1);
        match tokens.as_slice() {
            [] => {}
            [v] => {
                builder.insert(v);
            }
            [a, b] => builder.edge(a, b, &loc, true)?,
            _ => {
                return Err(Error::parse(
                    loc,
                    format!("expected one or two tokens, found {}", tokens.len()),
                ))
            }
        }
    }
    Ok(builder.finish())
}
