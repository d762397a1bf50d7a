//! Unweighted input graphs and weighted emulator graphs.
//!
//! Both representations keep sorted adjacency lists over dense vertex ids
//! `0..n` and are immutable once built.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Edge weight / distance value.
pub type Weight = u32;

/// An undirected, simple, unweighted graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// A graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Self {
        Self {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge iterator. Duplicate and reversed edges are
    /// merged; self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (i, (u, v)) in edges.into_iter().enumerate() {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { vertex: u, line: i + 1 });
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        Ok(Self::from_raw_adjacency(adjacency))
    }

    fn from_raw_adjacency(mut adjacency: Vec<Vec<usize>>) -> Self {
        let mut degree_sum = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
            degree_sum += list.len();
        }
        Self {
            adjacency,
            edge_count: degree_sum / 2,
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    /// The subgraph induced by `vertices`, relabelled densely in the order
    /// the vertices are given (after sorting and deduplication).
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Graph, VertexMap)> {
        let mut to_global = vertices.to_vec();
        to_global.sort_unstable();
        to_global.dedup();
        for &v in &to_global {
            self.check_vertex(v)?;
        }
        let to_local: HashMap<usize, usize> = to_global
            .iter()
            .enumerate()
            .map(|(local, &global)| (global, local))
            .collect();
        let adjacency = to_global
            .iter()
            .map(|&g| {
                self.adjacency[g]
                    .iter()
                    .filter_map(|w| to_local.get(w).copied())
                    .collect()
            })
            .collect();
        Ok((
            Self::from_raw_adjacency(adjacency),
            VertexMap { to_global, to_local },
        ))
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut components = Vec::new();
        let mut stack = Vec::new();
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            stack.push(root);
            let mut members = Vec::new();
            while let Some(u) = stack.pop() {
                members.push(u);
                for &w in &self.adjacency[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        components
    }

    /// A spanning forest: one tree per component, built by scanning edges in
    /// lexicographic order and keeping those that join two trees.
    pub fn spanning_forest(&self) -> Vec<(usize, usize)> {
        let mut sets = DisjointSets::new(self.n());
        self.edges().filter(|&(u, v)| sets.union(u, v)).collect()
    }

    /// Renders the graph in the edge-list text format, with an `# n=<k>`
    /// header so isolated trailing vertices survive a round trip.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(16 + self.edge_count * 12);
        let _ = writeln!(out, "# n={}", self.n());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// Relabelling produced by [`Graph::induced_subgraph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMap {
    to_global: Vec<usize>,
    to_local: HashMap<usize, usize>,
}

impl VertexMap {
    #[inline]
    pub fn global(&self, local: usize) -> usize {
        self.to_global[local]
    }

    pub fn local(&self, global: usize) -> Option<usize> {
        self.to_local.get(&global).copied()
    }

    pub fn len(&self) -> usize {
        self.to_global.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_global.is_empty()
    }

    pub fn globals(&self) -> &[usize] {
        &self.to_global
    }
}

/// Parses the line-oriented `u v` edge-list format.
///
/// Blank lines and `#` comments are skipped. A `# n=<k>` header fixes the
/// vertex count; otherwise it is one more than the largest id seen.
pub fn load_edge_list(text: &str) -> Result<Graph> {
    let mut declared_n = None;
    let mut edges = Vec::new();
    let mut max_id = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(value) = comment.trim().strip_prefix("n=") {
                let n = value.trim().parse::<usize>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("bad vertex count header `{line}`"),
                })?;
                declared_n = Some(n);
            }
            continue;
        }
        let mut tokens = line.split_whitespace();
        let mut next_id = |what: &str| -> Result<usize> {
            let token = tokens.next().ok_or_else(|| Error::Parse {
                line: line_no,
                message: format!("missing {what} endpoint"),
            })?;
            token.parse::<usize>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("`{token}` is not a nonnegative integer"),
            })
        };
        let u = next_id("first")?;
        let v = next_id("second")?;
        if let Some(extra) = tokens.next() {
            return Err(Error::Parse {
                line: line_no,
                message: format!("unexpected trailing token `{extra}`"),
            });
        }
        if u == v {
            return Err(Error::SelfLoop { vertex: u, line: line_no });
        }
        max_id = Some(max_id.map_or(u.max(v), |m: usize| m.max(u).max(v)));
        edges.push((u, v));
    }
    let inferred = max_id.map_or(0, |m| m + 1);
    let n = match declared_n {
        Some(n) if n < inferred => {
            return Err(Error::Parse {
                line: 0,
                message: format!("header declares n={n} but vertex {} appears", inferred - 1),
            })
        }
        Some(n) => n,
        None => inferred,
    };
    Graph::from_edges(n, edges)
}

/// An undirected, simple graph with positive integer weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedGraph {
    adjacency: Vec<Vec<(usize, Weight)>>,
    edge_count: usize,
}

impl WeightedGraph {
    pub fn empty(n: usize) -> Self {
        Self {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    /// Builds from weighted edges. Parallel edges keep the smallest weight.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Weight)>,
    {
        let mut adjacency: Vec<Vec<(usize, Weight)>> = vec![Vec::new(); n];
        for (i, (u, v, w)) in edges.into_iter().enumerate() {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { vertex: u, line: i + 1 });
            }
            if w == 0 {
                return Err(Error::Parameter(format!("edge ({u}, {v}) has weight 0")));
            }
            adjacency[u].push((v, w));
            adjacency[v].push((u, w));
        }
        let mut degree_sum = 0;
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup_by_key(|&mut (v, _)| v);
            degree_sum += list.len();
        }
        Ok(Self {
            adjacency,
            edge_count: degree_sum / 2,
        })
    }

    /// Every edge of `g` with weight 1.
    pub fn from_unweighted(g: &Graph) -> Self {
        Self {
            adjacency: (0..g.n())
                .map(|v| g.neighbors(v).iter().map(|&w| (w, 1)).collect())
                .collect(),
            edge_count: g.edge_count(),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    #[inline]
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[(usize, Weight)] {
        &self.adjacency[v]
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<Weight> {
        let list = self.adjacency.get(u)?;
        list.binary_search_by_key(&v, |&(x, _)| x)
            .ok()
            .map(|i| list[i].1)
    }

    /// Edges as `(u, v, w)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Weight)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .copied()
                .filter(move |&(v, _)| u < v)
                .map(move |(v, w)| (u, v, w))
        })
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    /// `u v w` lines, sorted by `(u, v)`.
    pub fn to_weighted_edge_list(&self) -> String {
        let mut out = String::with_capacity(16 + self.edge_count * 16);
        let _ = writeln!(out, "# n={}", self.n());
        for (u, v, w) in self.edges() {
            let _ = writeln!(out, "{u} {v} {w}");
        }
        out
    }
}

/// Parses the `u v w` weighted edge-list format written by
/// [`WeightedGraph::to_weighted_edge_list`].
pub fn load_weighted_edge_list(text: &str) -> Result<WeightedGraph> {
    let mut declared_n = None;
    let mut edges = Vec::new();
    let mut inferred = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(value) = comment.trim().strip_prefix("n=") {
                declared_n = Some(value.trim().parse::<usize>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("bad vertex count header `{line}`"),
                })?);
            }
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected `u v w`, found {} fields", fields.len()),
            });
        }
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("`{s}` is not a nonnegative integer"),
            })
        };
        let (u, v) = (parse(fields[0])?, parse(fields[1])?);
        let w = Weight::try_from(parse(fields[2])?).map_err(|_| Error::Parse {
            line: line_no,
            message: "weight overflows u32".into(),
        })?;
        inferred = inferred.max(u + 1).max(v + 1);
        edges.push((u, v, w));
    }
    WeightedGraph::from_edges(declared_n.unwrap_or(inferred).max(inferred), edges)
}

/// Union-find with path halving and union by size.
#[derive(Debug, Clone)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns `true` if `a` and `b` were in different sets.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}
