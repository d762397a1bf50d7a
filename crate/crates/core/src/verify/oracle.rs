//! Reference distance computations for verification.
//!
//! These deliberately share no code with `crate::distance`: BFS here
//! expands whole frontiers, and the weighted search is a bucket queue.

use std::collections::BTreeMap;

use crate::graph::{Graph, Weight, WeightedGraph};

/// Hop distances from `source`; `None` where unreachable.
pub fn oracle_bfs(g: &Graph, source: usize) -> Vec<Option<u64>> {
    let mut dist = vec![None; g.n()];
    dist[source] = Some(0);
    let mut frontier = vec![source];
    let mut depth = 0u64;
    while !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for &u in &frontier {
            for &w in g.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(depth);
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    dist
}

/// Weighted distances from `source` via an ordered bucket queue.
pub fn oracle_dijkstra(h: &WeightedGraph, source: usize) -> Vec<Option<u64>> {
    let mut dist: Vec<Option<u64>> = vec![None; h.n()];
    let mut settled = vec![false; h.n()];
    let mut buckets: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    dist[source] = Some(0);
    buckets.entry(0).or_default().push(source);
    while let Some((d, bucket)) = buckets.pop_first() {
        for u in bucket {
            if settled[u] || dist[u] != Some(d) {
                continue;
            }
            settled[u] = true;
            for &(w, weight) in h.neighbors(u) {
                let candidate = d + u64::from(weight);
                if dist[w].is_none_or(|cur| candidate < cur) {
                    dist[w] = Some(candidate);
                    buckets.entry(candidate).or_default().push(w);
                }
            }
        }
    }
    dist
}

/// Unit-weight copy of an edge subset, for stretch checks.
pub(crate) fn unit_graph(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> WeightedGraph {
    WeightedGraph::from_edges(n, edges.into_iter().map(|(u, v)| (u, v, 1 as Weight)))
        .expect("edges come from a valid graph")
}
