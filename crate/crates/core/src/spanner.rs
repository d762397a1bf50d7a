//! Greedy multiplicative spanner.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpannerResult {
    /// Kept edges, `(u, v)` with `u < v`, in scan order.
    pub edges: Vec<(usize, usize)>,
    pub stretch_bound: usize,
}

/// `max(1, ceil(log2 n))`.
pub fn log2_ceil_eff(n: usize) -> usize {
    if n <= 2 {
        1
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// Stretch `2 * ceil(log2 n) - 1` used by the emulator's preprocessing.
pub fn default_stretch(n: usize) -> usize {
    2 * log2_ceil_eff(n) - 1
}

/// Classical greedy `t`-spanner: edges are scanned in `(min, max)` order and
/// an edge is kept iff its endpoints are currently more than `t` hops apart
/// in the kept subgraph. The result has girth greater than `t + 1`.
pub fn greedy_multiplicative_spanner(g: &Graph, t: usize) -> Result<SpannerResult> {
    if t < 1 || t.is_multiple_of(2) {
        return Err(Error::Parameter(format!("spanner stretch must be odd and >= 1, got {t}")));
    }
    let n = g.n();
    let mut kept_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut edges = Vec::new();
    let mut search = BoundedBfs::new(n);
    for (u, v) in g.edges() {
        if !search.within(&kept_adj, u, v, t) {
            kept_adj[u].push(v);
            kept_adj[v].push(u);
            edges.push((u, v));
        }
    }
    Ok(SpannerResult {
        edges,
        stretch_bound: t,
    })
}

struct BoundedBfs {
    depth: Vec<usize>,
    touched: Vec<usize>,
}

impl BoundedBfs {
    fn new(n: usize) -> Self {
        Self {
            depth: vec![usize::MAX; n],
            touched: Vec::new(),
        }
    }

    /// Whether `target` is reachable from `source` within `limit` hops.
    fn within(&mut self, adj: &[Vec<usize>], source: usize, target: usize, limit: usize) -> bool {
        self.depth[source] = 0;
        self.touched.push(source);
        let mut head = 0;
        let mut found = source == target;
        while head < self.touched.len() && !found {
            let u = self.touched[head];
            head += 1;
            let d = self.depth[u];
            if d == limit {
                continue;
            }
            for &w in &adj[u] {
                if self.depth[w] == usize::MAX {
                    if w == target {
                        found = true;
                        break;
                    }
                    self.depth[w] = d + 1;
                    self.touched.push(w);
                }
            }
        }
        for &x in &self.touched {
            self.depth[x] = usize::MAX;
        }
        self.touched.clear();
        found
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::DistanceMatrix;

    fn stretch_ok(g: &Graph, s: &SpannerResult) -> bool {
        let h = Graph::from_edges(g.n(), s.edges.iter().copied()).unwrap();
        let (dg, dh) = (DistanceMatrix::from_graph(g), DistanceMatrix::from_graph(&h));
        (0..g.n()).all(|u| {
            (0..g.n()).all(|v| match (dg.get(u, v), dh.get(u, v)) {
                (Some(a), Some(b)) => b as usize <= s.stretch_bound * a as usize,
                (None, None) => true,
                _ => false,
            })
        })
    }

    #[test]
    fn log_floor_at_one() {
        assert_eq!(log2_ceil_eff(0), 1);
        assert_eq!(log2_ceil_eff(1), 1);
        assert_eq!(log2_ceil_eff(2), 1);
        assert_eq!(log2_ceil_eff(3), 2);
        assert_eq!(log2_ceil_eff(4), 2);
        assert_eq!(log2_ceil_eff(5), 3);
        assert_eq!(log2_ceil_eff(1024), 10);
        assert_eq!(log2_ceil_eff(1025), 11);
        assert_eq!(default_stretch(1024), 19);
    }

    #[test]
    fn rejects_even_or_zero_stretch() {
        let g = Graph::empty(2);
        assert!(greedy_multiplicative_spanner(&g, 0).is_err());
        assert!(greedy_multiplicative_spanner(&g, 4).is_err());
    }

    #[test]
    fn tree_keeps_everything() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (1, 3), (3, 4), (4, 5)]).unwrap();
        for t in [1, 3, 7] {
            let s = greedy_multiplicative_spanner(&g, t).unwrap();
            assert_eq!(s.edges, g.edges().collect::<Vec<_>>());
        }
    }

    #[test]
    fn five_cycle_stretch_three_keeps_all() {
        let g = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        let s = greedy_multiplicative_spanner(&g, 3).unwrap();
        assert_eq!(s.edges.len(), 5);
        assert!(stretch_ok(&g, &s));
    }

    #[test]
    fn k4_stretch_three() {
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let s = greedy_multiplicative_spanner(&g, 3).unwrap();
        assert!(s.edges.len() <= 4);
        assert!(stretch_ok(&g, &s));
    }

    #[test]
    fn tiny_graphs_are_their_own_spanner() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let s = greedy_multiplicative_spanner(&g, default_stretch(2)).unwrap();
        assert_eq!(s.edges, vec![(0, 1)]);
    }
}
