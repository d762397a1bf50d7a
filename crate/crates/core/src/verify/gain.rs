use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, Weight, WeightedGraph};

use super::oracle::{oracle_bfs, oracle_dijkstra};

/// Number of pairs that become "connected" (additive error at most
/// `threshold`) when `edge` is added to `h_before`, and were not before.
///
/// Distances after the insertion are derived from the rows of `x` and `y`:
/// `d'(u, v) = min(d(u, v), d(u, x) + w + d(y, v), d(u, y) + w + d(x, v))`.
pub fn pair_gain_diagnostic(
    g: &Graph,
    h_before: &WeightedGraph,
    edge: (usize, usize, Weight),
    threshold: u64,
) -> Result<u64> {
    let n = g.n();
    let (x, y, w) = edge;
    if h_before.n() != n {
        return Err(Error::Parameter(format!(
            "emulator has {} vertices, graph has {n}",
            h_before.n()
        )));
    }
    for v in [x, y] {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
    }
    let w = u64::from(w);
    let from_x = oracle_dijkstra(h_before, x);
    let from_y = oracle_dijkstra(h_before, y);
    let via = |a: Option<u64>, b: Option<u64>| Some(a? + w + b?);

    let count = (0..n)
        .into_par_iter()
        .map(|u| {
            let dg = oracle_bfs(g, u);
            let dh = oracle_dijkstra(h_before, u);
            let mut gained = 0u64;
            for v in u + 1..n {
                let Some(target) = dg[v].map(|d| d + threshold) else { continue };
                let before = dh[v];
                let after = [before, via(from_x[u], from_y[v]), via(from_y[u], from_x[v])]
                    .into_iter()
                    .flatten()
                    .min();
                let ok_before = before.is_some_and(|d| d <= target);
                let ok_after = after.is_some_and(|d| d <= target);
                if ok_after && !ok_before {
                    gained += 1;
                }
            }
            gained
        })
        .sum();
    Ok(count)
}
