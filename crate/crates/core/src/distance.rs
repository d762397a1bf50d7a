//! Exact shortest-path primitives: BFS on [`Graph`], Dijkstra on
//! [`WeightedGraph`], balls, shortest paths, and dense distance matrices.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use rayon::prelude::*;

use crate::error::Result;
use crate::graph::{Graph, Weight, WeightedGraph};

const UNREACHABLE: Weight = Weight::MAX;

/// Single-source distances. Unreachable vertices read as `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceVector {
    source: usize,
    dist: Vec<Weight>,
}

impl DistanceVector {
    #[inline]
    pub fn source(&self) -> usize {
        self.source
    }

    #[inline]
    pub fn get(&self, v: usize) -> Option<Weight> {
        match self.dist[v] {
            UNREACHABLE => None,
            d => Some(d),
        }
    }

    pub fn len(&self) -> usize {
        self.dist.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dist.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Option<Weight>> + '_ {
        (0..self.dist.len()).map(|v| self.get(v))
    }

    pub fn to_vec(&self) -> Vec<Option<Weight>> {
        self.iter().collect()
    }
}

/// Unweighted shortest-path distances from `source`.
pub fn bfs_distances(g: &Graph, source: usize) -> Result<DistanceVector> {
    g.check_vertex(source)?;
    Ok(DistanceVector {
        source,
        dist: bfs_raw(g, source),
    })
}

fn bfs_raw(g: &Graph, source: usize) -> Vec<Weight> {
    let mut dist = vec![UNREACHABLE; g.n()];
    let mut queue = VecDeque::new();
    dist[source] = 0;
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let next = dist[u] + 1;
        for &w in g.neighbors(u) {
            if dist[w] == UNREACHABLE {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Weighted shortest-path distances from `source` (binary-heap Dijkstra).
pub fn dijkstra_distances(h: &WeightedGraph, source: usize) -> Result<DistanceVector> {
    h.check_vertex(source)?;
    Ok(DistanceVector {
        source,
        dist: dijkstra_raw(h, source),
    })
}

fn dijkstra_raw(h: &WeightedGraph, source: usize) -> Vec<Weight> {
    let mut dist = vec![UNREACHABLE; h.n()];
    let mut heap = BinaryHeap::new();
    dist[source] = 0;
    heap.push(Reverse((0, source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        for &(w, weight) in h.neighbors(u) {
            let candidate = d + weight;
            if candidate < dist[w] {
                dist[w] = candidate;
                heap.push(Reverse((candidate, w)));
            }
        }
    }
    dist
}

/// `B(v, radius)`: vertices within `radius` hops of `v`, sorted.
pub fn ball(g: &Graph, v: usize, radius: usize) -> Result<Vec<usize>> {
    g.check_vertex(v)?;
    let mut depth = vec![UNREACHABLE; g.n()];
    Ok(ball_with(g, v, radius, &mut depth))
}

/// Truncated BFS reusing `scratch` (must be all-unreachable on entry and is
/// restored before returning).
pub(crate) fn ball_with(g: &Graph, v: usize, radius: usize, scratch: &mut [Weight]) -> Vec<usize> {
    let mut members = vec![v];
    scratch[v] = 0;
    let mut head = 0;
    while head < members.len() {
        let u = members[head];
        head += 1;
        let d = scratch[u] as usize;
        if d == radius {
            continue;
        }
        for &w in g.neighbors(u) {
            if scratch[w] == UNREACHABLE {
                scratch[w] = (d + 1) as Weight;
                members.push(w);
            }
        }
    }
    for &u in &members {
        scratch[u] = UNREACHABLE;
    }
    members.sort_unstable();
    members
}

/// A shortest `s`–`t` path in `g`, as a vertex sequence from `s` to `t`.
///
/// Each vertex's predecessor is its lowest-id neighbour one layer closer to
/// `s`, so the path is unique for a given graph.
pub fn shortest_path(g: &Graph, s: usize, t: usize) -> Result<Option<Vec<usize>>> {
    let dist = bfs_distances(g, s)?;
    g.check_vertex(t)?;
    Ok(path_from_distances(g, &dist, t))
}

/// Walks back from `t` using distances already computed from the path start.
pub fn path_from_distances(g: &Graph, from_source: &DistanceVector, t: usize) -> Option<Vec<usize>> {
    let mut d = from_source.get(t)?;
    let mut path = vec![t];
    let mut cur = t;
    while d > 0 {
        cur = g
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&p| from_source.get(p) == Some(d - 1))
            .expect("BFS layers are consistent");
        path.push(cur);
        d -= 1;
    }
    path.reverse();
    Some(path)
}

/// Dense all-pairs distance matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    data: Vec<Weight>,
}

impl DistanceMatrix {
    /// All-pairs BFS distances, parallel over sources.
    pub fn from_graph(g: &Graph) -> Self {
        let n = g.n();
        let mut data = vec![UNREACHABLE; n * n];
        if n > 0 {
            data.par_chunks_mut(n).enumerate().for_each(|(s, row)| {
                row.copy_from_slice(&bfs_raw(g, s));
            });
        }
        Self { n, data }
    }

    /// All-pairs Dijkstra distances, parallel over sources.
    pub fn from_weighted(h: &WeightedGraph) -> Self {
        let n = h.n();
        let mut data = vec![UNREACHABLE; n * n];
        if n > 0 {
            data.par_chunks_mut(n).enumerate().for_each(|(s, row)| {
                row.copy_from_slice(&dijkstra_raw(h, s));
            });
        }
        Self { n, data }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> Option<Weight> {
        match self.data[u * self.n + v] {
            UNREACHABLE => None,
            d => Some(d),
        }
    }

    pub fn row(&self, s: usize) -> DistanceVector {
        DistanceVector {
            source: s,
            dist: self.data[s * self.n..(s + 1) * self.n].to_vec(),
        }
    }

    /// Updates every entry for the insertion of edge `(x, y)` with weight
    /// `w`. Exact for a single insertion into a graph whose distances this
    /// matrix held. Returns whether any entry changed.
    pub fn insert_edge(&mut self, x: usize, y: usize, w: Weight) -> bool {
        let n = self.n;
        let row_x: Vec<Weight> = self.data[x * n..(x + 1) * n].to_vec();
        let row_y: Vec<Weight> = self.data[y * n..(y + 1) * n].to_vec();
        let changed = self
            .data
            .par_chunks_mut(n)
            .enumerate()
            .map(|(s, row)| {
                // d(s, x) = d(x, s) by symmetry
                let (sx, sy) = (row_x[s], row_y[s]);
                let mut changed = false;
                for v in 0..n {
                    let via_xy = add3(sx, w, row_y[v]);
                    let via_yx = add3(sy, w, row_x[v]);
                    let best = via_xy.min(via_yx);
                    if best < row[v] {
                        row[v] = best;
                        changed = true;
                    }
                }
                changed
            })
            .reduce(|| false, |a, b| a || b);
        changed
    }
}

#[inline]
fn add3(a: Weight, b: Weight, c: Weight) -> Weight {
    if a == UNREACHABLE || c == UNREACHABLE {
        UNREACHABLE
    } else {
        a + b + c
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn bfs_examples() {
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            bfs_distances(&path, 0).unwrap().to_vec(),
            vec![Some(0), Some(1), Some(2)]
        );
        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            bfs_distances(&two, 0).unwrap().to_vec(),
            vec![Some(0), Some(1), None, None]
        );
        assert!(bfs_distances(&two, 4).is_err());
    }

    #[test]
    fn bfs_four_cycle_matches_path_enumeration() {
        // shortest simple-path lengths from 0 in C4, enumerated by hand:
        // 0->1 (1), 0->1->2 or 0->3->2 (2), 0->3 (1)
        let g = cycle(4);
        assert_eq!(
            bfs_distances(&g, 0).unwrap().to_vec(),
            vec![Some(0), Some(1), Some(2), Some(1)]
        );
    }

    #[test]
    fn dijkstra_examples() {
        let tri = WeightedGraph::from_edges(3, [(0, 1, 1), (1, 2, 1), (0, 2, 5)]).unwrap();
        assert_eq!(
            dijkstra_distances(&tri, 0).unwrap().to_vec(),
            vec![Some(0), Some(1), Some(2)]
        );
        let single = WeightedGraph::from_edges(2, [(0, 1, 7)]).unwrap();
        assert_eq!(dijkstra_distances(&single, 0).unwrap().to_vec(), vec![Some(0), Some(7)]);
        // star: center 0, leaves 1..=3, weight 2; from leaf 1
        let star = WeightedGraph::from_edges(4, [(0, 1, 2), (0, 2, 2), (0, 3, 2)]).unwrap();
        assert_eq!(
            dijkstra_distances(&star, 1).unwrap().to_vec(),
            vec![Some(2), Some(0), Some(4), Some(4)]
        );
        assert!(dijkstra_distances(&star, 9).is_err());
    }

    #[test]
    fn ball_examples() {
        let path = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(ball(&path, 2, 0).unwrap(), vec![2]);
        assert_eq!(ball(&path, 1, 1).unwrap(), vec![0, 1, 2]);
        let two = Graph::from_edges(5, [(0, 1), (1, 2), (3, 4)]).unwrap();
        assert_eq!(ball(&two, 0, 10).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn shortest_path_prefers_low_ids() {
        let g = cycle(4);
        assert_eq!(shortest_path(&g, 0, 2).unwrap(), Some(vec![0, 1, 2]));
        assert_eq!(shortest_path(&g, 2, 0).unwrap(), Some(vec![2, 1, 0]));
        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(shortest_path(&two, 0, 3).unwrap(), None);
        assert_eq!(shortest_path(&two, 3, 3).unwrap(), Some(vec![3]));
    }

    #[test]
    fn insert_edge_matches_recompute() {
        let g = cycle(10);
        let path: Vec<_> = g.edges().filter(|&(u, v)| (u, v) != (0, 9)).collect();
        let mut h = WeightedGraph::from_edges(10, path.iter().map(|&(u, v)| (u, v, 1))).unwrap();
        let mut m = DistanceMatrix::from_weighted(&h);
        assert!(m.insert_edge(2, 8, 3));
        let mut edges: Vec<_> = h.edges().collect();
        edges.push((2, 8, 3));
        h = WeightedGraph::from_edges(10, edges).unwrap();
        assert_eq!(m, DistanceMatrix::from_weighted(&h));
        assert!(!m.insert_edge(2, 8, 3));
    }
}
