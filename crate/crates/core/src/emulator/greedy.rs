//! Path-buying phase.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::distance::{dijkstra_distances, DistanceMatrix, DistanceVector};
use crate::error::{Error, Result};
use crate::graph::{Graph, Weight, WeightedGraph};

use super::{EmulatorEdges, Provenance};

/// Pairwise distance queries against the current emulator.
pub trait EmulatorDistances {
    fn distance(&mut self, u: usize, v: usize) -> Option<Weight>;
}

impl EmulatorDistances for DistanceMatrix {
    fn distance(&mut self, u: usize, v: usize) -> Option<Weight> {
        self.get(u, v)
    }
}

/// Dijkstra rows computed on first use and kept per source.
#[derive(Debug)]
pub struct LazyDijkstra<'a> {
    h: &'a WeightedGraph,
    rows: HashMap<usize, DistanceVector>,
}

impl<'a> LazyDijkstra<'a> {
    pub fn new(h: &'a WeightedGraph) -> Self {
        Self {
            h,
            rows: HashMap::new(),
        }
    }
}

impl EmulatorDistances for LazyDijkstra<'_> {
    fn distance(&mut self, u: usize, v: usize) -> Option<Weight> {
        let h = self.h;
        self.rows
            .entry(u)
            .or_insert_with(|| dijkstra_distances(h, u).expect("path vertices are in range"))
            .get(v)
    }
}

/// Whether every pair on `path[..=k]` has emulator error at most `r_hat`.
/// `path` must be a shortest path, so `d_G(path[i], path[j]) = j - i`.
pub fn prefix_feasible<D: EmulatorDistances + ?Sized>(
    path: &[usize],
    h: &mut D,
    r_hat: u64,
    k: usize,
) -> bool {
    feasible_by(path, h, r_hat, k, &|i, j| Some((j - i) as u64))
}

fn feasible_by<D, F>(path: &[usize], h: &mut D, r_hat: u64, k: usize, dist_g: &F) -> bool
where
    D: EmulatorDistances + ?Sized,
    F: Fn(usize, usize) -> Option<u64>,
{
    (1..=k).all(|j| {
        (0..j).all(|i| match (h.distance(path[i], path[j]), dist_g(i, j)) {
            (Some(dh), Some(dg)) => u64::from(dh) <= dg + r_hat,
            (_, None) => true,
            (None, Some(_)) => false,
        })
    })
}

fn frontier_by<D, F>(path: &[usize], h: &mut D, r_hat: u64, dist_g: &F) -> usize
where
    D: EmulatorDistances + ?Sized,
    F: Fn(usize, usize) -> Option<u64>,
{
    if path.is_empty() {
        return 0;
    }
    let (mut lo, mut hi) = (0, path.len() - 1);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if feasible_by(path, h, r_hat, mid, dist_g) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// Index of `x`: the farthest vertex of `path` from its start such that the
/// prefix ending there is pairwise within `r_hat` additive error.
///
/// `path` must be a shortest path in G. Feasibility is monotone in the
/// prefix length (a bad pair stays inside every longer prefix), so this
/// binary-searches.
pub fn find_prefix_frontier<D: EmulatorDistances + ?Sized>(
    path: &[usize],
    h: &mut D,
    r_hat: u64,
) -> usize {
    frontier_by(path, h, r_hat, &|i, j| Some((j - i) as u64))
}

/// [`find_prefix_frontier`] for an arbitrary vertex sequence, measuring
/// G-distances with `dist_g` instead of path positions.
pub fn find_prefix_frontier_in<D: EmulatorDistances + ?Sized>(
    path: &[usize],
    dist_g: &DistanceMatrix,
    h: &mut D,
    r_hat: u64,
) -> usize {
    frontier_by(path, h, r_hat, &|i, j| {
        dist_g.get(path[i], path[j]).map(u64::from)
    })
}

/// Index of `y`: mirror of [`find_prefix_frontier`] measured from the end.
pub fn find_suffix_frontier<D: EmulatorDistances + ?Sized>(
    path: &[usize],
    h: &mut D,
    r_hat: u64,
) -> usize {
    if path.is_empty() {
        return 0;
    }
    let reversed: Vec<usize> = path.iter().rev().copied().collect();
    path.len() - 1 - find_prefix_frontier(&reversed, h, r_hat)
}

/// One iteration of the path-buying loop.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyRound {
    pub s: usize,
    pub t: usize,
    pub path: Vec<usize>,
    pub x: usize,
    pub y: usize,
    /// `None` when the prefix and suffix frontiers meet or cross.
    pub added_edge: Option<(usize, usize, Weight)>,
    /// `d_H(s, t) - d_G(s, t)` before the round; `None` if unreachable in H.
    pub error_before: Option<u64>,
    pub error_after: u64,
}

impl GreedyRound {
    pub fn is_degenerate(&self) -> bool {
        self.added_edge.is_none()
    }
}

/// Runs path buying on `h` until every connected pair of `g` has additive
/// error at most `factor * r_hat`. Returns the rounds in order.
pub fn greedy_phase(
    g: &Graph,
    h: &mut EmulatorEdges,
    r_hat: u64,
    factor: u32,
) -> Result<Vec<GreedyRound>> {
    let dist_g = DistanceMatrix::from_graph(g);
    greedy_phase_with(g, &dist_g, h, r_hat, factor)
}

pub(crate) fn greedy_phase_with(
    g: &Graph,
    dist_g: &DistanceMatrix,
    h: &mut EmulatorEdges,
    r_hat: u64,
    factor: u32,
) -> Result<Vec<GreedyRound>> {
    let n = g.n();
    if h.n() != n {
        return Err(Error::Parameter(format!(
            "emulator has {} vertices, graph has {n}",
            h.n()
        )));
    }
    let threshold = u64::from(factor) * r_hat;
    let mut dist_h = DistanceMatrix::from_weighted(&h.graph());
    let mut rounds = Vec::new();

    // Distances only shrink as edges are added, so a pair that passes once
    // stays good and a single lexicographic sweep suffices.
    for s in 0..n {
        for t in s + 1..n {
            let Some(dg) = dist_g.get(s, t) else { continue };
            let error_before = dist_h.get(s, t).map(|dh| u64::from(dh - dg.min(dh)));
            if error_before.is_some_and(|e| e <= threshold) {
                continue;
            }
            let path = path_in_matrix(g, dist_g, s, t);
            let xi = find_prefix_frontier(&path, &mut dist_h, r_hat);
            let yi = find_suffix_frontier(&path, &mut dist_h, r_hat);
            let (x, y) = (path[xi], path[yi]);
            let added_edge = if xi < yi {
                let w = (yi - xi) as Weight;
                h.insert(x, y, w, Provenance::Greedy);
                dist_h.insert_edge(x, y, w);
                Some((x, y, w))
            } else {
                None
            };
            let error_after = match dist_h.get(s, t) {
                Some(dh) if dh >= dg => u64::from(dh - dg),
                other => {
                    return Err(Error::Internal(format!(
                        "round on ({s}, {t}) left d_H = {other:?} against d_G = {dg}"
                    )))
                }
            };
            if error_after > 2 * r_hat {
                return Err(Error::Internal(format!(
                    "round on ({s}, {t}) did not repair the pair: error {error_after} > 2 * r_hat = {}",
                    2 * r_hat
                )));
            }
            rounds.push(GreedyRound {
                s,
                t,
                path,
                x,
                y,
                added_edge,
                error_before,
                error_after,
            });
        }
    }
    Ok(rounds)
}

/// Shortest `s`–`t` path; each vertex's predecessor is its lowest-id
/// neighbour one BFS layer closer to `s`.
fn path_in_matrix(g: &Graph, dist_g: &DistanceMatrix, s: usize, t: usize) -> Vec<usize> {
    let mut d = dist_g.get(s, t).expect("caller checked reachability");
    let mut path = Vec::with_capacity(d as usize + 1);
    path.push(t);
    let mut cur = t;
    while d > 0 {
        cur = g
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&p| dist_g.get(s, p) == Some(d - 1))
            .expect("BFS layers are consistent");
        path.push(cur);
        d -= 1;
    }
    path.reverse();
    path
}
