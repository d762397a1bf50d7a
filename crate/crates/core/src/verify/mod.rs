//! Exact certification of emulators, clusterings and spanners.
//!
//! Everything here recomputes distances with the reference searches in
//! [`oracle`] rather than the construction's own primitives.

mod clustering;
mod gain;
pub mod oracle;
mod probe;

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::emulator::ProvenanceCounts;
use crate::error::{Error, Result};
use crate::graph::{Graph, WeightedGraph};

pub use clustering::{verify_clustering, ClusteringCheck};
pub use gain::pair_gain_diagnostic;
pub use oracle::{oracle_bfs, oracle_dijkstra};
pub use probe::{density_ratios, size_scaling_probe, ProbeRow};

/// Default cap on the vertex count for all-pairs checks.
pub const DEFAULT_MAX_VERIFY_N: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub max_n: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            max_n: DEFAULT_MAX_VERIFY_N,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub u: usize,
    pub v: usize,
    pub dist_g: u64,
    /// `None` when `u` and `v` are disconnected in H.
    pub dist_h: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub n: usize,
    pub bound: u64,
    /// Largest `d_H - d_G` over pairs connected in G; `None` if some such
    /// pair is disconnected in H.
    pub max_additive_error: Option<u64>,
    pub argmax_pair: Option<(usize, usize)>,
    /// Pairs with `d_H - d_G > bound`, including pairs disconnected in H.
    pub violating_pairs: u64,
    pub first_violation: Option<Violation>,
    pub pairs_checked: u64,
    pub edge_count: usize,
    pub edge_counts: Option<ProvenanceCounts>,
    pub edges_per_vertex: f64,
    pub overlap_ratio: Option<f64>,
    pub spanner_stretch_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<BTreeMap<String, f64>>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violating_pairs == 0
    }
}

#[derive(Default)]
struct PairStats {
    max_error: Option<(u64, usize, usize)>,
    violating: u64,
    first_violation: Option<Violation>,
    disconnected_in_h: bool,
    pairs: u64,
    underestimate: Option<(usize, usize, Option<u64>, Option<u64>)>,
}

impl PairStats {
    fn merge(mut self, other: PairStats) -> PairStats {
        self.max_error = match (self.max_error, other.max_error) {
            (Some(a), Some(b)) => Some(if b.0 > a.0 || (b.0 == a.0 && (b.1, b.2) < (a.1, a.2)) { b } else { a }),
            (a, b) => a.or(b),
        };
        self.violating += other.violating;
        self.first_violation = match (self.first_violation.take(), other.first_violation) {
            (Some(a), Some(b)) => Some(if (b.u, b.v) < (a.u, a.v) { b } else { a }),
            (a, b) => a.or(b),
        };
        self.disconnected_in_h |= other.disconnected_in_h;
        self.pairs += other.pairs;
        self.underestimate = match (self.underestimate, other.underestimate) {
            (Some(a), Some(b)) => Some(if (b.0, b.1) < (a.0, a.1) { b } else { a }),
            (a, b) => a.or(b),
        };
        self
    }
}

/// Dual all-pairs comparison of `h` against `g`.
///
/// Fails hard if any pair has `d_H < d_G` (including H joining vertices
/// that G keeps apart). Otherwise reports the additive error profile
/// against `bound`.
pub fn verify_emulator(
    g: &Graph,
    h: &WeightedGraph,
    bound: u64,
    options: VerifyOptions,
) -> Result<VerificationReport> {
    let n = g.n();
    if h.n() != n {
        return Err(Error::Parameter(format!(
            "emulator has {} vertices, graph has {n}",
            h.n()
        )));
    }
    if n > options.max_n {
        return Err(Error::Parameter(format!(
            "n = {n} exceeds the all-pairs verification cap {}; raise it explicitly",
            options.max_n
        )));
    }
    let started = Instant::now();
    let stats = (0..n)
        .into_par_iter()
        .map(|s| {
            let dg = oracle_bfs(g, s);
            let dh = oracle_dijkstra(h, s);
            let mut stats = PairStats::default();
            for t in s + 1..n {
                match (dg[t], dh[t]) {
                    (None, None) => {}
                    (Some(a), Some(b)) if b >= a => {
                        stats.pairs += 1;
                        let err = b - a;
                        if stats.max_error.is_none_or(|(m, _, _)| err > m) {
                            stats.max_error = Some((err, s, t));
                        }
                        if err > bound {
                            stats.violating += 1;
                            if stats.first_violation.is_none() {
                                stats.first_violation =
                                    Some(Violation { u: s, v: t, dist_g: a, dist_h: Some(b) });
                            }
                        }
                    }
                    (Some(a), None) => {
                        stats.pairs += 1;
                        stats.violating += 1;
                        stats.disconnected_in_h = true;
                        if stats.first_violation.is_none() {
                            stats.first_violation =
                                Some(Violation { u: s, v: t, dist_g: a, dist_h: None });
                        }
                    }
                    (a, b) => {
                        if stats.underestimate.is_none() {
                            stats.underestimate = Some((s, t, a, b));
                        }
                    }
                }
            }
            stats
        })
        .reduce(PairStats::default, PairStats::merge);

    if let Some((u, v, dist_g, dist_h)) = stats.underestimate {
        return Err(Error::Underestimate {
            u,
            v,
            dist_h: dist_h.unwrap_or(0),
            dist_g: dist_g.unwrap_or(u64::MAX),
        });
    }

    let mut runtime = BTreeMap::new();
    runtime.insert("all_pairs".to_string(), started.elapsed().as_secs_f64() * 1e3);
    let (max_additive_error, argmax_pair) = if stats.disconnected_in_h {
        (None, None)
    } else {
        match stats.max_error {
            Some((e, u, v)) => (Some(e), Some((u, v))),
            None => (Some(0), None),
        }
    };
    Ok(VerificationReport {
        schema: 1,
        n,
        bound,
        max_additive_error,
        argmax_pair,
        violating_pairs: stats.violating,
        first_violation: stats.first_violation,
        pairs_checked: stats.pairs,
        edge_count: h.edge_count(),
        edge_counts: None,
        edges_per_vertex: if n == 0 { 0.0 } else { h.edge_count() as f64 / n as f64 },
        overlap_ratio: None,
        spanner_stretch_max: None,
        runtime_ms: Some(runtime),
    })
}

/// Largest `d_S(u, v) / d_G(u, v)` over distinct pairs connected in G,
/// where S is the unit-weight subgraph on `edges`. Infinite if S
/// disconnects such a pair.
pub fn spanner_stretch(g: &Graph, edges: &[(usize, usize)]) -> f64 {
    let n = g.n();
    let s = oracle::unit_graph(n, edges.iter().copied());
    (0..n)
        .into_par_iter()
        .map(|u| {
            let dg = oracle_bfs(g, u);
            let ds = oracle_dijkstra(&s, u);
            (u + 1..n)
                .filter_map(|v| {
                    let a = dg[v]?;
                    Some(ds[v].map_or(f64::INFINITY, |b| b as f64 / a as f64))
                })
                .fold(1.0f64, f64::max)
        })
        .reduce(|| 1.0, f64::max)
}
