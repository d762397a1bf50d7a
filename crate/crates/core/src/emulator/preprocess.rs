use std::time::Instant;

use serde::Serialize;

use crate::cluster::{cluster_decompose, ClusterDecomposition};
use crate::distance::{bfs_distances, DistanceMatrix, DistanceVector};
use crate::error::{Error, Result};
use crate::graph::{Graph, Weight};
use crate::spanner::{default_stretch, greedy_multiplicative_spanner};

use super::build::{build_connected, PhaseTimings};
use super::params::{EmulatorConfig, EmulatorParams};
use super::sample::{sample_vertices, SampleSet};
use super::{derive_seed, EmulatorEdges, Provenance};

/// Output of the preprocessing phase on one connected graph.
#[derive(Debug, Clone, Serialize)]
pub struct Preprocessed {
    #[serde(skip)]
    pub edges: EmulatorEdges,
    pub decomposition: ClusterDecomposition,
    pub sample: SampleSet,
    /// Parameters with `r_hat` possibly raised to the required minimum.
    pub params: EmulatorParams,
    /// `ceil(r * n^(c eps))` before any adjustment.
    pub r_hat_formula: u64,
    /// `4 * max_i r_i * log n`.
    pub r_hat_required: u64,
    pub small_clusters: usize,
    pub large_clusters: usize,
    /// Greedy rounds run inside recursive calls.
    pub nested_rounds: usize,
    pub timings: PhaseTimings,
}

/// Whether a cluster ball of this size counts as small:
/// `|ball| <= r^2 / log^2 n`.
pub(crate) fn is_small(ball_len: usize, r: usize, log_n: usize) -> bool {
    (ball_len as f64) <= (r * r) as f64 / (log_n * log_n) as f64
}

/// All pairs of sampled ball members, weighted with their distance in G.
pub fn handle_small_cluster(
    g: &Graph,
    ball: &[usize],
    sample: &SampleSet,
) -> Result<Vec<(usize, usize, Weight)>> {
    let members: Vec<usize> = ball.iter().copied().filter(|&v| sample.contains(v)).collect();
    let mut rows = Vec::with_capacity(members.len());
    for &s in &members {
        rows.push(bfs_distances(g, s)?);
    }
    small_cluster_edges(&members, |i, v| rows[i].get(v))
}

fn small_cluster_edges<F>(members: &[usize], dist: F) -> Result<Vec<(usize, usize, Weight)>>
where
    F: Fn(usize, usize) -> Option<Weight>,
{
    let mut out = Vec::with_capacity(members.len() * members.len().saturating_sub(1) / 2);
    for (i, &s) in members.iter().enumerate() {
        for &t in &members[i + 1..] {
            let w = dist(i, t).ok_or_else(|| {
                Error::Internal(format!("ball members {s} and {t} are disconnected"))
            })?;
            out.push((s, t, w));
        }
    }
    Ok(out)
}

/// A level `level - 1` emulator of `G[ball]`, in global vertex ids.
/// Weights are distances inside the induced subgraph's emulator, never
/// below the distance in G.
pub fn handle_large_cluster(
    g: &Graph,
    ball: &[usize],
    level: usize,
    config: &EmulatorConfig,
    seed: u64,
) -> Result<Vec<(usize, usize, Weight)>> {
    Ok(large_cluster_edges(g, ball, level, config, seed)?.0)
}

fn large_cluster_edges(
    g: &Graph,
    ball: &[usize],
    level: usize,
    config: &EmulatorConfig,
    seed: u64,
) -> Result<(Vec<(usize, usize, Weight)>, usize)> {
    if level == 0 {
        return Err(Error::Parameter("large clusters need level >= 1".into()));
    }
    let (sub, map) = g.induced_subgraph(ball)?;
    let built = build_connected(&sub, level - 1, config, seed, false)?;
    let edges = built
        .edges
        .iter()
        .map(|e| (map.global(e.u), map.global(e.v), e.weight))
        .collect();
    Ok((edges, built.round_count))
}

/// Spanner, sampling, clustering, and per-cluster edges for a connected
/// graph. `dist_g`, when given, must be the all-pairs distances of `g`.
pub fn preprocess(
    g: &Graph,
    params: &EmulatorParams,
    config: &EmulatorConfig,
) -> Result<Preprocessed> {
    preprocess_with(g, params, config, None)
}

pub(crate) fn preprocess_with(
    g: &Graph,
    params: &EmulatorParams,
    config: &EmulatorConfig,
    dist_g: Option<&DistanceMatrix>,
) -> Result<Preprocessed> {
    config.validate()?;
    let n = g.n();
    let mut params = params.clone();
    let mut edges = EmulatorEdges::new(n);
    let mut timings = PhaseTimings::default();

    let started = Instant::now();
    let spanner = greedy_multiplicative_spanner(g, default_stretch(n))?;
    for &(u, v) in &spanner.edges {
        edges.insert(u, v, 1, Provenance::Spanner);
    }
    timings.spanner_ms += elapsed_ms(started);

    let started = Instant::now();
    let sample = sample_vertices(g, &params);
    timings.sampling_ms += elapsed_ms(started);

    let started = Instant::now();
    let decomposition = if n == 0 {
        ClusterDecomposition {
            centers: vec![],
            radii: vec![],
            balls: vec![],
            cores: vec![],
            core_of: vec![],
            newly_covered: vec![],
            uncovered_in_ball: vec![],
            growth_threshold: 1.0,
            base_radius: params.r,
            max_doublings: 0,
        }
    } else {
        cluster_decompose(g, params.r, params.epsilon)?
    };
    timings.clustering_ms += elapsed_ms(started);

    let log_n = config.log_eff(n);
    let r_hat_formula = params.r_hat;
    let r_hat_required = 4 * decomposition.max_radius() as u64 * log_n as u64;
    if params.r_hat < r_hat_required {
        if config.strict_r_hat {
            return Err(Error::Configuration {
                r_hat: params.r_hat,
                required: r_hat_required,
                c: config.c,
            });
        }
        params.r_hat = r_hat_required;
    }

    let started = Instant::now();
    let mut small_clusters = 0;
    let mut large_clusters = 0;
    let mut nested_rounds = 0;
    let mut bfs_cache: Vec<Option<DistanceVector>> = vec![None; if dist_g.is_some() { 0 } else { n }];
    for (i, ball) in decomposition.balls.iter().enumerate() {
        if is_small(ball.len(), params.r, log_n) {
            small_clusters += 1;
            let members: Vec<usize> =
                ball.iter().copied().filter(|&v| sample.contains(v)).collect();
            let pairs = match dist_g {
                Some(matrix) => small_cluster_edges(&members, |a, v| matrix.get(members[a], v))?,
                None => {
                    for &s in &members {
                        if bfs_cache[s].is_none() {
                            bfs_cache[s] = Some(bfs_distances(g, s)?);
                        }
                    }
                    small_cluster_edges(&members, |a, v| {
                        bfs_cache[members[a]].as_ref().and_then(|row| row.get(v))
                    })?
                }
            };
            for (s, t, w) in pairs {
                edges.insert(s, t, w, Provenance::SmallCluster);
            }
        } else {
            large_clusters += 1;
            let child_seed = derive_seed(params.seed, i as u64 + 1);
            let (pairs, rounds) = large_cluster_edges(g, ball, params.level, config, child_seed)?;
            nested_rounds += rounds;
            for (s, t, w) in pairs {
                edges.insert(s, t, w, Provenance::Recursive);
            }
        }
    }
    timings.clusters_ms += elapsed_ms(started);

    Ok(Preprocessed {
        edges,
        decomposition,
        sample,
        params,
        r_hat_formula,
        r_hat_required,
        small_clusters,
        large_clusters,
        nested_rounds,
        timings,
    })
}

pub(crate) fn elapsed_ms(started: Instant) -> f64 {
    started.elapsed().as_secs_f64() * 1e3
}
