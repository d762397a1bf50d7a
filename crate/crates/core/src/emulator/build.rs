use std::ops::AddAssign;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::distance::DistanceMatrix;
use crate::error::Result;
use crate::graph::{Graph, WeightedGraph};

use super::greedy::{greedy_phase_with, GreedyRound};
use super::params::{EmulatorConfig, EmulatorParams};
use super::preprocess::{elapsed_ms, preprocess_with};
use super::{derive_seed, EmulatorEdge, EmulatorEdges, Provenance, ProvenanceCounts};

/// Wall-clock milliseconds per phase.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct PhaseTimings {
    pub spanner_ms: f64,
    pub sampling_ms: f64,
    pub clustering_ms: f64,
    /// Small-cluster edges plus recursive calls on large clusters.
    pub clusters_ms: f64,
    pub greedy_ms: f64,
}

impl AddAssign for PhaseTimings {
    fn add_assign(&mut self, rhs: Self) {
        self.spanner_ms += rhs.spanner_ms;
        self.sampling_ms += rhs.sampling_ms;
        self.clustering_ms += rhs.clustering_ms;
        self.clusters_ms += rhs.clusters_ms;
        self.greedy_ms += rhs.greedy_ms;
    }
}

/// Parameters and counters for one connected component at the top level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentSummary {
    /// Smallest vertex id in the component.
    pub root: usize,
    pub vertices: usize,
    pub level: usize,
    pub alpha: Option<f64>,
    pub r: Option<usize>,
    pub r_hat: Option<u64>,
    pub r_hat_formula: Option<u64>,
    pub r_hat_required: Option<u64>,
    pub clusters: usize,
    pub small_clusters: usize,
    pub large_clusters: usize,
    pub max_cluster_radius: usize,
    pub overlap_ratio: f64,
    pub sample_size: usize,
    pub sample_probability: Option<f64>,
    pub greedy_rounds: usize,
    pub nested_greedy_rounds: usize,
    /// Additive error guaranteed for pairs inside this component.
    pub error_bound: u64,
}

/// A finished emulator: weighted edges with provenance, plus the
/// per-component parameters that determine its error guarantee.
#[derive(Debug, Clone)]
pub struct Emulator {
    pub n: usize,
    pub levels: usize,
    pub config: EmulatorConfig,
    edges: EmulatorEdges,
    pub components: Vec<ComponentSummary>,
    /// Top-level greedy rounds, in global vertex ids.
    pub rounds: Vec<GreedyRound>,
    pub timings: PhaseTimings,
}

impl Emulator {
    pub fn edges(&self) -> impl Iterator<Item = EmulatorEdge> + '_ {
        self.edges.iter()
    }

    pub fn edge_set(&self) -> &EmulatorEdges {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn counts(&self) -> ProvenanceCounts {
        self.edges.counts()
    }

    pub fn graph(&self) -> WeightedGraph {
        self.edges.graph()
    }

    /// Largest `r_hat` over components built at level >= 1.
    pub fn max_r_hat(&self) -> Option<u64> {
        self.components.iter().filter_map(|c| c.r_hat).max()
    }

    /// The additive error every same-component pair is guaranteed to meet:
    /// `greedy_factor * r_hat` at level >= 1, `size - 1` at level 0.
    pub fn error_bound(&self) -> u64 {
        self.components.iter().map(|c| c.error_bound).max().unwrap_or(0)
    }

    /// `u v w` lines sorted by `(u, v)`, with an `# n=<k>` header.
    pub fn to_weighted_edge_list(&self) -> String {
        self.graph().to_weighted_edge_list()
    }

    /// JSON sidecar describing parameters, provenance counts and
    /// components. Timings are only included on request, so the default
    /// output is reproducible byte for byte.
    pub fn sidecar(&self, include_timings: bool) -> serde_json::Value {
        let counts = self.counts();
        let mut value = serde_json::json!({
            "schema": 1,
            "n": self.n,
            "levels": self.levels,
            "edges": self.edge_count(),
            "edges_per_vertex": if self.n == 0 { 0.0 } else { self.edge_count() as f64 / self.n as f64 },
            "config": self.config,
            "provenance": counts,
            "r_hat": self.max_r_hat(),
            "error_bound": self.error_bound(),
            "greedy_rounds": self.rounds.len(),
            "components": self.components,
        });
        if include_timings {
            value["timings_ms"] = serde_json::to_value(self.timings).expect("plain struct");
        }
        value
    }
}

/// Output of the construction on one connected graph, in its local ids.
pub(crate) struct Built {
    pub edges: EmulatorEdges,
    pub summary: ComponentSummary,
    pub rounds: Vec<GreedyRound>,
    pub round_count: usize,
    pub timings: PhaseTimings,
}

/// Builds a level-`levels` emulator of `g`, one connected component at a
/// time. Level 0 is a spanning forest.
pub fn build_emulator(g: &Graph, levels: usize, config: &EmulatorConfig) -> Result<Emulator> {
    config.validate()?;
    let n = g.n();
    let mut edges = EmulatorEdges::new(n);
    let mut components = Vec::new();
    let mut rounds = Vec::new();
    let mut timings = PhaseTimings::default();

    let parts = g.connected_components();
    let single = parts.len() == 1;
    for (index, part) in parts.iter().enumerate() {
        let seed = derive_seed(config.seed, index as u64);
        let (sub, map) = if single {
            (None, None)
        } else {
            let (sub, map) = g.induced_subgraph(part)?;
            (Some(sub), Some(map))
        };
        let local_graph = sub.as_ref().unwrap_or(g);
        let global = |v: usize| map.as_ref().map_or(v, |m| m.global(v));

        let mut built = build_connected(local_graph, levels, config, seed, true)?;
        built.summary.root = part[0];
        for e in built.edges.iter() {
            edges.insert(global(e.u), global(e.v), e.weight, e.provenance);
        }
        for mut round in built.rounds.drain(..) {
            round.s = global(round.s);
            round.t = global(round.t);
            round.x = global(round.x);
            round.y = global(round.y);
            round.path.iter_mut().for_each(|v| *v = global(*v));
            round.added_edge = round.added_edge.map(|(a, b, w)| (global(a), global(b), w));
            rounds.push(round);
        }
        timings += built.timings;
        components.push(built.summary);
    }

    Ok(Emulator {
        n,
        levels,
        config: config.clone(),
        edges,
        components,
        rounds,
        timings,
    })
}

/// The construction on a connected graph.
pub(crate) fn build_connected(
    g: &Graph,
    level: usize,
    config: &EmulatorConfig,
    seed: u64,
    keep_rounds: bool,
) -> Result<Built> {
    let n = g.n();
    if level == 0 || n <= 1 {
        let mut edges = EmulatorEdges::new(n);
        let started = Instant::now();
        for (u, v) in g.spanning_forest() {
            edges.insert(u, v, 1, Provenance::Spanner);
        }
        let timings = PhaseTimings {
            spanner_ms: elapsed_ms(started),
            ..Default::default()
        };
        return Ok(Built {
            edges,
            summary: ComponentSummary {
                root: 0,
                vertices: n,
                level,
                alpha: None,
                r: None,
                r_hat: None,
                r_hat_formula: None,
                r_hat_required: None,
                clusters: 0,
                small_clusters: 0,
                large_clusters: 0,
                max_cluster_radius: 0,
                overlap_ratio: 0.0,
                sample_size: 0,
                sample_probability: None,
                greedy_rounds: 0,
                nested_greedy_rounds: 0,
                error_bound: n.saturating_sub(1) as u64,
            },
            rounds: Vec::new(),
            round_count: 0,
            timings,
        });
    }

    let params = EmulatorParams::new(n, level, config, seed)?;
    let dist_g = DistanceMatrix::from_graph(g);
    let pre = preprocess_with(g, &params, config, Some(&dist_g))?;
    let mut edges = pre.edges;
    let mut timings = pre.timings;
    let r_hat = pre.params.r_hat;

    let started = Instant::now();
    let rounds = greedy_phase_with(g, &dist_g, &mut edges, r_hat, config.greedy_factor)?;
    timings.greedy_ms += elapsed_ms(started);

    let summary = ComponentSummary {
        root: 0,
        vertices: n,
        level,
        alpha: Some(params.alpha),
        r: Some(params.r),
        r_hat: Some(r_hat),
        r_hat_formula: Some(pre.r_hat_formula),
        r_hat_required: Some(pre.r_hat_required),
        clusters: pre.decomposition.len(),
        small_clusters: pre.small_clusters,
        large_clusters: pre.large_clusters,
        max_cluster_radius: pre.decomposition.max_radius(),
        overlap_ratio: pre.decomposition.overlap_ratio(),
        sample_size: pre.sample.len(),
        sample_probability: Some(pre.sample.probability),
        greedy_rounds: rounds.len(),
        nested_greedy_rounds: pre.nested_rounds,
        error_bound: u64::from(config.greedy_factor) * r_hat,
    };
    let round_count = rounds.len() + pre.nested_rounds;
    Ok(Built {
        edges,
        summary,
        rounds: if keep_rounds { rounds } else { Vec::new() },
        round_count,
        timings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn level_zero_is_spanning_forest() {
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (2, 0), (3, 4), (5, 6)]).unwrap();
        let emu = build_emulator(&g, 0, &EmulatorConfig::default()).unwrap();
        assert_eq!(emu.edge_count(), 7 - 3);
        assert!(emu.edges().all(|e| e.weight == 1 && g.has_edge(e.u, e.v)));
        assert_eq!(emu.error_bound(), 2);
        assert_eq!(emu.components.len(), 3);
    }

    #[test]
    fn level_one_on_path_is_the_path() {
        let g = path(50);
        let emu = build_emulator(&g, 1, &EmulatorConfig::default()).unwrap();
        let mut pairs: Vec<_> = emu.edges().filter(|e| e.weight == 1).map(|e| (e.u, e.v)).collect();
        pairs.sort_unstable();
        assert_eq!(pairs, g.edges().collect::<Vec<_>>());
        assert!(emu.rounds.is_empty());
        // any extra edges are exact shortcuts
        assert!(emu.edges().all(|e| e.weight as usize == e.v - e.u));
    }

    #[test]
    fn empty_and_singleton_graphs() {
        let cfg = EmulatorConfig::default();
        let emu = build_emulator(&Graph::empty(0), 2, &cfg).unwrap();
        assert_eq!(emu.edge_count(), 0);
        let emu = build_emulator(&Graph::empty(1), 2, &cfg).unwrap();
        assert_eq!(emu.edge_count(), 0);
        assert_eq!(emu.error_bound(), 0);
    }

    #[test]
    fn sidecar_without_timings_is_stable() {
        let g = path(20);
        let cfg = EmulatorConfig::default();
        let a = build_emulator(&g, 2, &cfg).unwrap().sidecar(false);
        let b = build_emulator(&g, 2, &cfg).unwrap().sidecar(false);
        assert_eq!(a, b);
        assert_eq!(a["schema"], 1);
        assert!(a.get("timings_ms").is_none());
        let t = build_emulator(&g, 2, &cfg).unwrap().sidecar(true);
        assert!(t.get("timings_ms").is_some());
    }
}
