//! Additive emulator construction.
//!
//! A level-`L` emulator of a connected graph is built in two phases:
//!
//! 1. *Preprocessing*: a greedy `O(log n)`-stretch spanner, a random vertex
//!    sample `V'`, and a ball-growing cluster decomposition. Small clusters
//!    get all pairwise edges between their sampled members; large clusters
//!    are handed to a level-`L-1` emulator of the induced subgraph.
//! 2. *Path buying*: while some pair has additive error above
//!    `16 * r_hat`, walk a shortest path between them, find the longest
//!    prefix and suffix that are already within `r_hat` pairwise, and add
//!    the edge joining their frontier vertices.
//!
//! Level 0 is a spanning forest.

mod build;
mod greedy;
mod params;
mod preprocess;
mod sample;
mod schedule;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::{Weight, WeightedGraph};

pub use build::{build_emulator, ComponentSummary, Emulator, PhaseTimings};
pub use greedy::{
    find_prefix_frontier, find_prefix_frontier_in, find_suffix_frontier, greedy_phase,
    prefix_feasible, EmulatorDistances,
    GreedyRound, LazyDijkstra,
};
pub use params::{EmulatorConfig, EmulatorParams};
pub use preprocess::{handle_large_cluster, handle_small_cluster, preprocess, Preprocessed};
pub use sample::{sample_vertices, SampleSet};
pub use schedule::{exponent_schedule, ExponentSchedule};

/// Which step of the construction produced an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Spanner,
    SmallCluster,
    Recursive,
    Greedy,
}

impl Provenance {
    pub const ALL: [Provenance; 4] = [
        Provenance::Spanner,
        Provenance::SmallCluster,
        Provenance::Recursive,
        Provenance::Greedy,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Spanner => "spanner",
            Provenance::SmallCluster => "small_cluster",
            Provenance::Recursive => "recursive",
            Provenance::Greedy => "greedy",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Edge counts per provenance tag.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceCounts {
    pub spanner: usize,
    pub small_cluster: usize,
    pub recursive: usize,
    pub greedy: usize,
}

impl ProvenanceCounts {
    pub fn total(&self) -> usize {
        self.spanner + self.small_cluster + self.recursive + self.greedy
    }

    pub fn get(&self, tag: Provenance) -> usize {
        match tag {
            Provenance::Spanner => self.spanner,
            Provenance::SmallCluster => self.small_cluster,
            Provenance::Recursive => self.recursive,
            Provenance::Greedy => self.greedy,
        }
    }

    fn bump(&mut self, tag: Provenance) {
        match tag {
            Provenance::Spanner => self.spanner += 1,
            Provenance::SmallCluster => self.small_cluster += 1,
            Provenance::Recursive => self.recursive += 1,
            Provenance::Greedy => self.greedy += 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmulatorEdge {
    pub u: usize,
    pub v: usize,
    pub weight: Weight,
    pub provenance: Provenance,
}

/// Mutable emulator edge set keyed by `(min, max)` endpoint.
///
/// Re-inserting an existing pair keeps the smaller weight; on equal weight
/// the original provenance stays.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EmulatorEdges {
    n: usize,
    map: BTreeMap<(usize, usize), (Weight, Provenance)>,
}

impl EmulatorEdges {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            map: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Returns `true` if the stored weight for the pair changed.
    pub fn insert(&mut self, u: usize, v: usize, weight: Weight, provenance: Provenance) -> bool {
        debug_assert!(u != v && u < self.n && v < self.n && weight > 0);
        let key = (u.min(v), u.max(v));
        match self.map.get_mut(&key) {
            Some(entry) if entry.0 <= weight => false,
            Some(entry) => {
                *entry = (weight, provenance);
                true
            }
            None => {
                self.map.insert(key, (weight, provenance));
                true
            }
        }
    }

    pub fn get(&self, u: usize, v: usize) -> Option<(Weight, Provenance)> {
        self.map.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = EmulatorEdge> + '_ {
        self.map.iter().map(|(&(u, v), &(weight, provenance))| EmulatorEdge {
            u,
            v,
            weight,
            provenance,
        })
    }

    pub fn counts(&self) -> ProvenanceCounts {
        let mut counts = ProvenanceCounts::default();
        for &(_, tag) in self.map.values() {
            counts.bump(tag);
        }
        counts
    }

    pub fn graph(&self) -> WeightedGraph {
        WeightedGraph::from_edges(self.n, self.map.iter().map(|(&(u, v), &(w, _))| (u, v, w)))
            .expect("emulator edges are validated on insert")
    }
}

/// SplitMix64 finaliser used to derive independent child seeds.
pub(crate) fn derive_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
