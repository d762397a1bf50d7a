//! Linear-size additive emulators for unweighted undirected graphs.
//!
//! An additive emulator `H` of a graph `G` is a weighted graph on the same
//! vertices with `d_G(u, v) <= d_H(u, v) <= d_G(u, v) + k` for every pair.
//! This crate builds emulators by recursive clustering, sampling and path
//! buying ([`emulator::build_emulator`]) and certifies them exactly with
//! independent all-pairs searches ([`verify`]).
//!
//! ```
//! use addemu_core::{build_emulator, generate, verify_emulator, EmulatorConfig};
//!
//! let g = generate("grid:8:8", 0).unwrap();
//! let emu = build_emulator(&g, 2, &EmulatorConfig::default()).unwrap();
//! let report = verify_emulator(&g, &emu.graph(), emu.error_bound(), Default::default()).unwrap();
//! assert!(report.passed());
//! ```

pub mod cluster;
pub mod distance;
pub mod emulator;
pub mod error;
pub mod generate;
pub mod graph;
pub mod spanner;
pub mod verify;

pub use cluster::{cluster_decompose, core_of, ClusterDecomposition};
pub use distance::{ball, bfs_distances, dijkstra_distances, DistanceMatrix, DistanceVector};
pub use emulator::{
    build_emulator, exponent_schedule, Emulator, EmulatorConfig, EmulatorParams, Provenance,
    ProvenanceCounts,
};
pub use error::{Error, Result};
pub use generate::{generate, GeneratorSpec};
pub use graph::{load_edge_list, load_weighted_edge_list, Graph, Weight, WeightedGraph};
pub use spanner::{greedy_multiplicative_spanner, SpannerResult};
pub use verify::{verify_clustering, verify_emulator, VerificationReport, VerifyOptions};
