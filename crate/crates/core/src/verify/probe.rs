use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::emulator::{build_emulator, EmulatorConfig};
use crate::error::Result;
use crate::generate::GeneratorSpec;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeRow {
    pub spec: String,
    pub n: usize,
    pub graph_edges: usize,
    pub edges: usize,
    pub density: f64,
    pub components: usize,
    pub r_hat: Option<u64>,
    pub greedy_rounds: usize,
    pub build_ms: f64,
}

/// Builds an emulator for `family` resized to each of `sizes` and records
/// `|E(H)| / n`.
pub fn size_scaling_probe(
    family: &GeneratorSpec,
    sizes: &[usize],
    levels: usize,
    config: &EmulatorConfig,
) -> Result<Vec<ProbeRow>> {
    sizes
        .iter()
        .map(|&n| {
            let spec = family.with_size(n);
            let g = spec.generate(config.seed)?;
            let started = Instant::now();
            let emu = build_emulator(&g, levels, config)?;
            let build_ms = started.elapsed().as_secs_f64() * 1e3;
            let vertices = g.n();
            Ok(ProbeRow {
                spec: spec.to_string(),
                n: vertices,
                graph_edges: g.edge_count(),
                edges: emu.edge_count(),
                density: if vertices == 0 { 0.0 } else { emu.edge_count() as f64 / vertices as f64 },
                components: emu.components.len(),
                r_hat: emu.max_r_hat(),
                greedy_rounds: emu.rounds.len(),
                build_ms,
            })
        })
        .collect()
}

/// `density[i + 1] / density[i]` for consecutive rows.
pub fn density_ratios(rows: &[ProbeRow]) -> Vec<f64> {
    rows.windows(2).map(|w| w[1].density / w[0].density).collect()
}
