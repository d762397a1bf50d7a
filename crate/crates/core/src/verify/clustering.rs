use serde::{Deserialize, Serialize};

use crate::cluster::ClusterDecomposition;
use crate::error::{Error, Result};
use crate::graph::Graph;

use super::oracle::oracle_bfs;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusteringCheck {
    pub passed: bool,
    pub coverage_ok: bool,
    pub consistency_ok: bool,
    pub radius_band_ok: bool,
    pub overlap_ok: bool,
    pub uncovered: Vec<usize>,
    pub overlap_ratio: f64,
    pub slack: f64,
    pub clusters: usize,
    pub failures: Vec<String>,
}

/// Checks coverage, ball/core consistency, the radius band and
/// `overlap_ratio <= slack` against fresh BFS from every center.
pub fn verify_clustering(
    g: &Graph,
    dec: &ClusterDecomposition,
    slack: f64,
) -> Result<ClusteringCheck> {
    let n = g.n();
    let k = dec.centers.len();
    if dec.radii.len() != k || dec.balls.len() != k || dec.cores.len() != k || dec.core_of.len() != n {
        return Err(Error::Parameter("decomposition fields have inconsistent lengths".into()));
    }
    let mut failures = Vec::new();

    let mut consistency_ok = true;
    let mut radius_band_ok = true;
    let mut in_some_core = vec![false; n];
    let cap = dec.radius_cap();
    for i in 0..k {
        let (center, radius) = (dec.centers[i], dec.radii[i]);
        if center >= n {
            return Err(Error::VertexOutOfRange { vertex: center, n });
        }
        if radius < dec.base_radius || radius > cap {
            radius_band_ok = false;
            failures.push(format!(
                "cluster {i}: radius {radius} outside [{}, {cap}]",
                dec.base_radius
            ));
        }
        let dist = oracle_bfs(g, center);
        let within = |limit: usize| -> Vec<usize> {
            (0..n)
                .filter(|&v| dist[v].is_some_and(|d| d as usize <= limit))
                .collect()
        };
        let expected_core = within(radius);
        let expected_ball = within(radius.saturating_mul(2));
        if dec.cores[i] != expected_core {
            consistency_ok = false;
            failures.push(format!("cluster {i}: core differs from B({center}, {radius})"));
        }
        if dec.balls[i] != expected_ball {
            consistency_ok = false;
            failures.push(format!("cluster {i}: ball differs from B({center}, {})", 2 * radius));
        }
        for &v in &dec.cores[i] {
            if v < n && dist[v].is_some_and(|d| d as usize <= radius) {
                in_some_core[v] = true;
            }
        }
    }

    let mut uncovered = Vec::new();
    for v in 0..n {
        let assigned = dec.core_of[v];
        let assigned_ok = assigned < k && dec.cores[assigned].binary_search(&v).is_ok();
        if !in_some_core[v] || !assigned_ok {
            uncovered.push(v);
        }
    }
    let coverage_ok = uncovered.is_empty();
    if let Some(&v) = uncovered.first() {
        failures.push(format!(
            "vertex {v} is not covered by its assigned core ({} uncovered in total)",
            uncovered.len()
        ));
    }

    let overlap_ratio = dec.overlap_ratio();
    let overlap_ok = overlap_ratio <= slack;
    if !overlap_ok {
        failures.push(format!("overlap ratio {overlap_ratio:.3} exceeds slack {slack:.3}"));
    }

    Ok(ClusteringCheck {
        passed: coverage_ok && consistency_ok && radius_band_ok && overlap_ok,
        coverage_ok,
        consistency_ok,
        radius_band_ok,
        overlap_ok,
        uncovered,
        overlap_ratio,
        slack,
        clusters: k,
        failures,
    })
}
