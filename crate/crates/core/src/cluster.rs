//! Ball-growing cluster decomposition.
//!
//! Every vertex ends up in the core `B(v_i, r_i)` of some cluster, and the
//! clusters `B(v_i, 2 r_i)` have bounded total size relative to `n`.

use serde::{Deserialize, Serialize};

use crate::distance::ball_with;
use crate::error::{Error, Result};
use crate::graph::{Graph, Weight};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterDecomposition {
    pub centers: Vec<usize>,
    pub radii: Vec<usize>,
    /// `B(center, 2 * radius)`, sorted.
    pub balls: Vec<Vec<usize>>,
    /// `B(center, radius)`, sorted.
    pub cores: Vec<Vec<usize>>,
    /// Index of the first cluster whose core contains each vertex.
    pub core_of: Vec<usize>,
    /// Vertices first covered by each cluster.
    pub newly_covered: Vec<usize>,
    /// Uncovered vertices inside each cluster ball when it was emitted.
    pub uncovered_in_ball: Vec<usize>,
    /// The `n^eps` growth threshold used while growing balls.
    pub growth_threshold: f64,
    pub base_radius: usize,
    pub max_doublings: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterSummary {
    pub index: usize,
    pub center: usize,
    pub radius: usize,
    pub core_size: usize,
    pub ball_size: usize,
}

impl ClusterDecomposition {
    pub fn len(&self) -> usize {
        self.centers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.centers.is_empty()
    }

    /// `sum_i |B(v_i, 2 r_i)| / n`.
    pub fn overlap_ratio(&self) -> f64 {
        let n = self.core_of.len();
        if n == 0 {
            return 0.0;
        }
        self.balls.iter().map(Vec::len).sum::<usize>() as f64 / n as f64
    }

    pub fn max_radius(&self) -> usize {
        self.radii.iter().copied().max().unwrap_or(0)
    }

    /// Upper end of the radius band, `r * 2^ceil(1/eps)`, saturating.
    pub fn radius_cap(&self) -> usize {
        self.base_radius
            .checked_shl(self.max_doublings)
            .filter(|cap| cap >> self.max_doublings == self.base_radius)
            .unwrap_or(usize::MAX)
    }

    pub fn summary(&self) -> Vec<ClusterSummary> {
        (0..self.len())
            .map(|i| ClusterSummary {
                index: i,
                center: self.centers[i],
                radius: self.radii[i],
                core_size: self.cores[i].len(),
                ball_size: self.balls[i].len(),
            })
            .collect()
    }
}

/// `C(v)`: the cluster whose core was assigned to `v`.
pub fn core_of(dec: &ClusterDecomposition, v: usize) -> Result<usize> {
    let n = dec.core_of.len();
    let &i = dec
        .core_of
        .get(v)
        .ok_or(Error::VertexOutOfRange { vertex: v, n })?;
    if dec.cores.get(i).is_some_and(|core| core.binary_search(&v).is_ok()) {
        Ok(i)
    } else {
        Err(Error::Uncovered { vertex: v })
    }
}

/// Grows clusters around the lowest-id uncovered vertex.
///
/// Starting from radius `r`, the radius doubles while the uncovered mass in
/// `B(v, 2 rho)` exceeds `n^eps` times the uncovered mass in `B(v, rho)`.
/// At most `ceil(1/eps)` doublings happen, so every radius lies in
/// `[r, r * 2^ceil(1/eps)]`.
pub fn cluster_decompose(g: &Graph, r: usize, epsilon: f64) -> Result<ClusterDecomposition> {
    let n = g.n();
    if r < 1 || r > n.max(1) {
        return Err(Error::Parameter(format!("cluster radius must be in [1, n={n}], got {r}")));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::Parameter(format!("epsilon must be in (0, 1), got {epsilon}")));
    }
    let growth = (n.max(1) as f64).powf(epsilon);
    let max_doublings = (1.0 / epsilon).ceil() as u32;

    let mut covered = vec![false; n];
    let mut scratch = vec![Weight::MAX; n];
    let mut dec = ClusterDecomposition {
        centers: Vec::new(),
        radii: Vec::new(),
        balls: Vec::new(),
        cores: Vec::new(),
        core_of: vec![usize::MAX; n],
        newly_covered: Vec::new(),
        uncovered_in_ball: Vec::new(),
        growth_threshold: growth,
        base_radius: r,
        max_doublings,
    };
    let uncovered_in = |set: &[usize], covered: &[bool]| set.iter().filter(|&&u| !covered[u]).count();

    let mut next = 0;
    while next < n {
        if covered[next] {
            next += 1;
            continue;
        }
        let center = next;
        let mut rho = r;
        let mut core = ball_with(g, center, rho, &mut scratch);
        let mut outer = ball_with(g, center, 2 * rho, &mut scratch);
        let mut doublings = 0;
        loop {
            let inner_mass = uncovered_in(&core, &covered);
            let outer_mass = uncovered_in(&outer, &covered);
            if (outer_mass as f64) <= growth * inner_mass as f64 || doublings == max_doublings {
                break;
            }
            doublings += 1;
            rho *= 2;
            core = outer;
            outer = ball_with(g, center, 2 * rho, &mut scratch);
        }
        let index = dec.centers.len();
        let uncovered_ball = uncovered_in(&outer, &covered);
        let mut fresh = 0;
        for &u in &core {
            if !covered[u] {
                covered[u] = true;
                dec.core_of[u] = index;
                fresh += 1;
            }
        }
        dec.centers.push(center);
        dec.radii.push(rho);
        dec.cores.push(core);
        dec.balls.push(outer);
        dec.newly_covered.push(fresh);
        dec.uncovered_in_ball.push(uncovered_ball);
    }
    Ok(dec)
}
