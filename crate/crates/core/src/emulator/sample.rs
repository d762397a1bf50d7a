use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::graph::Graph;

use super::params::EmulatorParams;

/// The sampled vertex set `V'`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleSet {
    pub members: Vec<usize>,
    pub probability: f64,
    #[serde(skip)]
    mask: Vec<bool>,
}

impl SampleSet {
    pub fn contains(&self, v: usize) -> bool {
        self.mask.get(v).copied().unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// A sample with explicit members, for tests and diagnostics.
    pub fn from_members(n: usize, members: impl IntoIterator<Item = usize>, probability: f64) -> Self {
        let mut mask = vec![false; n];
        for v in members {
            mask[v] = true;
        }
        let members = (0..n).filter(|&v| mask[v]).collect();
        Self {
            members,
            probability,
            mask,
        }
    }
}

/// Includes each vertex independently with `params.sample_probability()`.
/// One uniform draw per vertex in id order, so the result depends only on
/// `(n, p, seed)`.
pub fn sample_vertices(g: &Graph, params: &EmulatorParams) -> SampleSet {
    let p = params.sample_probability();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mask: Vec<bool> = (0..g.n()).map(|_| rng.gen::<f64>() < p).collect();
    let members = (0..g.n()).filter(|&v| mask[v]).collect();
    SampleSet {
        members,
        probability: p,
        mask,
    }
}
