//! Seeded graph families used for experiments and tests.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum GeneratorSpec {
    /// Erdős–Rényi `G(n, p)`.
    Er { n: usize, p: f64 },
    /// `w x h` grid, vertex `(x, y)` has id `y * w + x`.
    Grid { w: usize, h: usize },
    Cycle { n: usize },
    /// Uniform random recursive tree: vertex `v` attaches to a uniform
    /// earlier vertex.
    Tree { n: usize },
    /// Random geometric graph on the unit square.
    Geo { n: usize, radius: f64 },
}

impl GeneratorSpec {
    pub fn vertex_count(&self) -> usize {
        match *self {
            GeneratorSpec::Er { n, .. }
            | GeneratorSpec::Cycle { n }
            | GeneratorSpec::Tree { n }
            | GeneratorSpec::Geo { n, .. } => n,
            GeneratorSpec::Grid { w, h } => w * h,
        }
    }

    /// The same family at a different vertex count. For `er`, `p * n` is
    /// kept fixed; grids stay square.
    pub fn with_size(&self, n: usize) -> GeneratorSpec {
        match *self {
            GeneratorSpec::Er { n: old, p } => GeneratorSpec::Er {
                n,
                p: (p * old as f64 / n.max(1) as f64).min(1.0),
            },
            GeneratorSpec::Grid { .. } => {
                let side = (n as f64).sqrt().round().max(1.0) as usize;
                GeneratorSpec::Grid { w: side, h: side }
            }
            GeneratorSpec::Cycle { .. } => GeneratorSpec::Cycle { n },
            GeneratorSpec::Tree { .. } => GeneratorSpec::Tree { n },
            GeneratorSpec::Geo { n: old, radius } => GeneratorSpec::Geo {
                n,
                // keep the expected degree n * pi * radius^2 fixed
                radius: radius * (old as f64 / n.max(1) as f64).sqrt(),
            },
        }
    }

    /// Deterministic given `(self, seed)`.
    pub fn generate(&self, seed: u64) -> Result<Graph> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        match *self {
            GeneratorSpec::Er { n, p } => {
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if rng.gen::<f64>() < p {
                            edges.push((u, v));
                        }
                    }
                }
                Graph::from_edges(n, edges)
            }
            GeneratorSpec::Grid { w, h } => {
                let mut edges = Vec::with_capacity(2 * w * h);
                for y in 0..h {
                    for x in 0..w {
                        let id = y * w + x;
                        if x + 1 < w {
                            edges.push((id, id + 1));
                        }
                        if y + 1 < h {
                            edges.push((id, id + w));
                        }
                    }
                }
                Graph::from_edges(w * h, edges)
            }
            GeneratorSpec::Cycle { n } => Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))),
            GeneratorSpec::Tree { n } => {
                Graph::from_edges(n, (1..n).map(|v| (rng.gen_range(0..v), v)).collect::<Vec<_>>())
            }
            GeneratorSpec::Geo { n, radius } => {
                let points: Vec<(f64, f64)> = (0..n).map(|_| (rng.gen(), rng.gen())).collect();
                let r2 = radius * radius;
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        let (dx, dy) = (points[u].0 - points[v].0, points[u].1 - points[v].1);
                        if dx * dx + dy * dy <= r2 {
                            edges.push((u, v));
                        }
                    }
                }
                Graph::from_edges(n, edges)
            }
        }
    }
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let unknown = || Error::UnknownGenerator(s.to_string());
        let parts: Vec<&str> = s.trim().split(':').collect();
        let int = |i: usize| parts.get(i).and_then(|t| t.parse::<usize>().ok()).ok_or_else(unknown);
        let real = |i: usize| {
            parts
                .get(i)
                .and_then(|t| t.parse::<f64>().ok())
                .filter(|x| x.is_finite() && *x >= 0.0)
                .ok_or_else(unknown)
        };
        let spec = match (parts[0], parts.len()) {
            ("er", 3) => {
                let p = real(2)?;
                if p > 1.0 {
                    return Err(unknown());
                }
                GeneratorSpec::Er { n: int(1)?, p }
            }
            ("grid", 3) => GeneratorSpec::Grid { w: int(1)?, h: int(2)? },
            ("cycle", 2) => {
                let n = int(1)?;
                if n < 3 {
                    return Err(unknown());
                }
                GeneratorSpec::Cycle { n }
            }
            ("tree", 2) => GeneratorSpec::Tree { n: int(1)? },
            ("geo", 3) => GeneratorSpec::Geo { n: int(1)?, radius: real(2)? },
            _ => return Err(unknown()),
        };
        Ok(spec)
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Er { n, p } => write!(f, "er:{n}:{p}"),
            GeneratorSpec::Grid { w, h } => write!(f, "grid:{w}:{h}"),
            GeneratorSpec::Cycle { n } => write!(f, "cycle:{n}"),
            GeneratorSpec::Tree { n } => write!(f, "tree:{n}"),
            GeneratorSpec::Geo { n, radius } => write!(f, "geo:{n}:{radius}"),
        }
    }
}

/// Parses `spec` and generates it.
pub fn generate(spec: &str, seed: u64) -> Result<Graph> {
    spec.parse::<GeneratorSpec>()?.generate(seed)
}
