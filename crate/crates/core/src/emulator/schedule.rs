use serde::{Deserialize, Serialize};

/// Error exponents of successive recursion levels: `a_0 = 1`,
/// `a_{i+1} = 1 / (6 - 4 a_i)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentSchedule {
    pub a: Vec<f64>,
}

impl ExponentSchedule {
    /// Exponent at level `i`. Panics if `i` exceeds the computed levels.
    pub fn at(&self, i: usize) -> f64 {
        self.a[i]
    }

    pub fn levels(&self) -> usize {
        self.a.len() - 1
    }
}

/// `a_0 ..= a_levels`.
pub fn exponent_schedule(levels: usize) -> ExponentSchedule {
    let mut a = Vec::with_capacity(levels + 1);
    a.push(1.0);
    for i in 0..levels {
        a.push(1.0 / (6.0 - 4.0 * a[i]));
    }
    ExponentSchedule { a }
}
