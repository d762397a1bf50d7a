use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spanner::log2_ceil_eff;

use super::schedule::exponent_schedule;

/// User-facing knobs shared by every level of the construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmulatorConfig {
    pub epsilon: f64,
    /// Exponent multiplier in `r_hat = r * n^(c * eps)`.
    pub c: f64,
    /// `p = min(1, sample_const * ln n / r)`.
    pub sample_const: f64,
    pub seed: u64,
    /// Greedy loop runs while some pair has error above `greedy_factor * r_hat`.
    pub greedy_factor: u32,
    /// Base of the logarithm in the small-cluster threshold and the `r_hat` check.
    pub log_base: f64,
    /// Fail instead of raising `r_hat` when it is below `4 * max r_i * log n`.
    pub strict_r_hat: bool,
}

impl Default for EmulatorConfig {
    fn default() -> Self {
        Self {
            epsilon: 0.25,
            c: 3.0,
            sample_const: 3.0,
            seed: 0,
            greedy_factor: 16,
            log_base: 2.0,
            strict_r_hat: false,
        }
    }
}

impl EmulatorConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return Err(Error::Parameter(format!("epsilon must be in (0, 1), got {}", self.epsilon)));
        }
        if !(self.c.is_finite() && self.c >= 2.0) {
            return Err(Error::Parameter(format!("c must be at least 2, got {}", self.c)));
        }
        if !(self.sample_const.is_finite() && self.sample_const > 0.0) {
            return Err(Error::Parameter(format!(
                "sample constant must be positive, got {}",
                self.sample_const
            )));
        }
        if self.greedy_factor < 2 {
            return Err(Error::Parameter(format!(
                "greedy factor must be at least 2, got {}",
                self.greedy_factor
            )));
        }
        if !(self.log_base.is_finite() && self.log_base > 1.0) {
            return Err(Error::Parameter(format!("log base must exceed 1, got {}", self.log_base)));
        }
        Ok(())
    }

    /// `max(1, ceil(log_base n))`.
    pub fn log_eff(&self, n: usize) -> usize {
        if self.log_base == 2.0 {
            return log2_ceil_eff(n);
        }
        if n <= 1 {
            return 1;
        }
        let value = (n as f64).ln() / self.log_base.ln();
        (ceil_tolerant(value) as usize).max(1)
    }

    /// `max(1, ln n)`.
    pub fn ln_eff(n: usize) -> f64 {
        (n.max(1) as f64).ln().max(1.0)
    }
}

/// Per-instance parameters for one call of the construction at a level.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmulatorParams {
    pub n: usize,
    pub epsilon: f64,
    pub level: usize,
    /// Error exponent of the level below.
    pub alpha: f64,
    pub r: usize,
    pub r_hat: u64,
    pub c: f64,
    pub sample_const: f64,
    pub seed: u64,
}

impl EmulatorParams {
    /// `alpha = a_{level-1}`, `r = ceil(n^(1/(6-4 alpha)))`, `r_hat = ceil(r n^(c eps))`.
    pub fn new(n: usize, level: usize, config: &EmulatorConfig, seed: u64) -> Result<Self> {
        if level == 0 {
            return Err(Error::Parameter("level-0 emulators have no parameters".into()));
        }
        config.validate()?;
        let alpha = exponent_schedule(level - 1).at(level - 1);
        let nf = n.max(1) as f64;
        let r = (ceil_tolerant(nf.powf(1.0 / (6.0 - 4.0 * alpha))) as usize).clamp(1, n.max(1));
        let r_hat = ceil_tolerant(r as f64 * nf.powf(config.c * config.epsilon)).max(r as f64) as u64;
        Ok(Self {
            n,
            epsilon: config.epsilon,
            level,
            alpha,
            r,
            r_hat,
            c: config.c,
            sample_const: config.sample_const,
            seed,
        })
    }

    pub fn sample_probability(&self) -> f64 {
        (self.sample_const * EmulatorConfig::ln_eff(self.n) / self.r as f64).min(1.0)
    }
}

/// Ceiling that ignores floating-point noise just above an integer.
pub(crate) fn ceil_tolerant(x: f64) -> f64 {
    let rounded = x.round();
    if (x - rounded).abs() <= 1e-9 * rounded.abs().max(1.0) {
        rounded
    } else {
        x.ceil()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_one_uses_square_root() {
        let cfg = EmulatorConfig::default();
        let p = EmulatorParams::new(1024, 1, &cfg, 0).unwrap();
        assert_eq!(p.alpha, 1.0);
        assert_eq!(p.r, 32);
        // 32 * 1024^0.75 = 32 * 181.019...
        assert_eq!(p.r_hat, (32.0 * 1024f64.powf(0.75)).ceil() as u64);
        let p3 = EmulatorParams::new(1024, 3, &cfg, 0).unwrap();
        assert_eq!(p3.alpha, 0.25);
        assert_eq!(p3.r, 4); // 1024^(1/5)
    }

    #[test]
    fn tiny_graph_parameters() {
        let cfg = EmulatorConfig::default();
        let p = EmulatorParams::new(1, 2, &cfg, 0).unwrap();
        assert_eq!((p.r, p.r_hat), (1, 1));
        assert_eq!(p.sample_probability(), 1.0);
        assert!(EmulatorParams::new(5, 0, &cfg, 0).is_err());
    }

    #[test]
    fn config_validation() {
        let mut cfg = EmulatorConfig::default();
        assert!(cfg.validate().is_ok());
        cfg.epsilon = 1.0;
        assert!(cfg.validate().is_err());
        cfg = EmulatorConfig { greedy_factor: 1, ..Default::default() };
        assert!(cfg.validate().is_err());
        cfg = EmulatorConfig { c: 1.5, ..Default::default() };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn log_eff_other_bases() {
        let cfg = EmulatorConfig { log_base: 10.0, ..Default::default() };
        assert_eq!(cfg.log_eff(1000), 3);
        assert_eq!(cfg.log_eff(1001), 4);
        assert_eq!(cfg.log_eff(5), 1);
        assert_eq!(EmulatorConfig::default().log_eff(1000), 10);
    }

    #[test]
    fn ceil_tolerant_snaps() {
        assert_eq!(ceil_tolerant(32.000000000001), 32.0);
        assert_eq!(ceil_tolerant(32.1), 33.0);
    }
}
