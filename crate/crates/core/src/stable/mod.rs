//! Symmetric α-stable processes: transition densities and samplers.
//!
//! The transition density has characteristic function `exp(-ν t |z|^α)` and
//! obeys the self-similarity `p(t, x) = t^{-1/α} p(1, t^{-1/α} x)`, so one
//! unit-time table serves every horizon.

mod density;
mod sampler;

pub use density::{build_density_grid, DensityGrid};
pub use sampler::{sample_bridge, sample_increment, sample_path};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

/// Stability exponent and scale of a symmetric stable semigroup.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StableParams {
    /// Stability index, in `(1, 2]`; `alpha = 2` is the Gaussian case.
    pub alpha: f64,
    /// Scale ν > 0, units of space^α / time.
    pub nu: f64,
}

impl StableParams {
    pub fn new(alpha: f64, nu: f64) -> Result<Self> {
        if !(alpha > 1.0 && alpha <= 2.0) {
            return Err(Error::invalid(format!(
                "alpha must lie in (1, 2], got {alpha}"
            )));
        }
        if !(nu > 0.0) || !nu.is_finite() {
            return Err(Error::invalid(format!("nu must be positive, got {nu}")));
        }
        Ok(StableParams { alpha, nu })
    }

    /// Spatial scale of the process at horizon `t`: `(2νt)^{1/α}`.
    pub fn scale(&self, t: f64) -> f64 {
        (2.0 * self.nu * t).powf(1.0 / self.alpha)
    }

    /// Exact L² norm of the density: `∫ p(s,x)² dx = Γ(1+1/α) / (π (2νs)^{1/α})`.
    pub fn density_l2(&self, s: f64) -> Result<f64> {
        if !(s > 0.0) {
            return Err(Error::invalid(format!("time must be positive, got {s}")));
        }
        let inv_alpha = 1.0 / self.alpha;
        Ok(gamma(1.0 + inv_alpha) / (std::f64::consts::PI * (2.0 * self.nu * s).powf(inv_alpha)))
    }
}

/// A discretized stable path (or bridge) on a strictly increasing time grid.
/// Paths start at the origin; between grid times the path is extended as a
/// right-continuous step function, matching càdlàg sample paths.
#[derive(Debug, Clone)]
pub struct PathSkeleton {
    pub times: Vec<f64>,
    pub positions: Vec<f64>,
    pub is_bridge: bool,
    pub endpoint: Option<f64>,
}

impl PathSkeleton {
    pub fn new(times: Vec<f64>, positions: Vec<f64>) -> Self {
        debug_assert_eq!(times.len(), positions.len());
        debug_assert_eq!(positions[0], 0.0);
        PathSkeleton {
            times,
            positions,
            is_bridge: false,
            endpoint: None,
        }
    }

    pub fn horizon(&self) -> f64 {
        *self.times.last().unwrap()
    }

    /// Right-continuous position at time `s`: the value at the last grid time
    /// not exceeding `s`.
    pub fn position_at(&self, s: f64) -> f64 {
        let idx = self.times.partition_point(|&ti| ti <= s);
        self.positions[idx.saturating_sub(1)]
    }

    pub fn sup_abs(&self) -> f64 {
        self.positions.iter().fold(0.0, |m, &x| m.max(x.abs()))
    }
}

/// Product of single-step transition densities along a space-time skeleton,
/// with the convention `(s_0, x_0) = (0, 0)`.
pub fn multistep_density(grid: &DensityGrid, s: &[f64], x: &[f64]) -> Result<f64> {
    if s.len() != x.len() {
        return Err(Error::invalid(format!(
            "time and space vectors must have equal length ({} vs {})",
            s.len(),
            x.len()
        )));
    }
    let mut prev_s = 0.0;
    let mut prev_x = 0.0;
    let mut product = 1.0;
    for (&si, &xi) in s.iter().zip(x) {
        if si <= prev_s {
            return Err(Error::invalid(format!(
                "times must be strictly increasing: {si} after {prev_s}"
            )));
        }
        product *= grid.density(si - prev_s, xi - prev_x)?;
        prev_s = si;
        prev_x = xi;
    }
    Ok(product)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert!(StableParams::new(1.0, 1.0).is_err());
        assert!(StableParams::new(2.2, 1.0).is_err());
        assert!(StableParams::new(1.5, 0.0).is_err());
        assert!(StableParams::new(1.5, -1.0).is_err());
        assert!(StableParams::new(2.0, 1.0).is_ok());
    }

    #[test]
    fn step_path_lookup_is_right_continuous() {
        let path = PathSkeleton::new(vec![0.0, 1.0, 2.0], vec![0.0, 3.0, -1.0]);
        assert_eq!(path.position_at(0.5), 0.0);
        assert_eq!(path.position_at(1.0), 3.0);
        assert_eq!(path.position_at(1.999), 3.0);
        assert_eq!(path.position_at(2.0), -1.0);
        assert_eq!(path.sup_abs(), 3.0);
    }
}
