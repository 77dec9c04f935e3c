//! Tensor-product trapezoidal quadrature over space-time boxes, with
//! node-doubling refinement to a relative tolerance.

use crate::error::{Error, Result};

/// Controls the refinement loop shared by all deterministic integrals.
#[derive(Debug, Clone, Copy)]
pub struct QuadSpec {
    /// Nodes per dimension at the coarsest level (forced odd).
    pub n_start: usize,
    /// Relative tolerance between successive refinements.
    pub rel_tol: f64,
    /// Number of node doublings to attempt.
    pub max_levels: usize,
}

impl Default for QuadSpec {
    fn default() -> Self {
        QuadSpec {
            n_start: 33,
            rel_tol: 1e-6,
            max_levels: 6,
        }
    }
}

/// A fixed tensor grid: per-dimension nodes with trapezoid weights.
#[derive(Debug, Clone)]
pub struct TensorGrid {
    axes: Vec<(Vec<f64>, f64)>, // (nodes, spacing)
}

impl TensorGrid {
    pub fn new(bounds: &[(f64, f64)], n_per_dim: usize) -> Self {
        let n = if n_per_dim % 2 == 0 { n_per_dim + 1 } else { n_per_dim };
        let axes = bounds
            .iter()
            .map(|&(a, b)| {
                let h = (b - a) / (n - 1) as f64;
                let nodes = (0..n).map(|i| a + h * i as f64).collect();
                (nodes, h)
            })
            .collect();
        TensorGrid { axes }
    }

    fn refined(&self) -> Self {
        let axes = self
            .axes
            .iter()
            .map(|(nodes, h)| {
                let a = nodes[0];
                let m = 2 * nodes.len() - 1;
                let h2 = h / 2.0;
                ((0..m).map(|i| a + h2 * i as f64).collect(), h2)
            })
            .collect();
        TensorGrid { axes }
    }

    pub fn dims(&self) -> usize {
        self.axes.len()
    }

    /// Integrates `f` over the full tensor grid.
    pub fn integrate(&self, f: &dyn Fn(&[f64]) -> f64) -> f64 {
        let dims = self.dims();
        let mut point = vec![0.0; dims];
        self.integrate_rec(f, 0, &mut point)
    }

    fn integrate_rec(&self, f: &dyn Fn(&[f64]) -> f64, dim: usize, point: &mut Vec<f64>) -> f64 {
        let (nodes, h) = &self.axes[dim];
        let last = nodes.len() - 1;
        let mut acc = 0.0;
        for (i, &x) in nodes.iter().enumerate() {
            point[dim] = x;
            let inner = if dim + 1 == self.dims() {
                f(point)
            } else {
                self.integrate_rec(f, dim + 1, point)
            };
            let w = if i == 0 || i == last { 0.5 } else { 1.0 };
            acc += w * inner;
        }
        acc * h
    }
}

/// Result of a refined tensor integral: value plus the grid that achieved it,
/// so callers can reuse the same resolution for related integrals.
#[derive(Debug, Clone)]
pub struct RefinedIntegral {
    pub value: f64,
    pub grid: TensorGrid,
}

/// Tensor trapezoid with node doubling until `spec.rel_tol` is met.
pub fn tensor_integrate(
    bounds: &[(f64, f64)],
    f: &dyn Fn(&[f64]) -> f64,
    spec: &QuadSpec,
) -> Result<RefinedIntegral> {
    assert!(!bounds.is_empty());
    let mut grid = TensorGrid::new(bounds, spec.n_start);
    let mut prev = grid.integrate(f);
    for _ in 0..spec.max_levels {
        let next_grid = grid.refined();
        let next = next_grid.integrate(f);
        let scale = next.abs().max(prev.abs());
        let diff = (next - prev).abs();
        if scale == 0.0 || diff <= spec.rel_tol * scale {
            return Ok(RefinedIntegral {
                value: next,
                grid: next_grid,
            });
        }
        prev = next;
        grid = next_grid;
    }
    Err(Error::QuadratureNotConverged {
        rel_change: {
            let next_grid = grid.refined();
            let next = next_grid.integrate(f);
            (next - prev).abs() / next.abs().max(prev.abs()).max(f64::MIN_POSITIVE)
        },
        levels: spec.max_levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn smooth_2d_integral_converges() {
        let spec = QuadSpec::default();
        let got = tensor_integrate(
            &[(0.0, 1.0), (0.0, 2.0)],
            &|p: &[f64]| (p[0] + p[1]).sin(),
            &spec,
        )
        .unwrap();
        // ∫0^1∫0^2 sin(x+y) dy dx = sin(1)+sin(2)-sin(3).
        let exact = 1f64.sin() + 2f64.sin() - 3f64.sin();
        assert_relative_eq!(got.value, exact, max_relative = 1e-6);
    }

    #[test]
    fn grid_aligned_box_is_exact_at_every_level() {
        let spec = QuadSpec {
            n_start: 9,
            rel_tol: 1e-12,
            max_levels: 3,
        };
        // Box corners sit on the level-0 grid, so every refinement agrees.
        let f = |p: &[f64]| {
            if (0.25..=0.75).contains(&p[0]) && (-0.5..=0.5).contains(&p[1]) {
                1.0
            } else {
                0.0
            }
        };
        let got = tensor_integrate(&[(0.0, 1.0), (-1.0, 1.0)], &f, &spec).unwrap();
        assert_relative_eq!(got.value, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn misaligned_discontinuity_reports_non_convergence() {
        let spec = QuadSpec {
            n_start: 9,
            rel_tol: 1e-10,
            max_levels: 3,
        };
        let f = |p: &[f64]| if p[0] < 0.323_771 { 1.0 } else { 0.0 };
        let err = tensor_integrate(&[(0.0, 1.0)], &f, &spec).unwrap_err();
        assert!(matches!(err, Error::QuadratureNotConverged { .. }));
    }
}
