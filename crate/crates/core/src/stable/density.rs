//! Unit-time density tables.
//!
//! For `alpha < 2` the table comes from FFT inversion of the characteristic
//! function `z ↦ exp(-ν|z|^α)`; `alpha = 2` fills in the Gaussian closed form
//! directly. Beyond the crossover abscissa `x_cut` the table hands over to the
//! first-order power tail `C |x|^{-1-α}` with `C` fitted by continuity, since
//! inversion tables are unreliable that far out.

use std::f64::consts::PI;

use rustfft::num_complex::Complex64;
use rustfft::FftPlanner;

use super::StableParams;
use crate::error::{Error, Result};
use crate::numerics::MonotoneCubic;

/// Ratio of peak density below which the analytic tail takes over.
const TAIL_THRESHOLD: f64 = 1e-10;
/// Largest characteristic-function exponent retained: `exp(-46) ≈ 1e-20`.
const CF_EXPONENT_CUTOFF: f64 = 46.0;
const MAX_FFT_LEN: usize = 1 << 23;

/// Tabulated unit-time density with scaling evaluation for every horizon.
#[derive(Debug, Clone)]
pub struct DensityGrid {
    params: StableParams,
    /// Symmetric uniform nodes covering `[-x_max, x_max]`, odd count.
    x_nodes: Vec<f64>,
    values: Vec<f64>,
    /// Power-tail coefficient, fitted at `x_cut` by continuity.
    tail_coeff: f64,
    x_cut: f64,
    spacing: f64,
    interp: MonotoneCubic,
    /// Cumulative mass at the nodes of `[-x_cut, x_cut]`, offset by the left
    /// analytic tail mass.
    cdf_nodes: Vec<f64>,
    cdf_start_index: usize,
    total_mass: f64,
}

/// Builds the unit-time table by numerical inversion of the characteristic
/// function (Gaussian closed form when `alpha = 2`).
pub fn build_density_grid(params: StableParams, x_max: f64, n_nodes: usize) -> Result<DensityGrid> {
    DensityGrid::build(params, x_max, n_nodes)
}

impl DensityGrid {
    pub fn build(params: StableParams, x_max: f64, n_nodes: usize) -> Result<Self> {
        if !(x_max > 0.0) || !x_max.is_finite() {
            return Err(Error::invalid(format!("x_max must be positive, got {x_max}")));
        }
        if n_nodes < 1 << 10 {
            return Err(Error::invalid(format!(
                "n_nodes must be at least 1024, got {n_nodes}"
            )));
        }

        // Odd node count gives an exact mirror pair for every positive node.
        let half = n_nodes / 2;
        let m = 2 * half + 1;
        let spacing = x_max / half as f64;
        let x_nodes: Vec<f64> = (0..m).map(|i| (i as f64 - half as f64) * spacing).collect();

        let positive: Vec<f64> = if params.alpha == 2.0 {
            let var = 2.0 * params.nu;
            let norm = 1.0 / (2.0 * PI * var).sqrt();
            (0..=half)
                .map(|i| {
                    let x = i as f64 * spacing;
                    norm * (-x * x / (2.0 * var)).exp()
                })
                .collect()
        } else {
            invert_characteristic_function(params, x_max, half)?
        };

        let mut values = vec![0.0; m];
        for i in 0..=half {
            let v = positive[i].max(0.0);
            values[half + i] = v;
            values[half - i] = v;
        }

        let peak = values[half];
        if !(peak > 0.0) {
            return Err(Error::invalid("density table peak is not positive"));
        }

        // Crossover to the analytic tail: first node below threshold, kept a
        // couple of nodes inside the table edge so the fit has support.
        let cut_idx = (1..=half)
            .find(|&i| values[half + i] < TAIL_THRESHOLD * peak)
            .unwrap_or(half.saturating_sub(2))
            .min(half.saturating_sub(2))
            .max(1);
        let x_cut = x_nodes[half + cut_idx];
        let tail_coeff = values[half + cut_idx] * x_cut.powf(1.0 + params.alpha);

        let interp = MonotoneCubic::new(x_nodes[0], spacing, values.clone());

        // Cumulative mass over [-x_cut, x_cut], seeded with the left tail.
        let start = half - cut_idx;
        let end = half + cut_idx;
        let tail_mass = tail_coeff * x_cut.powf(-params.alpha) / params.alpha;
        let mut cdf_nodes = Vec::with_capacity(end - start + 1);
        let mut acc = tail_mass;
        cdf_nodes.push(acc);
        for i in start..end {
            acc += 0.5 * spacing * (values[i] + values[i + 1]);
            cdf_nodes.push(acc);
        }
        let total_mass = acc + tail_mass;

        if (total_mass - 1.0).abs() > 1e-6 {
            return Err(Error::invalid(format!(
                "density table does not normalize: mass {total_mass:.9} (x_max too small?)"
            )));
        }

        Ok(DensityGrid {
            params,
            x_nodes,
            values,
            tail_coeff,
            x_cut,
            spacing,
            interp,
            cdf_nodes,
            cdf_start_index: start,
            total_mass,
        })
    }

    pub fn params(&self) -> StableParams {
        self.params
    }

    pub fn x_nodes(&self) -> &[f64] {
        &self.x_nodes
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn x_cut(&self) -> f64 {
        self.x_cut
    }

    pub fn tail_coeff(&self) -> f64 {
        self.tail_coeff
    }

    /// Trapezoidal mass of the table within `[-x_cut, x_cut]` plus the two
    /// analytic tail lobes.
    pub fn total_mass(&self) -> f64 {
        self.total_mass
    }

    pub fn peak(&self) -> f64 {
        self.values[self.values.len() / 2]
    }

    /// Unit-time density `p(1, y)`: table interpolation inside the crossover,
    /// analytic power tail beyond it.
    pub fn density_unit(&self, y: f64) -> f64 {
        let a = y.abs();
        if a <= self.x_cut {
            self.interp.eval(a).max(0.0)
        } else {
            self.tail_coeff * a.powf(-1.0 - self.params.alpha)
        }
    }

    /// Density at horizon `t`: `t^{-1/α} p(1, t^{-1/α} x)`.
    pub fn density(&self, t: f64, x: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::invalid(format!("time must be positive, got {t}")));
        }
        let scale = t.powf(-1.0 / self.params.alpha);
        Ok(scale * self.density_unit(scale * x))
    }

    /// Unit-time CDF `P(X_1 ≤ y)` from the tabulated mass, analytic in the
    /// tails. Monotone and continuous; total mass matches `total_mass()`.
    pub fn cdf_unit(&self, y: f64) -> f64 {
        let alpha = self.params.alpha;
        if y <= -self.x_cut {
            return self.tail_coeff * (-y).powf(-alpha) / alpha;
        }
        if y >= self.x_cut {
            return self.total_mass - self.tail_coeff * y.powf(-alpha) / alpha;
        }
        let pos = (y - self.x_nodes[self.cdf_start_index]) / self.spacing;
        let i = (pos.floor() as usize).min(self.cdf_nodes.len() - 2);
        let frac = pos - i as f64;
        // Partial trapezoid within the cell.
        let v0 = self.values[self.cdf_start_index + i];
        let v1 = self.values[self.cdf_start_index + i + 1];
        let vy = v0 + (v1 - v0) * frac;
        self.cdf_nodes[i] + 0.5 * (v0 + vy) * frac * self.spacing
    }

    /// CDF at horizon `t` via the scaling transform.
    pub fn cdf(&self, t: f64, x: f64) -> Result<f64> {
        if !(t > 0.0) {
            return Err(Error::invalid(format!("time must be positive, got {t}")));
        }
        Ok(self.cdf_unit(t.powf(-1.0 / self.params.alpha) * x))
    }

    /// Writes the table as `x,p` CSV rows.
    pub fn export_csv<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "x,p")?;
        for (x, p) in self.x_nodes.iter().zip(&self.values) {
            writeln!(out, "{x:?},{p:?}")?;
        }
        Ok(())
    }
}

/// Cosine-transform inversion on a fine FFT grid, resampled onto the table
/// nodes with local cubic interpolation.
fn invert_characteristic_function(
    params: StableParams,
    x_max: f64,
    half: usize,
) -> Result<Vec<f64>> {
    let alpha = params.alpha;
    let nu = params.nu;

    // Period of the discrete transform; controls aliasing from the heavy
    // tails, which folds back mass of order tail(P - x_max).
    let period = (16.0 * x_max).max(2048.0);
    let dz = 2.0 * PI / period;
    let z_cut = (CF_EXPONENT_CUTOFF / nu).powf(1.0 / alpha);
    let mut len: usize = 1 << 18;
    while (len as f64) * dz < 2.0 * z_cut {
        len <<= 1;
        if len > MAX_FFT_LEN {
            return Err(Error::invalid(format!(
                "characteristic function decays too slowly for inversion (nu = {nu})"
            )));
        }
    }

    let mut buf: Vec<Complex64> = (0..len)
        .map(|j| {
            let z = j as f64 * dz;
            let e = nu * z.powf(alpha);
            if e > 700.0 {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new((-e).exp(), 0.0)
            }
        })
        .collect();
    FftPlanner::new().plan_fft_forward(len).process(&mut buf);

    // Trapezoid correction: the j = 0 sample (φ(0) = 1) carries half weight.
    let fine: Vec<f64> = buf.iter().map(|c| (c.re - 0.5) * dz / PI).collect();
    let fine_dx = period / len as f64;

    let spacing = x_max / half as f64;
    let sample = |x: f64| -> f64 {
        let pos = x / fine_dx;
        let j = pos.floor() as isize;
        let t = pos - j as f64;
        // 4-point Lagrange on the fine grid; even symmetry extends below 0.
        let grab = |k: isize| -> f64 {
            let idx = (j + k).unsigned_abs() % len;
            fine[idx.min(len - 1)]
        };
        let (f_m1, f_0, f_1, f_2) = (grab(-1), grab(0), grab(1), grab(2));
        let a = -t * (t - 1.0) * (t - 2.0) / 6.0;
        let b = (t * t - 1.0) * (t - 2.0) / 2.0;
        let c = -t * (t + 1.0) * (t - 2.0) / 2.0;
        let d = t * (t * t - 1.0) / 6.0;
        a * f_m1 + b * f_0 + c * f_1 + d * f_2
    };

    Ok((0..=half).map(|i| sample(i as f64 * spacing)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn grid(alpha: f64, nu: f64) -> DensityGrid {
        DensityGrid::build(StableParams::new(alpha, nu).unwrap(), 40.0, 4096).unwrap()
    }

    #[test]
    fn gaussian_closed_form_at_origin() {
        let g = grid(2.0, 1.0);
        // (1/2π) ∫ exp(-z²) dz = 1/(2√π)
        assert_relative_eq!(g.density_unit(0.0), 0.2820947917738781, epsilon = 1e-12);
    }

    #[test]
    fn scaling_at_origin() {
        let g = grid(2.0, 1.0);
        let p0 = g.density_unit(0.0);
        assert_relative_eq!(g.density(4.0, 0.0).unwrap(), 0.5 * p0, epsilon = 1e-12);
        for &t in &[0.25, 3.0, 17.5] {
            assert_relative_eq!(
                g.density(t, 0.0).unwrap(),
                t.powf(-0.5) * p0,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn table_is_symmetric_exactly() {
        let g = grid(1.5, 1.0);
        let n = g.values().len();
        for i in 0..n {
            assert_eq!(g.values()[i], g.values()[n - 1 - i]);
        }
    }

    #[test]
    fn normalization_within_tolerance() {
        for &(alpha, nu) in &[(2.0, 1.0), (1.5, 1.0), (1.2, 0.7), (1.8, 2.3)] {
            let g = grid(alpha, nu);
            assert!(
                (g.total_mass() - 1.0).abs() <= 1e-6,
                "alpha={alpha} nu={nu} mass={}",
                g.total_mass()
            );
        }
    }

    #[test]
    fn rejects_small_tables_and_bad_extent() {
        let p = StableParams::new(1.5, 1.0).unwrap();
        assert!(DensityGrid::build(p, 40.0, 512).is_err());
        assert!(DensityGrid::build(p, 0.0, 4096).is_err());
        assert!(DensityGrid::build(p, -3.0, 4096).is_err());
    }

    #[test]
    fn rejects_nonpositive_time() {
        let g = grid(1.5, 1.0);
        assert!(g.density(0.0, 1.0).is_err());
        assert!(g.density(-2.0, 1.0).is_err());
        assert!(g.cdf(0.0, 0.0).is_err());
    }

    #[test]
    fn cdf_is_monotone_and_normalized() {
        let g = grid(1.5, 1.0);
        let mut prev = 0.0;
        for k in -300..=300 {
            let y = k as f64 * 0.1;
            let c = g.cdf_unit(y);
            assert!(c >= prev - 1e-12, "cdf not monotone at {y}");
            prev = c;
        }
        assert_relative_eq!(g.cdf_unit(0.0), 0.5 * g.total_mass(), max_relative = 1e-6);
        assert!((g.cdf_unit(1e9) - 1.0).abs() < 2e-6);
        assert!(g.cdf_unit(-1e9) < 1e-9);
    }

    #[test]
    fn tail_continuity_at_crossover() {
        let g = grid(1.5, 1.0);
        let eps = 1e-9;
        let inside = g.density_unit(g.x_cut() - eps);
        let outside = g.density_unit(g.x_cut() + eps);
        assert_relative_eq!(inside, outside, max_relative = 1e-5);
    }
}
