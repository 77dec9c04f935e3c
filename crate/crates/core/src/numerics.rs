//! Small numerical kernels: monotone cubic interpolation on uniform grids and
//! trapezoidal integration helpers.

/// Shape-preserving cubic interpolant (Fritsch–Carlson limited slopes) on a
/// uniform grid. Monotone data stays monotone, so nonnegative tables never
/// produce negative interpolants.
#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    x0: f64,
    h: f64,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl MonotoneCubic {
    pub fn new(x0: f64, h: f64, values: Vec<f64>) -> Self {
        assert!(values.len() >= 2, "need at least two nodes");
        assert!(h > 0.0);
        let n = values.len();
        let sec: Vec<f64> = values.windows(2).map(|w| (w[1] - w[0]) / h).collect();
        let mut slopes = vec![0.0; n];
        slopes[0] = sec[0];
        slopes[n - 1] = sec[n - 2];
        for i in 1..n - 1 {
            let (a, b) = (sec[i - 1], sec[i]);
            // Zero slope at local extrema, harmonic mean otherwise.
            slopes[i] = if a * b <= 0.0 { 0.0 } else { 2.0 * a * b / (a + b) };
        }
        MonotoneCubic {
            x0,
            h,
            values,
            slopes,
        }
    }

    pub fn x_min(&self) -> f64 {
        self.x0
    }

    pub fn x_max(&self) -> f64 {
        self.x0 + self.h * (self.values.len() - 1) as f64
    }

    /// Evaluates the interpolant; arguments outside the grid clamp to the ends.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.values.len();
        let pos = (x - self.x0) / self.h;
        if pos <= 0.0 {
            return self.values[0];
        }
        if pos >= (n - 1) as f64 {
            return self.values[n - 1];
        }
        let i = pos.floor() as usize;
        let t = pos - i as f64;
        let (y0, y1) = (self.values[i], self.values[i + 1]);
        let (d0, d1) = (self.slopes[i] * self.h, self.slopes[i + 1] * self.h);
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * y0 + h10 * d0 + h01 * y1 + h11 * d1
    }
}

/// Trapezoidal rule over uniformly spaced samples.
pub fn trapezoid_uniform(values: &[f64], h: f64) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let interior: f64 = values[1..values.len() - 1].iter().sum();
    h * (0.5 * values[0] + interior + 0.5 * values[values.len() - 1])
}

/// Trapezoidal rule for `f` sampled at `n` nodes over `[a, b]`.
pub fn trapezoid_fn(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    assert!(n >= 2);
    let h = (b - a) / (n - 1) as f64;
    let values: Vec<f64> = (0..n).map(|i| f(a + h * i as f64)).collect();
    trapezoid_uniform(&values, h)
}

/// Node-doubling trapezoid until the relative change drops below `tol`.
/// Returns the last estimate and whether the tolerance was met.
pub fn trapezoid_refine(
    f: impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    n_start: usize,
    tol: f64,
    max_levels: usize,
) -> (f64, bool) {
    let mut n = n_start.max(3);
    let mut prev = trapezoid_fn(&f, a, b, n);
    for _ in 0..max_levels {
        n = 2 * n - 1;
        let next = trapezoid_fn(&f, a, b, n);
        let scale = next.abs().max(prev.abs()).max(f64::MIN_POSITIVE);
        if (next - prev).abs() <= tol * scale {
            return (next, true);
        }
        prev = next;
    }
    (prev, false)
}

/// Sample mean and standard error from `n_batches` contiguous batch means.
pub fn batch_mean_stderr(samples: &[f64], n_batches: usize) -> (f64, f64) {
    assert!(!samples.is_empty());
    let mean = samples.iter().sum::<f64>() / samples.len() as f64;
    let b = n_batches.clamp(2, samples.len());
    let per = samples.len() / b;
    if per == 0 {
        return (mean, f64::NAN);
    }
    let batch_means: Vec<f64> = (0..b)
        .map(|i| {
            let chunk = &samples[i * per..(i + 1) * per];
            chunk.iter().sum::<f64>() / chunk.len() as f64
        })
        .collect();
    let bm = batch_means.iter().sum::<f64>() / b as f64;
    let var = batch_means.iter().map(|m| (m - bm) * (m - bm)).sum::<f64>() / (b - 1) as f64;
    (mean, (var / b as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn interpolation_reproduces_nodes() {
        let vals = vec![0.0, 1.0, 4.0, 9.0, 16.0];
        let c = MonotoneCubic::new(0.0, 1.0, vals.clone());
        for (i, v) in vals.iter().enumerate() {
            assert_relative_eq!(c.eval(i as f64), *v, epsilon = 1e-14);
        }
    }

    #[test]
    fn monotone_data_has_no_overshoot() {
        let vals = vec![0.0, 0.0, 0.1, 0.9, 1.0, 1.0];
        let c = MonotoneCubic::new(0.0, 1.0, vals);
        let mut prev = c.eval(0.0);
        for k in 1..=500 {
            let x = 5.0 * k as f64 / 500.0;
            let y = c.eval(x);
            assert!(y >= prev - 1e-12, "not monotone at x={x}");
            assert!((0.0..=1.0).contains(&y));
            prev = y;
        }
    }

    #[test]
    fn trapezoid_linear_exact() {
        let v = trapezoid_fn(|x| 3.0 * x + 1.0, 0.0, 2.0, 11);
        assert_relative_eq!(v, 8.0, epsilon = 1e-12);
    }

    #[test]
    fn refinement_converges_on_smooth_integrand() {
        let (v, ok) = trapezoid_refine(|x| (-x * x).exp(), -6.0, 6.0, 33, 1e-10, 20);
        assert!(ok);
        assert_relative_eq!(v, std::f64::consts::PI.sqrt(), epsilon = 1e-9);
    }

    #[test]
    fn batch_stderr_scales_like_sqrt_n() {
        let samples: Vec<f64> = (0..10_000u64).map(|i| ((i * 2654435761) % 1000) as f64).collect();
        let (_, se) = batch_mean_stderr(&samples, 20);
        assert!(se > 0.0 && se < 20.0);
    }
}
