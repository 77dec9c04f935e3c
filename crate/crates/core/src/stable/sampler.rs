//! Samplers: Chambers–Mallows–Stuck increments, random-walk paths, and
//! sequentially conditioned bridges pinned at a terminal point.

use std::f64::consts::FRAC_PI_2;

use rand::Rng;
use rand_distr::{Exp1, StandardNormal};

use super::{DensityGrid, PathSkeleton, StableParams};
use crate::error::{Error, Result};

/// Mass floor below which a conditional bridge step is considered underflowed.
const BRIDGE_MASS_FLOOR: f64 = 1e-12;
/// Half-width of the conditional sampling window, in process scale units.
const BRIDGE_WINDOW_SCALES: f64 = 12.0;

/// One increment of the process over `dt`: Gaussian draw for `alpha = 2`,
/// CMS transform otherwise (resampling if the transform leaves its numeric
/// domain).
pub fn sample_increment<R: Rng + ?Sized>(params: &StableParams, dt: f64, rng: &mut R) -> f64 {
    debug_assert!(dt > 0.0);
    if params.alpha == 2.0 {
        let z: f64 = rng.sample(StandardNormal);
        return (2.0 * params.nu * dt).sqrt() * z;
    }
    let sigma = (params.nu * dt).powf(1.0 / params.alpha);
    loop {
        let x = cms_standard(params.alpha, rng);
        if x.is_finite() {
            return sigma * x;
        }
    }
}

/// Standard symmetric draw with characteristic function `exp(-|z|^α)`.
fn cms_standard<R: Rng + ?Sized>(alpha: f64, rng: &mut R) -> f64 {
    let u: f64 = rng.random_range(-FRAC_PI_2..FRAC_PI_2);
    let e: f64 = rng.sample(Exp1);
    let cos_u = u.cos();
    (alpha * u).sin() / cos_u.powf(1.0 / alpha)
        * (((1.0 - alpha) * u).cos() / e).powf((1.0 - alpha) / alpha)
}

/// Free path on a uniform grid: cumulative sums of i.i.d. increments.
pub fn sample_path<R: Rng + ?Sized>(
    params: &StableParams,
    t: f64,
    n_steps: usize,
    rng: &mut R,
) -> PathSkeleton {
    assert!(n_steps >= 1, "need at least one step");
    assert!(t > 0.0);
    let dt = t / n_steps as f64;
    let mut times = Vec::with_capacity(n_steps + 1);
    let mut positions = Vec::with_capacity(n_steps + 1);
    times.push(0.0);
    positions.push(0.0);
    let mut x = 0.0;
    for i in 1..=n_steps {
        x += sample_increment(params, dt, rng);
        times.push(dt * i as f64);
        positions.push(x);
    }
    PathSkeleton::new(times, positions)
}

/// Bridge pinned at `X_t = x_end`, sampled node by node from the conditional
/// density `y ↦ p(Δs, y - X_prev) p(t - s, x_end - y)` by inverse CDF on a
/// window wide enough to cover both conditioning points.
pub fn sample_bridge<R: Rng + ?Sized>(
    grid: &DensityGrid,
    t: f64,
    x_end: f64,
    n_steps: usize,
    rng: &mut R,
) -> Result<PathSkeleton> {
    assert!(n_steps >= 1, "need at least one step");
    if !(t > 0.0) {
        return Err(Error::invalid(format!("horizon must be positive, got {t}")));
    }
    let params = grid.params();
    let dt = t / n_steps as f64;
    let mut times = Vec::with_capacity(n_steps + 1);
    let mut positions = Vec::with_capacity(n_steps + 1);
    times.push(0.0);
    positions.push(0.0);

    let mut prev = 0.0;
    for i in 1..n_steps {
        let s = dt * i as f64;
        let remaining = t - s;
        let y = conditional_draw(grid, &params, prev, x_end, dt, remaining, rng)?;
        times.push(s);
        positions.push(y);
        prev = y;
    }
    times.push(t);
    positions.push(x_end);

    let mut path = PathSkeleton::new(times, positions);
    path.is_bridge = true;
    path.endpoint = Some(x_end);
    Ok(path)
}

fn conditional_draw<R: Rng + ?Sized>(
    grid: &DensityGrid,
    params: &StableParams,
    from: f64,
    pin: f64,
    dt: f64,
    remaining: f64,
    rng: &mut R,
) -> Result<f64> {
    let scale_step = params.scale(dt);
    let scale_rem = params.scale(remaining);
    let widest = scale_step.max(scale_rem);
    let lo = from.min(pin) - BRIDGE_WINDOW_SCALES * widest;
    let hi = from.max(pin) + BRIDGE_WINDOW_SCALES * widest;

    // Resolve the narrower conditioning factor.
    let target = scale_step.min(scale_rem) / 6.0;
    let mut n = (((hi - lo) / target).ceil() as usize).clamp(128, 4096);
    n |= 1;
    let h = (hi - lo) / (n - 1) as f64;

    let mut dens = Vec::with_capacity(n);
    for j in 0..n {
        let y = lo + h * j as f64;
        let d = grid.density(dt, y - from)? * grid.density(remaining, pin - y)?;
        dens.push(d);
    }
    let mut cum = Vec::with_capacity(n);
    let mut acc = 0.0;
    cum.push(0.0);
    for j in 1..n {
        acc += 0.5 * h * (dens[j - 1] + dens[j]);
        cum.push(acc);
    }
    let total = acc;
    if !(total > BRIDGE_MASS_FLOOR) {
        return Err(Error::ConditionalUnderflow { mass: total });
    }

    let u: f64 = rng.random_range(0.0..1.0) * total;
    let idx = cum.partition_point(|&c| c <= u).min(n - 1);
    let (c0, c1) = (cum[idx - 1], cum[idx]);
    let frac = if c1 > c0 { (u - c0) / (c1 - c0) } else { 0.5 };
    Ok(lo + h * ((idx - 1) as f64 + frac))
}
