//! Simulation laboratory for symmetric α-stable directed polymers in Poisson
//! random environments and the fractional stochastic heat equation.
//!
//! The crate is organized around five subsystems:
//!
//! - [`stable`]: α-stable transition densities (unit-time table + scaling),
//!   increment/path/bridge samplers;
//! - [`poisson`]: Poisson space-time environments, tube occupation counts,
//!   factorial measures, and compensated multiple integrals;
//! - [`polymer`]: partition-function estimators, chaos coefficients, and the
//!   intermediate-disorder schedule machinery;
//! - [`she`]: discrete space-time white noise, chaos and Euler–Duhamel solvers
//!   for the fractional stochastic heat equation, and the exact second-moment
//!   series;
//! - [`experiments`]: the statistical harness that sweeps schedules, compares
//!   polymer samples against solver samples, and persists reports.
//!
//! Monte Carlo replicas run data-parallel under rayon (feature `parallel`,
//! enabled by default) with per-replica deterministic streams; disabling the
//! feature falls back to sequential execution with identical output.

pub mod error;
pub mod exec;
pub mod experiments;
pub mod numerics;
pub mod poisson;
pub mod polymer;
pub mod quad;
pub mod rng;
pub mod she;
pub mod stable;

pub use error::{Error, Result};
pub use exec::ExecMode;
