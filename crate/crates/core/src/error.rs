use thiserror::Error;

/// Errors shared across the simulation modules.
#[derive(Debug, Error)]
pub enum Error {
    /// A constructor or operation received parameters outside its domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A sampled object would exceed a configured resource cap.
    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),

    /// Tensor quadrature failed to reach the requested relative tolerance.
    #[error("quadrature did not converge: relative change {rel_change:.3e} after {levels} refinements")]
    QuadratureNotConverged { rel_change: f64, levels: usize },

    /// A conditional density normalized below the numeric floor.
    #[error("conditional density underflow: total mass {mass:.3e}")]
    ConditionalUnderflow { mass: f64 },

    /// Too many sampled paths left the environment window.
    #[error("window overflow: fraction {fraction:.4} exceeds cap {cap:.4}")]
    WindowOverflow { fraction: f64, cap: f64 },

    /// A time-stepping scheme produced values beyond the blow-up guard.
    #[error("solver instability detected at step {step}: |Z| reached {magnitude:.3e}")]
    Instability { step: usize, magnitude: f64 },

    #[error("i/o failure on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("manifest error: {0}")]
    Manifest(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for errors a caller could have prevented by validating inputs.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter(_) | Error::CapExceeded(_) | Error::Manifest(_)
        )
    }
}
