//! Error types shared across the simulation core.

use thiserror::Error;

/// Errors produced by the simulation core.
#[derive(Debug, Clone, Error)]
pub enum CoreError {
    /// A field or coefficient vector does not match the grid it is used with.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    /// Invalid configuration or construction parameters.
    #[error("configuration error: {0}")]
    Config(String),

    /// A physical-domain violation (non-positive gap coefficient, bad initial data).
    #[error("domain violation: {0}")]
    DomainViolation(String),

    /// The gap width collapsed; carries the event data when known.
    #[error("quench at t={time:?}: min gap {min_gap} at x={location:?}")]
    Quench {
        /// Simulation time of the event, when it occurred inside a time loop.
        time: Option<f64>,
        /// Nodal minimum of the gap when the event fired.
        min_gap: f64,
        /// Coordinates of the minimizing node.
        location: Option<(f64, f64)>,
    },

    /// A fixed-point iteration failed to converge.
    #[error("iteration failed after {iterations} sweeps (last contraction ratio {last_ratio})")]
    IterationFailure { iterations: usize, last_ratio: f64 },

    /// An independent oracle could not produce a reference value.
    #[error("oracle failure: {0}")]
    OracleFailure(String),

    /// Invariant breakage that should be unreachable for valid inputs.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, CoreError>;

impl CoreError {
    /// Attach a time stamp to a quench error raised inside a time loop.
    pub fn with_time(self, t: f64) -> Self {
        match self {
            CoreError::Quench {
                min_gap, location, ..
            } => CoreError::Quench {
                time: Some(t),
                min_gap,
                location,
            },
            other => other,
        }
    }
}
