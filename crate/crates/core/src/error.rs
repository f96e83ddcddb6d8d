use thiserror::Error;

/// Failures raised by the spectrum formulas and the normal-mode oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectrumError {
    #[error("invalid system: {0}")]
    InvalidSystem(String),

    /// A uniform field acting on a system with a free (zero-frequency)
    /// center of mass: the energy is unbounded below.
    #[error("field shift undefined: uniform field applied to a zero-frequency mode")]
    FieldShiftUndefined,

    #[error("unstable configuration: squared frequency {0:e} is negative")]
    UnstableConfiguration(f64),

    #[error("non-positive-definite kinetic form (smallest eigenvalue {0:e})")]
    NonPositiveKinetic(f64),

    #[error("dimension mismatch: expected {expected} particles, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("rejected input: {0}")]
    RejectedInput(String),
}

pub type Result<T, E = SpectrumError> = std::result::Result<T, E>;
