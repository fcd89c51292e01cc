use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Errors raised by the operator builders and checks.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("basis mismatch: `{left}` vs `{right}`")]
    BasisMismatch { left: String, right: String },

    #[error("degenerate Gram matrix: {reason}")]
    DegenerateGram { reason: String },

    #[error("eigenvalue solver did not converge for a {dim}x{dim} matrix within {max_iterations} iterations")]
    EigenFailure { dim: usize, max_iterations: usize },

    #[error("unsupported observable: {kind}")]
    UnsupportedObservable { kind: String },

    #[error("polynomial degree {degree} exceeds the cap of {cap}")]
    DegreeOverflow { degree: u32, cap: u32 },

    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("classical flow carries {escaped_fraction:.3e} of the state's support off the grid")]
    FlowEscapesGrid { escaped_fraction: f64 },

    #[error("polarization violation: {reason}")]
    PolarizationViolation { reason: String },

    #[error("state support escapes the grid: tail mass fraction {tail_fraction:.3e} exceeds {limit:.1e}")]
    SupportEscapesGrid { tail_fraction: f64, limit: f64 },

    #[error("oscillatory quadrature did not converge: node doubling changed the result by {change:.3e} (limit {limit:.1e})")]
    QuadratureFailure { change: f64, limit: f64 },

    #[error("operator of dimension {dim} is too large for dense storage (cap {cap})")]
    TooLargeForDense { dim: usize, cap: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field,
            reason: reason.into(),
        }
    }

    /// Short machine-readable name of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::BasisMismatch { .. } => "BasisMismatch",
            Error::DegenerateGram { .. } => "DegenerateGram",
            Error::EigenFailure { .. } => "EigenFailure",
            Error::UnsupportedObservable { .. } => "UnsupportedObservable",
            Error::DegreeOverflow { .. } => "DegreeOverflow",
            Error::InvalidParameter { .. } => "InvalidParameter",
            Error::FlowEscapesGrid { .. } => "FlowEscapesGrid",
            Error::PolarizationViolation { .. } => "PolarizationViolation",
            Error::SupportEscapesGrid { .. } => "SupportEscapesGrid",
            Error::QuadratureFailure { .. } => "QuadratureFailure",
            Error::TooLargeForDense { .. } => "TooLargeForDense",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
        }
    }
}
