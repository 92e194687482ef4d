use thiserror::Error;

/// Errors raised by the geometric and numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian (‖H − H†‖_F = {asymmetry:e}, ‖H‖_F = {norm:e})")]
    NotHermitian { asymmetry: f64, norm: f64 },

    #[error("operator is not positive definite (smallest eigenvalue {min_eigenvalue:e}, largest {max_eigenvalue:e})")]
    NotPositiveDefinite {
        min_eigenvalue: f64,
        max_eigenvalue: f64,
    },

    #[error("non-finite value {value} at {location}")]
    NumericalDomain { value: f64, location: String },

    #[error("trace has imaginary part {imag:e} (real part {real:e})")]
    ImaginaryResidue { real: f64, imag: f64 },

    #[error("recovered metric is not positive definite (smallest eigenvalue {min_eigenvalue:e})")]
    DegenerateMetric { min_eigenvalue: f64 },

    #[error("Jacobi eigenvalue iteration did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn domain(value: f64, location: impl Into<String>) -> Self {
        Error::NumericalDomain {
            value,
            location: location.into(),
        }
    }

    /// True for errors caused by the caller's input (bad arguments, malformed
    /// objects) as opposed to failures inside a numerical computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidArgument(_)
                | Error::DimensionMismatch { .. }
                | Error::NotHermitian { .. }
                | Error::NotPositiveDefinite { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
