use thiserror::Error;

use crate::register::Label;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("unknown subsystem label `{0}`")]
    UnknownLabel(Label),

    #[error("duplicate subsystem label `{0}`")]
    DuplicateLabel(Label),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("matrix is not Hermitian (max |H - H^dagger| = {asymmetry:.3e})")]
    NotHermitian { asymmetry: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("trace is {trace:.12}, expected 1")]
    Trace { trace: f64 },

    #[error("state is not normalised (norm^2 = {norm_sqr:.12})")]
    Norm { norm_sqr: f64 },

    #[error("reflected entropy {reflected:.12} outside [{lower:.12}, {upper:.12}]")]
    BoundViolation { reflected: f64, lower: f64, upper: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:.3e})")]
    NoConvergence { sweeps: usize, residual: f64 },
}

impl Error {
    /// Errors caused by the caller's input rather than by the numerics.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Argument(_) | Error::UnknownLabel(_) | Error::DuplicateLabel(_))
    }

    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}
