use thiserror::Error;

/// Errors raised by the numerical kernels and the configuration layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A precondition on an input value does not hold.
    #[error("{field}: {reason}")]
    InvalidInput { field: &'static str, reason: String },

    /// The input sits on a genuine singularity of the requested quantity.
    #[error("singular input: {0}")]
    Singular(String),

    /// Adaptive quadrature exhausted its evaluation budget.
    #[error("quadrature did not converge after {evaluations} evaluations (estimated error {est_abs_error:e}, tolerance {tol:e})")]
    Convergence {
        evaluations: usize,
        est_abs_error: f64,
        tol: f64,
    },
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidInput {
            field,
            reason: reason.into(),
        }
    }

    /// True for numerical failures, as opposed to bad input.
    pub fn is_convergence(&self) -> bool {
        matches!(self, Error::Convergence { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
