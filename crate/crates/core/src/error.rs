use num_complex::Complex64;
use thiserror::Error;

/// Failure modes shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument violated a documented precondition.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A numerical method did not reach its accuracy target. The best
    /// available estimate and an error bound are carried along.
    #[error("accuracy failure in {context}: estimate {estimate}, error bound {error_bound:e}")]
    AccuracyFailure {
        context: String,
        estimate: Complex64,
        error_bound: f64,
    },

    /// Polynomial roots coincide where a closed form needs them distinct.
    #[error("degenerate roots: {0}")]
    DegenerateRoots(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn accuracy(context: impl Into<String>, estimate: impl Into<Complex64>, error_bound: f64) -> Self {
        Error::AccuracyFailure {
            context: context.into(),
            estimate: estimate.into(),
            error_bound,
        }
    }
}

pub(crate) fn ensure_finite(name: &str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} must be finite, got {x}")))
    }
}

pub(crate) fn ensure_positive(name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} must be positive, got {x}")))
    }
}
