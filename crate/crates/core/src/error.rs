use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside the domain where the quantity is defined.
    #[error("{quantity} = {value} is outside the domain ({requirement})")]
    Domain {
        quantity: &'static str,
        value: f64,
        requirement: &'static str,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Adaptive quadrature ran out of subdivisions. Carries the best estimate.
    #[error(
        "quadrature did not converge after {subdivisions} subdivisions \
         (value {value:e}, error estimate {error_estimate:e})"
    )]
    QuadratureNonConvergence {
        value: f64,
        error_estimate: f64,
        subdivisions: usize,
    },

    #[error("inverse iteration did not converge after {iterations} iterations (change {change:e})")]
    EigenNonConvergence { iterations: usize, change: f64 },

    /// A closed-form expression was asked for outside its domain (e.g. a <= 0).
    #[error("closed-form expression undefined: {0}")]
    ExpressionDomain(String),
}

impl Error {
    pub(crate) fn domain(quantity: &'static str, value: f64, requirement: &'static str) -> Self {
        Error::Domain {
            quantity,
            value,
            requirement,
        }
    }
}

/// Checks that every named value is finite.
pub(crate) fn ensure_finite(pairs: &[(&str, f64)]) -> Result<()> {
    for (name, v) in pairs {
        if !v.is_finite() {
            return Err(Error::InvalidParameter(format!("{name} must be finite, got {v}")));
        }
    }
    Ok(())
}
