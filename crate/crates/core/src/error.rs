//! Crate-wide error type.

use thiserror::Error;

/// Errors reported by construction and evaluation routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A parameter is outside the documented domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An index (root, vertex or basis index) is out of range.
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    /// Exact division by a root linear form left a residual above tolerance,
    /// i.e. the numerator did not vanish on the reflection hyperplane.
    #[error("polynomial not divisible by root form: residual {residual:.3e} exceeds {tolerance:.3e}")]
    NotDivisible { residual: f64, tolerance: f64 },

    /// The construction-time orthogonality test for the modified families
    /// was not decisive for either orientation.
    #[error("orientation test inconclusive: residuals {plus:.3e} / {minus:.3e}")]
    AmbiguousOrientation { plus: f64, minus: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
