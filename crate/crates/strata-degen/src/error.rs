//! Errors of the degeneration engine.

use strata_conditions::ConditionError;
use strata_ring::RingError;
use thiserror::Error;

/// Failures of the degeneration engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegenError {
    /// More points than can be in special position in `P^n`.
    #[error("{k} points cannot be constrained in P^{n}")]
    TooManyPoints {
        /// Requested number of points.
        k: u32,
        /// Ambient dimension.
        n: u32,
    },
    /// The derivative-case multiplicity formula does not apply.
    #[error("multiplicity formula needs m+1 <= p <= m+k, got m={m}, p={p}, k={k}")]
    OutOfRange {
        /// Order of the stratum.
        m: u32,
        /// Order of the condition.
        p: u32,
        /// Number of contractions.
        k: u32,
    },
    /// A residual restriction produced non-integral coefficients.
    #[error("residual restriction is not integral (wrong fibre dimension?)")]
    NonIntegral,
    /// The constraints admit no solution.
    #[error("consistency constraints have no solution ({constraint})")]
    NoSolution {
        /// The first violated constraint.
        constraint: String,
    },
    /// The constraints leave part of the class undetermined.
    #[error("consistency constraints leave a {kernel_dim}-dimensional family of classes")]
    NonUnique {
        /// Dimension of the undetermined part.
        kernel_dim: usize,
    },
    /// The divisor of a recipe cannot be inverted.
    #[error("divisor is not invertible: {0}")]
    NotInvertible(String),
    /// The engine has no rule for this situation.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Malformed recipe input.
    #[error("bad recipe: {0}")]
    Recipe(String),
    /// Condition derivation failed.
    #[error(transparent)]
    Conditions(#[from] ConditionError),
    /// Ring arithmetic failed.
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Result alias for the engine.
pub type DegenResult<T> = Result<T, DegenError>;
