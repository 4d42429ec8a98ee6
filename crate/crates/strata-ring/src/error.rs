//! Error type shared by every ring operation.

use thiserror::Error;

/// Failures of ring construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    /// A term was supplied whose exponent exceeds the truncation cap of its generator.
    #[error("exponent {exp} of {var} exceeds its cap {cap}")]
    ExponentOutOfRange { var: String, exp: u32, cap: u32 },
    /// Two operands live in different rings.
    #[error("ring specs differ: {left} vs {right}")]
    SpecMismatch { left: String, right: String },
    /// A generator name that does not exist in this ring.
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    /// A product reached the effective F cap; the cap must be raised for this run.
    #[error("exponent {exp} of {var} exceeds the effective cap {cap}; increase f_cap")]
    FCapReached { var: String, exp: u32, cap: u32 },
    /// `divide_exact` found a nonzero remainder.
    #[error("not divisible: the remainder has {terms} nonzero terms")]
    NotDivisible { terms: usize },
    /// The divisor does not have the shape `u*F + N` with `u` a nonzero rational constant.
    #[error("bad divisor: {0}")]
    BadDivisor(String),
    /// The ring specification itself is invalid.
    #[error("invalid ring spec: {0}")]
    InvalidSpec(String),
    /// A textual or JSON representation could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
    /// An operation needed a coefficient free of d but found a genuine polynomial.
    #[error("coefficient {0} depends on d")]
    NonConstant(String),
    /// A basis change between the F-basis and a Q-basis needs d, which is not available.
    #[error("changing basis {from} -> {to} requires a symbolic or specialised d")]
    NeedsD { from: String, to: String },
}

/// Convenience alias.
pub type RingResult<T> = Result<T, RingError>;
