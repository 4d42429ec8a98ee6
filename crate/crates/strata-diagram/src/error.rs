//! Diagram errors.

use thiserror::Error;

/// Failures while building or querying Newton diagrams.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    /// Some coordinate axis carries no support point.
    #[error("diagram is not commode: axis z{axis} carries no support point")]
    NotCommode { axis: usize },
    /// The support is empty or has vectors of the wrong length.
    #[error("invalid support: {0}")]
    InvalidSupport(String),
    /// No compact facet could be found.
    #[error("the support has no compact facet")]
    NoFacets,
    /// The normal form catalog has no entry for this name.
    #[error("unknown singularity type {0:?}")]
    UnknownType(String),
    /// Diagram JSON could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),
}
