use thiserror::Error;

/// Errors raised by the algebra layers.
///
/// Verification failures are not errors; they are recorded as report
/// entries. The variants here describe malformed input or broken internal
/// invariants.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("endpoint mismatch: {0}")]
    Endpoint(String),

    #[error("morphism is not well defined: {0}")]
    NotWellDefined(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),

    #[error("depth must be at least 1, got {0}")]
    InvalidDepth(usize),

    #[error("level mismatch: expected {expected}, found {found}")]
    Level { expected: usize, found: usize },

    #[error("element is not coherent at level {0}")]
    Incoherent(usize),

    #[error("Hom(Z_{m}, Z_n) did not stabilize within depth {depth}")]
    NotStabilized { m: usize, depth: usize },

    #[error("not an isomorphism: {0}")]
    NotIsomorphism(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
