use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A presentation that failed to parse or violates an invariant.
///
/// `path` points at the offending field, e.g. `generators` or `subset[1][0]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecError {
    pub path: String,
    pub message: String,
}

impl SpecError {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        SpecError {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() || self.path == "." {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for SpecError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid spec: {0}")]
    Spec(#[from] SpecError),

    #[error("dimension mismatch: expected {expected} coordinates, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("element is not in the monoid generated by the atoms")]
    NotInMonoid,

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("class table too large: {cells} membership probes exceed the limit {limit}")]
    ClassTableTooLarge { cells: u128, limit: u128 },

    #[error("prime merging requires a class table certified finite")]
    NotCertified,

    #[error("internal consistency check failed: {0}")]
    Internal(String),

    #[error("merged presentation is inconsistent: {0}; rerun with a larger box")]
    TransferInconsistent(String),
}
