//! Error types shared across the engine.

use thiserror::Error;

use crate::encoding::PlaceId;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, GaError>;

/// Errors produced by instance loading, operators, and the engine.
#[derive(Debug, Error)]
pub enum GaError {
    /// The problem instance itself is malformed (asymmetric matrix, negative
    /// distance, empty target string, ...).
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    /// Exhaustive search was requested on an instance above the enumeration cap.
    #[error("instance too large: {size} places exceeds the exhaustive-search cap of {max}")]
    InstanceTooLarge { size: usize, max: usize },

    /// A permutation chromosome violates its validity rules.
    #[error(transparent)]
    InvalidPermutation(#[from] PermutationError),

    /// An argument is outside its mathematical domain (non-positive fitness,
    /// draw outside [0,1), out-of-range cut or index, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// One or more configuration fields failed validation.
    #[error("invalid configuration: {}", .0.join("; "))]
    Config(Vec<String>),

    /// Structured input (CSV edge list, JSON config) could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl GaError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        GaError::Domain(msg.into())
    }

    pub(crate) fn instance(msg: impl Into<String>) -> Self {
        GaError::InvalidInstance(msg.into())
    }
}

/// All the ways a permutation chromosome can be invalid for a given place count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermutationViolation {
    WrongLength { expected: usize, actual: usize },
    HomePresent { position: usize },
    Duplicate { place: PlaceId },
    Missing { place: PlaceId },
    OutOfRange { place: PlaceId, place_count: usize },
}

impl std::fmt::Display for PermutationViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PermutationViolation::WrongLength { expected, actual } => {
                write!(f, "wrong length: expected {expected} genes, found {actual}")
            }
            PermutationViolation::HomePresent { position } => {
                write!(f, "home place present at position {position}")
            }
            PermutationViolation::Duplicate { place } => write!(f, "duplicate gene {place}"),
            PermutationViolation::Missing { place } => write!(f, "missing gene {place}"),
            PermutationViolation::OutOfRange { place, place_count } => {
                write!(f, "gene {place} out of range for {place_count} places")
            }
        }
    }
}

/// Validation verdict for an invalid permutation chromosome. Collects every
/// violation rather than stopping at the first so diagnostics stay complete.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid permutation chromosome: {}", .violations.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "))]
pub struct PermutationError {
    pub violations: Vec<PermutationViolation>,
}
