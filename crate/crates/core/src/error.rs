//! Crate-wide error type.

use std::fmt;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A dimension vector failed validation (too short, or too large to
    /// address exactly with machine integers).
    InvalidDimensionVector(String),
    /// A target rank `r` outside `0..=min(d)`.
    RankOutOfRange { rank: u64, min_dim: u64 },
    /// An enumeration or basis grew past the configured cap.
    ResourceCap { what: String, limit: u64 },
    /// Operation requires a weakly increasing dimension vector.
    NotWeaklyIncreasing(String),
    /// `longest_root_shift` would make the top multiplicity negative.
    NegativeShift { top: u64, shift: i64 },
    /// Series inversion requires constant term +1 or -1.
    NonUnitConstantTerm,
    /// A series was identically zero within its truncation, so its lowest
    /// term cannot be read off. Usually means the truncation is too small.
    ZeroSeries { truncation: usize },
    /// Vector length does not match the number of quiver arrows.
    LengthMismatch { expected: usize, got: usize },
    /// Incompatible matrix shapes.
    ShapeMismatch(String),
    /// The relevant-count is undefined because the smallest entry is zero.
    DegenerateRelevantCount,
    /// A closed-form value that must be an integer came out fractional.
    NonIntegralValue(String),
    /// No nonzero graded kernel piece was found up to the degree bound.
    KernelNotFound { degree_bound: usize },
    /// Two computation methods disagreed on a value they must agree on.
    MethodDisagreement(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidDimensionVector(msg) => {
                write!(f, "invalid dimension vector: {msg}")
            }
            Error::RankOutOfRange { rank, min_dim } => {
                write!(f, "rank {rank} out of range 0..={min_dim}")
            }
            Error::ResourceCap { what, limit } => {
                write!(f, "{what} exceeds the configured cap of {limit}")
            }
            Error::NotWeaklyIncreasing(msg) => {
                write!(f, "dimension vector is not weakly increasing: {msg}")
            }
            Error::NegativeShift { top, shift } => {
                write!(f, "shift {shift} would make top multiplicity {top} negative")
            }
            Error::NonUnitConstantTerm => {
                write!(f, "series inversion requires constant term +1 or -1")
            }
            Error::ZeroSeries { truncation } => {
                write!(f, "series is zero up to degree {truncation}; increase the truncation")
            }
            Error::LengthMismatch { expected, got } => {
                write!(f, "expected a vector of length {expected}, got {got}")
            }
            Error::ShapeMismatch(msg) => write!(f, "shape mismatch: {msg}"),
            Error::DegenerateRelevantCount => {
                write!(f, "relevant count undefined: smallest entry is zero")
            }
            Error::NonIntegralValue(msg) => {
                write!(f, "expected an integer value: {msg}")
            }
            Error::KernelNotFound { degree_bound } => {
                write!(f, "no nonzero graded kernel piece up to degree {degree_bound}")
            }
            Error::MethodDisagreement(msg) => write!(f, "method disagreement: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
