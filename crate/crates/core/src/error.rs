use thiserror::Error;

/// Errors raised by the library. All of them signal malformed input; none
/// signal a failed verification (those are reported as data).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected} entries, got {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("field mismatch: polynomial is over {expected}, value is over {found}")]
    FieldMismatch { expected: String, found: String },

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("invalid degrees: {0}")]
    InvalidDegrees(String),

    #[error("weighted projective space {0} is not well formed")]
    NotWellFormed(String),

    #[error("P(1,2) is isomorphic to P^1, so the automorphism description requires a well-formed space; {0} is not well formed")]
    AutNotWellFormed(String),

    #[error("invalid unipotent shift for coordinate {coordinate}: {reason}")]
    InvalidShift { coordinate: usize, reason: String },

    #[error("parameter must be nonzero")]
    ZeroParameter,

    #[error("prime {p} divides a coefficient denominator")]
    PrimeDividesDenominator { p: u64 },

    #[error("invalid prime {0}")]
    InvalidPrime(u64),

    #[error("equation {index} has degree mismatch: {reason}")]
    EquationDegree { index: usize, reason: String },

    #[error("the zero point is not a cone point away from the origin")]
    ZeroPoint,

    #[error("search space too large: {size} exceeds the limit {limit}")]
    TooLarge { size: u128, limit: u128 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("coefficient does not fit the serialized integer range")]
    CoefficientOverflow,
}

pub type Result<T> = std::result::Result<T, Error>;
