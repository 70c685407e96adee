use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("insufficient {prime}-adic precision: need {needed} known digits, have {available}")]
    InsufficientPrecision { prime: u64, needed: i64, available: i64 },
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("polynomial has nonzero constant term")]
    NonzeroConstantTerm,
    #[error("enumeration of {count} tuples exceeds the size cap {cap}")]
    SizeCap { count: u128, cap: u128 },
    #[error("search budget of {0} nodes exceeded")]
    Budget(u64),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("functions do not form a partition of unity at point {0}")]
    PartitionOfUnityViolated(String),
    #[error("mean of F is {mean}, below epsilon {epsilon}")]
    MeanTooSmall { mean: String, epsilon: String },
    #[error("integer-time system applied at non-integer time {0}")]
    NonIntegerTime(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("identity check failed: {0}")]
    IdentityViolated(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
