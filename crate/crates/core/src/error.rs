use thiserror::Error;

/// Errors raised by field construction, code algebra and the oracles.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field GF({p}^{m}) exceeds the field budget of {limit} elements")]
    FieldTooLarge { p: u32, m: u32, limit: u64 },
    #[error("incompatible field tower: {0}")]
    IncompatibleTower(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("element {element} is outside a field with {q} elements")]
    ElementOutOfRange { element: u32, q: u32 },
    #[error("coordinate {index} out of range for length {n}")]
    CoordinateOutOfRange { index: usize, n: usize },
    #[error("enumeration of {required} words exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("minimum distance of the zero code is undefined")]
    ZeroCode,
    #[error("no codeword of the requested kind exists")]
    UndefinedDistance,
    #[error("codes are not nested")]
    NotNested,
    #[error("nested codes must differ (k1 > k2 required)")]
    NotStrictlyNested,
    #[error("additive code is not self-orthogonal")]
    NotSelfOrthogonal,
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
