use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed continued-fraction spec: {0}")]
    ParseCf(String),
    #[error("partial quotient must be >= 1 (got {0})")]
    BadDigit(i64),
    #[error("digit stream exhausted at index {0} (finite expansion)")]
    DigitsExhausted(usize),
    #[error("integer overflow in convergent recurrence at level {0}")]
    Overflow(usize),
    #[error("input out of range: {0}")]
    OutOfRange(String),
    #[error("value at a branch/atom boundary within the working error bound: {0}")]
    Ambiguous(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("iteration budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("atom image mismatch: {0}")]
    ImageMismatch(String),
    #[error("inadmissible word: {0}")]
    Inadmissible(String),
    #[error("points are not in the same tile (orbits split at step {0})")]
    DifferentTiles(usize),
    #[error("not of even type: digit at level {0} is odd")]
    NotEvenType(usize),
    #[error("map constraint violated: {0}")]
    BadMap(String),
    #[error("rotation numbers certified different: {0}")]
    RotationMismatch(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
