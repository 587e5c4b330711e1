use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("boundary does not square to zero in degrees {0:?}")]
    InvalidComplex(Vec<i64>),

    #[error("invalid ideal: {0}")]
    InvalidIdeal(String),

    #[error("invalid ideal triple ({i}, {j}, {k}): need i >= j >= k >= 0")]
    InvalidTriple { i: i64, j: i64, k: i64 },

    #[error("module fails the ring relations: {}", .0.join("; "))]
    InvalidModule(Vec<String>),

    #[error("v-image intersection did not stabilize after {0} iterations")]
    NotStabilized(usize),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("input does not come from a space: {0}")]
    Inconsistent(String),

    #[error("duality out of range: {0}")]
    DualityRange(String),

    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(u32, u32),

    #[error("context error: {0}")]
    Context(String),

    #[error("unavailable: {0}")]
    Unavailable(String),

    #[error("ambiguous {what}: rank-consistent alternatives are {alternatives:?}")]
    Ambiguous {
        what: String,
        alternatives: Vec<u32>,
    },

    #[error("not applicable: {0}")]
    NotApplicable(String),
}
