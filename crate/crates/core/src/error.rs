use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid period matrix: {0}")]
    InvalidPeriodMatrix(String),

    #[error("requested error {requested:e} is below the floor 2^-{floor_bits} of {bits}-bit precision")]
    PrecisionTooLow {
        requested: f64,
        bits: u32,
        floor_bits: u32,
    },

    #[error("configuration rejected: {0}")]
    ConfigRejected(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("degenerate representation: {0}")]
    RepresentationDegenerate(String),

    #[error("coefficient {0} is not p-integral")]
    NotPIntegral(String),

    #[error("prime {0} is not a prime of good reduction for this model")]
    UnsupportedPrime(u64),

    #[error("internal precision failure: {0}")]
    Precision(String),
}
