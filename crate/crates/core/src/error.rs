use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{field} must be > 0")]
    NonPositive { field: &'static str },

    #[error("cannot parse {input:?} as a rational number")]
    Parse { input: String },

    #[error("turn {k} is outside the winning range [{l}, {m}]")]
    TurnOutOfRange { k: u64, l: u64, m: u64 },

    #[error("p must lie in [0, 1], got {0}")]
    BiasOutOfRange(String),

    #[error("p must lie strictly inside (0, 1), got {0}")]
    BiasAtPole(String),

    #[error("tolerance must be > 0, got {0}")]
    InvalidTolerance(f64),

    #[error("trials must be >= 1")]
    NoTrials,

    #[error("workers must be >= 1")]
    NoWorkers,

    #[error("game too large: {0}")]
    TooLarge(String),

    /// An internal consistency check failed. This is a bug, never a user error.
    #[error("internal consistency failure: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
