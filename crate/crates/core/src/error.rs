use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at q = {0}")]
    Pole(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("counting matrix is not doubly stochastic: {0}")]
    NotDoublyStochastic(String),
    #[error("unsupported size n = {0}")]
    UnsupportedN(usize),
    #[error("missing Haar value for {0}")]
    UnknownValue(String),
    #[error("singular system ({rank} of {unknowns} unknowns determined)")]
    Singular { rank: usize, unknowns: usize },
    #[error("inconsistent system: {0}")]
    Inconsistent(String),
    #[error("schedule step {step}: {msg}")]
    Schedule { step: String, msg: String },
    #[error("order {order} exceeds the configured maximum {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("table format: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
