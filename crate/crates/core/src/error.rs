use thiserror::Error;

/// Errors produced by the indicator, rolling engine and signal detectors.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A price was zero, negative or not finite.
    #[error("price at position {index} must be finite and strictly positive, got {value}")]
    NonPositivePrice { index: usize, value: f64 },

    #[error("price series needs at least 2 samples, got {0}")]
    TooShort(usize),

    #[error("timestamps: {0}")]
    Timestamps(String),

    #[error("index {index} out of range for series of length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    /// Both tunneling weights were zero, so no transition is defined.
    #[error("degenerate tunneling weights: q_next + q_prev = 0")]
    Degenerate,

    /// The linear-domain oracle overflowed or underflowed.
    #[error("direct product left the representable range at position {0}")]
    OracleRange(usize),

    #[error("stream has {have} of {need} prices; not ready")]
    NotReady { have: usize, need: usize },

    /// Caller supplied inconsistent parameters or inputs.
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
