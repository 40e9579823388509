use thiserror::Error;

/// Errors raised by channel construction, parameter validation and the
/// probability sanity check.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid channel: {0}")]
    InvalidChannel(String),
    #[error("invalid algorithm parameters: {0}")]
    InvalidParams(String),
    #[error("invalid ensemble configuration: {0}")]
    InvalidConfig(String),
    #[error("{what} violates its invariant (deviation {deviation:e})")]
    Invariant { what: &'static str, deviation: f64 },
    #[error("measurement probability {0} outside [0, 1] beyond tolerance")]
    ProbabilityOutOfRange(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
