use thiserror::Error;

/// Errors raised by key derivation, prime lookup and the analysis metrics.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("key must not be empty")]
    EmptyKey,
    #[error("key is {len} bytes; at most {max} are accepted")]
    KeyTooLong { len: usize, max: usize },
    #[error("key digests to a zero pseudo-code")]
    DegenerateKey,
    #[error("prime index {n} outside supported range 1..={max}")]
    IndexOutOfRange { n: u64, max: u64 },
    #[error("need at least {needed} bytes, got {got}")]
    InsufficientData { needed: u64, got: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
