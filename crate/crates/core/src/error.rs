use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field of order {p}^{e} exceeds the supported bound {bound}")]
    FieldTooLarge { p: u64, e: u32, bound: u64 },
    #[error("{n} does not divide the multiplicative order {order}")]
    RootOrder { n: u64, order: u64 },
    #[error("GF({sub}) does not embed in GF({sup})")]
    IncompatibleFields { sub: u64, sup: u64 },
    #[error("invalid q = {q}: {reason}")]
    InvalidQ { q: u64, reason: &'static str },
    #[error("resource bound exceeded: {0}")]
    Bound(String),
    #[error("element is not an idempotent")]
    NotIdempotent,
    #[error("coefficient field does not split the algebra (center of dimension {center_dim})")]
    SplittingFailure { center_dim: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn internal<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Internal(msg.into()))
}
