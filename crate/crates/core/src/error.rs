use thiserror::Error;

/// Failures shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("velocity undefined at t = 0")]
    UndefinedVelocity,
    #[error("argument {arg} outside the series window [0, {limit}]")]
    OutOfRange { arg: String, limit: f64 },
    #[error("enumeration of {requested} segments exceeds the cap of {cap}")]
    ResourceLimit { requested: u64, cap: u64 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
