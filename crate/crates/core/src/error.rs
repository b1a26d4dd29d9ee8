use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{what} needs {needed} elements, cap is {cap}")]
    CapExceeded { what: String, needed: u128, cap: u128 },

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("ring axiom violated: {0}")]
    InvalidRing(String),

    #[error("element set is not a subgroup")]
    NotSubgroup,

    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u64),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("elements belong to different group rings")]
    ParentMismatch,

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
