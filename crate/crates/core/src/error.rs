use alloc::string::String;
use core::fmt;

/// Errors raised by the algebraic core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Matrix or vector dimensions do not conform.
    Shape(String),
    /// An input violates the preconditions of an operation.
    Parameter(String),
    /// A requested enumeration exceeds the configured cost ceiling.
    Ceiling(String),
    /// An invariant that the mathematics guarantees was observed broken.
    Invariant(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Shape(m) => write!(f, "shape error: {m}"),
            Error::Parameter(m) => write!(f, "parameter error: {m}"),
            Error::Ceiling(m) => write!(f, "enumeration ceiling exceeded: {m}"),
            Error::Invariant(m) => write!(f, "invariant violated: {m}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! bail {
    ($kind:ident, $($arg:tt)*) => {
        return Err($crate::error::Error::$kind(alloc::format!($($arg)*)))
    };
}
pub(crate) use bail;
