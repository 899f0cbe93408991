use alloc::string::String;

/// Failure kinds shared by every module.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Malformed input data: bad rotation lists, unknown ids, loops, parallel edges.
    #[error("structural error: {0}")]
    Structure(String),
    /// A documented precondition of an operation does not hold.
    #[error("contract violation: {0}")]
    Contract(String),
    /// Input is well formed but outside what the operation accepts.
    #[error("rejected: {0}")]
    Rejected(String),
    /// The mesh router could not produce a linkage. Always a bug.
    #[error("routing failed: {0}")]
    Routing(String),
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! bail {
    ($kind:ident, $($arg:tt)*) => {
        return Err($crate::error::Error::$kind(alloc::format!($($arg)*)))
    };
}
pub(crate) use bail;
