use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("{what} = {value} is outside the admissible domain ({bound})")]
    Domain {
        what: &'static str,
        value: f64,
        bound: String,
    },

    /// The integral cache does not reach far enough.
    #[error("t = {requested} lies beyond the cached range [0, {cached_max}]; extend the cache to at least {requested} first")]
    OutOfRange { requested: f64, cached_max: f64 },

    /// A root finder or other iterative method did not converge.
    #[error("numerical failure in {context}: {detail}")]
    Numerical {
        context: &'static str,
        detail: String,
    },

    /// A structural invariant of a computed object was violated.
    #[error("invariant violated: {0}")]
    Invariant(String),

    /// An on-disk cache was built with a different configuration.
    #[error(
        "cache {path:?} was built with `{found}` but the current configuration is `{expected}`"
    )]
    FingerprintMismatch {
        path: PathBuf,
        expected: String,
        found: String,
    },

    /// A cache file could not be parsed.
    #[error("malformed cache file {path:?} at line {line}: {detail}")]
    Corrupt {
        path: PathBuf,
        line: usize,
        detail: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, value: f64, bound: impl Into<String>) -> Error {
    Error::Domain {
        what,
        value,
        bound: bound.into(),
    }
}
