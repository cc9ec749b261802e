use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("division by zero")]
    DivisionByZero,

    #[error("galois exponent {k} is not coprime to order {n}")]
    NotCoprime { k: i64, n: u64 },

    #[error("not an algebraic integer: {0}")]
    NotIntegral(String),

    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("schema violation at `{path}`: {msg}")]
    Schema { path: String, msg: String },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("class functions belong to different tables")]
    TableMismatch,

    #[error("singular system: {0}")]
    Singular(String),

    #[error("missing data: {0}")]
    Missing(String),

    #[error("generalised decomposition methods disagree: {0}")]
    MethodMismatch(String),

    #[error("search space of {count} candidates exceeds bound (block size {size} > {bound})")]
    BoundExceeded { count: u128, size: usize, bound: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),
}

impl Error {
    pub(crate) fn schema(path: impl Into<String>, msg: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            msg: msg.into(),
        }
    }

    /// True for errors that indicate malformed or inconsistent input data.
    pub fn is_data_error(&self) -> bool {
        !matches!(self, Error::Precondition(_) | Error::BoundExceeded { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
