use thiserror::Error;

/// Crate-wide error type.
///
/// `Numeric` marks failures of the linear-algebra core; everything else is
/// invalid input of one kind or another. The CLI maps this split onto its
/// exit codes.
#[derive(Debug, Error)]
pub enum Error {
    /// A 4-bit state code outside `0..=15`, or a malformed binary token.
    #[error("invalid state code: {0}")]
    InvalidCode(String),
    /// An argument outside its documented domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A (current, previous) state pair that is not a single automaton step.
    #[error("history error: {0}")]
    History(String),
    /// A two-leg state that violates the active rule table.
    #[error("sync error: {0}")]
    Sync(String),
    /// Non-finite input or a failed matrix factorization.
    #[error("numeric error: {0}")]
    Numeric(String),
    /// Input with no usable variation (constant series and the like).
    #[error("degenerate input: {0}")]
    Degenerate(String),
    /// Conformability failure between matrices, series, or models.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// Malformed file content, with a line diagnostic.
    #[error("parse error at {path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
