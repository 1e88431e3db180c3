use thiserror::Error;

/// Errors surfaced by ring construction, solvers, reductions and parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("not a ring: {axiom} fails ({detail})")]
    NotARing { axiom: &'static str, detail: String },

    #[error("not a group: {axiom} fails ({detail})")]
    NotAGroup { axiom: &'static str, detail: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("structure has {size} elements, exceeding the cap of {cap} (set RINGSOLVE_MAX_ELEMS to raise it)")]
    TooLarge { size: u128, cap: usize },

    #[error("search space too large: {0}")]
    Capacity(String),

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    /// A computation contradicted the underlying algebra. Never expected.
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
