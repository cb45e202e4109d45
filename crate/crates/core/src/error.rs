use thiserror::Error;

/// Errors raised by the library. Parse errors carry a 1-based position.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("index {index} out of range for {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid family parameters: {0}")]
    InvalidParams(String),

    #[error("unknown family `{0}`")]
    UnknownFamily(String),

    #[error("no predicate for these parameters: {0}")]
    NoPredicate(String),

    #[error("special component {component:?} matches no pattern: {reason}")]
    Unclassified { component: Vec<usize>, reason: String },

    #[error("malformed polytope: {0}")]
    Polytope(String),

    #[error("oracle bound exceeded: n = {n} > {bound}")]
    OracleBound { n: usize, bound: usize },
}

impl Error {
    pub(crate) fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Syntax { line, col, msg: msg.into() }
    }

    /// `true` for errors that stem from malformed input text.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Syntax { .. } | Error::Invariant(_) | Error::Polytope(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
