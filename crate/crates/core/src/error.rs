use thiserror::Error;

/// A syntax error in one of the text formats (words, sequences, B-words).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: expected {expected}, found {found}")]
pub struct ParseError {
    pub position: usize,
    pub expected: String,
    pub found: String,
}

impl ParseError {
    pub(crate) fn new(position: usize, expected: impl Into<String>, found: impl Into<String>) -> Self {
        ParseError {
            position,
            expected: expected.into(),
            found: found.into(),
        }
    }

    pub(crate) fn at(input: &str, position: usize, expected: impl Into<String>) -> Self {
        let found = match input[position..].chars().next() {
            Some(c) => format!("{c:?}"),
            None => "end of input".to_string(),
        };
        ParseError::new(position, expected, found)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("period of an eventually periodic sequence must be nonempty")]
    EmptyPeriod,
    #[error("not a prefix set: {0}")]
    NotPrefixSet(String),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("rewrite rule {rule} does not apply at position {position}: {reason}")]
    RuleNotApplicable {
        rule: String,
        position: usize,
        reason: String,
    },
    #[error("standard form has depth {depth}, pushing the X-word requires depth at least {required}")]
    InsufficientDepth { depth: usize, required: usize },
    #[error("advancement failed: {0}")]
    Advance(String),
    #[error("diagram error: {0}")]
    Diagram(String),
    #[error("expansion budget of {0} steps exceeded")]
    BudgetExceeded(usize),
    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
