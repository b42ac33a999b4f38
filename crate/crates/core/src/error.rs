use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("invalid base matrix: {0}")]
    InvalidBase(String),

    #[error("malformed input at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("shift search exhausted after {attempts} attempts")]
    SearchExhausted { attempts: usize },

    #[error("rule table `{rule}` is missing entry {entry}")]
    IncompleteRule { rule: String, entry: String },

    #[error("rule arity mismatch: rule has gamma={rule}, graph has gamma={graph}")]
    ArityMismatch { rule: usize, graph: usize },

    #[error("rule `{0}` is not zero-preserving")]
    NotZeroPreserving(String),

    #[error("word length {got} does not match code length {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("variable index {index} out of range for n={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("empty cascade")]
    EmptyCascade,

    #[error("too many patterns: C({n},{weight}) exceeds {limit}")]
    TooManyPatterns { n: usize, weight: usize, limit: u64 },

    #[error("unknown rule `{0}`")]
    UnknownRule(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
