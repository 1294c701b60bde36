use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("illegal move: {0}")]
    IllegalMove(String),

    #[error("integer overflow: {0}")]
    Overflow(&'static str),

    #[error("pop with an empty turtle state stack at command {index}")]
    UnbalancedPop { index: usize },

    #[error("line {line}: duplicate rule for symbol '{symbol}'")]
    DuplicateRule { line: usize, symbol: char },

    #[error("missing axiom")]
    MissingAxiom,

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("expansion exceeds {cap} symbols")]
    OutputTooLarge { cap: usize },

    #[error("invalid system: {0}")]
    InvalidSystem(String),

    #[error("givens conflict: {0}")]
    InvalidGivens(String),

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("no crossings observed in {drops} drops; estimate undefined")]
    EstimateUndefined { drops: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
