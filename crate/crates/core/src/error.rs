use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("degenerate gram matrix")]
    Degenerate,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("group is not small: {0}")]
    NotSmall(String),
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("unclassified, index {0}")]
    Unclassified(u64),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
