use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("invalid web rule ({kind}) at tuple {tuple:?}")]
    InvalidRule { kind: &'static str, tuple: [u8; 5] },
    #[error("unresolved: {0}")]
    Unresolved(String),
    #[error("memory budget exceeded: {needed} cells requested, cap {cap}")]
    MemoryCap { needed: u64, cap: u64 },
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short machine-readable tag used in JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::Precondition(_) => "precondition",
            Error::UnknownRule(_) => "unknown_rule",
            Error::InvalidRule { .. } => "invalid_rule",
            Error::Unresolved(_) => "unresolved",
            Error::MemoryCap { .. } => "memory_cap",
            Error::Checkpoint(_) => "checkpoint",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
