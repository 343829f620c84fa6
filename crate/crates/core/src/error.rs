use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("variable `{0}` does not occur in the context")]
    VariableOutOfContext(String),
    #[error("context has {vars} variables but the cap is {cap}")]
    ContextCap { vars: usize, cap: usize },
    #[error("invalid context: {0}")]
    InvalidContext(String),
    #[error("team is not a team over this context")]
    TeamOutOfContext,
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedToken,
    UnexpectedEnd,
    UnknownToken,
    Reserved,
    MalformedInclusion,
}

/// A syntax error with the byte offset at which it was detected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at offset {}: {}", self.position, self.message)
    }
}

impl core::error::Error for ParseError {}
