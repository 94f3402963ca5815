use thiserror::Error;

/// Errors raised by the engine and the checkers built on top of it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CaError {
    /// Malformed or inconsistent input (bad state index, wrong support size, ...).
    #[error("invalid input: {0}")]
    Input(String),

    /// Two values that must share a dimension do not.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    /// A configured resource bound would be exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// Text input that failed to parse, annotated with its position (1-based).
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl CaError {
    pub fn input(msg: impl Into<String>) -> Self {
        CaError::Input(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        CaError::Resource(msg.into())
    }

    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        CaError::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            CaError::Resource(_) => 4,
            _ => 3,
        }
    }
}

impl From<std::io::Error> for CaError {
    fn from(e: std::io::Error) -> Self {
        CaError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CaError>;
