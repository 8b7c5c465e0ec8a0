use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("root order {requested} exceeds the configured cap {cap}")]
    RootOrderOverflow { requested: u64, cap: u64 },

    #[error("cochain is not a cocycle: pentagon fails at ({}, {}, {}, {})", .0[0], .0[1], .0[2], .0[3])]
    NotACocycle([usize; 4]),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("invalid boundary coloring: {0}")]
    InvalidBoundary(String),

    #[error("move inapplicable: {0}")]
    MoveInapplicable(String),

    #[error("move rejected: {0}")]
    MoveRejected(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid composition: {0}")]
    InvalidComposition(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}
