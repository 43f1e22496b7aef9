use bondcat::report::Report;

/// Process exit codes.
pub mod exit {
    pub const OK: u8 = 0;
    pub const INVALID: u8 = 1;
    pub const MALFORMED: u8 = 2;
    pub const NO: u8 = 3;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Unreadable or structurally wrong input; `pointer` is a JSON pointer.
    #[error("{file} at {}: {message}", crate::format::shown(pointer))]
    Malformed { file: String, pointer: String, message: String },

    #[error("{0}")]
    Usage(String),

    /// Well-formed input that fails validation.
    #[error("{what} is not valid:\n{report}")]
    Invalid { what: String, report: Report },

    /// A library operation refused its input.
    #[error("{0}")]
    Failed(String),

    #[error("cannot write {path}: {message}")]
    Write { path: String, message: String },
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Malformed { .. } | CliError::Usage(_) => exit::MALFORMED,
            CliError::Invalid { .. } | CliError::Failed(_) | CliError::Write { .. } => exit::INVALID,
        }
    }
}

impl From<bondcat::Error> for CliError {
    fn from(e: bondcat::Error) -> CliError {
        CliError::Failed(e.to_string())
    }
}
