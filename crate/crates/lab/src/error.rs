use std::path::PathBuf;

/// Failures that end a lab command. Inequality violations are not errors;
/// they are reported through the exit code.
#[derive(Debug, thiserror::Error)]
pub enum LabError {
    #[error("config: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] monogamy_core::Error),
    #[error("{0}")]
    Usage(String),
}

impl LabError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        LabError::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, LabError>;

/// Exit status for a run with no violations.
pub const EXIT_OK: i32 = 0;
/// Exit status for usage, config and I/O failures.
pub const EXIT_ERROR: i32 = 1;
/// Exit status when any inequality instance is violated.
pub const EXIT_VIOLATION: i32 = 2;
