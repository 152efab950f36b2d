use std::path::PathBuf;

use matsemi_core::Error as CoreError;

/// Exit status of a command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass = 0,
    Violation = 1,
    Usage = 2,
}

impl Status {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Status::Pass
        } else {
            Status::Violation
        }
    }

    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl AppError {
    /// A failed internal consistency assertion is a mathematical finding;
    /// everything else is a problem with the input.
    pub fn status(&self) -> Status {
        match self {
            AppError::Core(CoreError::Inconsistent(_)) => Status::Violation,
            _ => Status::Usage,
        }
    }
}

pub type AppResult<T> = Result<T, AppError>;
