use std::io;

use linkinv_core::linalg::LinalgError;
use linkinv_core::Error as CoreError;

/// Process exit codes.
pub mod exit {
    pub const HOLDS: i32 = 0;
    pub const FAILS: i32 = 1;
    pub const INPUT: i32 = 2;
    pub const PRECONDITION: i32 = 3;
    pub const VACUOUS: i32 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Malformed or schema-violating input; `at` names the file and field.
    #[error("{at}: {message}")]
    Input { at: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Core(#[from] CoreError),
    #[error("{0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn input(at: impl Into<String>, message: impl Into<String>) -> Self {
        Self::Input { at: at.into(), message: message.into() }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Input { .. } | Self::Usage(_) | Self::Io(_) => exit::INPUT,
            Self::Core(e) => match e {
                CoreError::NotSquare { .. }
                | CoreError::InvalidDimension(_)
                | CoreError::DimensionMismatch { .. }
                | CoreError::InvalidExponent(_)
                | CoreError::UnknownCatalogName(_)
                | CoreError::AngleOutOfRange(_)
                | CoreError::OutOfRange(_)
                | CoreError::MalformedBlocks(_)
                | CoreError::Linalg(LinalgError::DimensionMismatch { .. } | LinalgError::NotSquare { .. }) => exit::INPUT,
                _ => exit::PRECONDITION,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
