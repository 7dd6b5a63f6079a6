use avp_core::Error as CoreError;
use thiserror::Error;

/// Failure of a command, carrying its exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or invalid input: files, JSON, expressions, flags.
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Numeric(String),
    #[error("{0}")]
    Misaligned(String),
    /// Reference table not reproduced.
    #[error("{0}")]
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Numeric(_) => 2,
            CliError::Misaligned(_) => 3,
            CliError::Mismatch(_) => 4,
        }
    }

    pub fn input(context: &str, err: impl std::fmt::Display) -> Self {
        CliError::Input(format!("{context}: {err}"))
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        let msg = e.to_string();
        match e.root() {
            CoreError::GridMisalignment { .. } => CliError::Misaligned(msg),
            CoreError::NumericOverflow { .. } | CoreError::DegenerateOrder { .. } => CliError::Numeric(msg),
            _ => CliError::Input(msg),
        }
    }
}
