//! Error types shared across the toolkit.

use thiserror::Error;

/// Toolkit-wide error type.
///
/// Variants map onto the CLI exit codes: invalid input (2), cell budget (3),
/// window or shear-constraint violations (4), nonzero rotation number (5).
#[derive(Debug, Error)]
pub enum GfhError {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("cell budget exceeded: grid requires {cells} cells, budget is {budget}")]
    BudgetExceeded { cells: u128, budget: u64 },

    #[error("window violation: {0}")]
    WindowViolation(String),

    #[error("nonzero rotation number: {0}")]
    NonzeroRotation(String),

    #[error("internal error: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl GfhError {
    /// Process exit code used by the `gfh` binary for this error class.
    pub fn exit_code(&self) -> i32 {
        match self {
            GfhError::InvalidInput(_) | GfhError::Io(_) | GfhError::Json(_) => 2,
            GfhError::BudgetExceeded { .. } => 3,
            GfhError::WindowViolation(_) => 4,
            GfhError::NonzeroRotation(_) => 5,
            GfhError::Internal(_) => 70,
        }
    }
}

pub type Result<T> = std::result::Result<T, GfhError>;
