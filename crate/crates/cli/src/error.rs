use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error{}: {message}", line.map(|l| format!(" on line {l}")).unwrap_or_default())]
    Parse {
        line: Option<usize>,
        message: String,
    },
    #[error("{0}")]
    Core(#[from] ureg_core::Error),
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("criterion and oracle disagree: {0}")]
    Disagreement(String),
    #[error("cannot encode report: {0}")]
    Encode(#[from] serde_json::Error),
}

impl CliError {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        CliError::Parse {
            line: Some(line),
            message: message.into(),
        }
    }

    pub fn parse_global(message: impl Into<String>) -> Self {
        CliError::Parse {
            line: None,
            message: message.into(),
        }
    }

    /// Process exit status: 2 is left to argument errors.
    pub fn exit_code(&self) -> u8 {
        use ureg_core::Error as E;
        match self {
            CliError::Parse { .. } => 3,
            CliError::Core(E::InvarianceViolated(_)) => 4,
            CliError::Core(E::BoundExceeded { .. } | E::Overflow) => 5,
            CliError::Disagreement(_) => 6,
            CliError::Core(E::NotUnitRegular) => 7,
            CliError::Io { .. } => 8,
            CliError::Core(_) => 3,
            CliError::Encode(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
