//! CLI error type and the process exit-code contract.

use etalab::EtaError;

/// Exit codes: 0 success, 2 usage/parse/config, 3 math domain,
/// 4 precision insufficient, 5 no zero found.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Math(#[from] EtaError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Math(e) => match e {
                EtaError::Config(_) => 2,
                EtaError::PrecisionInsufficient(_) => 4,
                EtaError::NoZero(_) => 5,
                _ => 3,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}
