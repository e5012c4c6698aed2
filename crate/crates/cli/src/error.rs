use mpc_core::MpcError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] MpcError),
    #[error("cannot write report: {0}")]
    Io(#[from] std::io::Error),
    #[error("cannot encode report: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot encode report: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Config(_) | Self::Core(MpcError::DimensionOverflow { .. }) => 2,
            Self::Core(MpcError::InvalidSpec(_)) => 2,
            Self::Core(_) => 1,
            Self::Io(_) | Self::Json(_) | Self::Csv(_) => 2,
        }
    }
}
