//! Error classification for process exit codes: 0 success, 1 usage,
//! 2 data error, 3 transient provider error.

use steamnet_core::characterization::CharacterizationError;
use steamnet_core::clustering::ClusteringError;
use steamnet_core::embedding::EmbeddingError;
use steamnet_core::graph::GraphError;
use steamnet_core::sampling::{ProviderError, SamplingError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Transient(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Transient(_) => 3,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<SamplingError> for CliError {
    fn from(e: SamplingError) -> Self {
        match &e {
            SamplingError::Aborted {
                source: ProviderError::Transient(_),
                ..
            } => CliError::Transient(e.to_string()),
            _ => CliError::Data(e.to_string()),
        }
    }
}

impl From<ProviderError> for CliError {
    fn from(e: ProviderError) -> Self {
        match e {
            ProviderError::Transient(m) => CliError::Transient(m),
            ProviderError::Data(m) => CliError::Data(m),
        }
    }
}

impl From<EmbeddingError> for CliError {
    fn from(e: EmbeddingError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<ClusteringError> for CliError {
    fn from(e: ClusteringError) -> Self {
        CliError::Data(e.to_string())
    }
}

impl From<CharacterizationError> for CliError {
    fn from(e: CharacterizationError) -> Self {
        CliError::Data(e.to_string())
    }
}
