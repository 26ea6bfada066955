use thiserror::Error;

use crate::config::ConfigError;

#[derive(Debug, Error)]
pub enum LabError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("cell {cell}: {message}")]
    Cell { cell: String, message: String },
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}
