use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),

    #[error("{path}: {source}", path = .0.display(), source = .1)]
    Io(PathBuf, std::io::Error),

    #[error(transparent)]
    Model(#[from] dirac_edm::Error),

    #[error("output error: {0}")]
    Output(String),
}

impl CliError {
    /// Every error that stops a run is a configuration or validation
    /// problem; scenario-level numerical failures are reported through the
    /// result table instead.
    pub fn exit_code(&self) -> i32 {
        1
    }
}
