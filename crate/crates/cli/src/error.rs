use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("unsupported input: {0}")]
    Hypothesis(String),
    #[error("bad cocycle: {0}")]
    Cocycle(String),
    #[error("{0}")]
    #[cfg_attr(not(feature = "parallel"), allow(dead_code))]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Hypothesis(_) => 3,
            CliError::Cocycle(_) => 4,
            CliError::Internal(_) => 1,
        }
    }
}
