use thiserror::Error;

#[derive(Debug, Error)]
pub enum LabError {
    /// Bad flag, config key or parameter value.
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] dlfec_core::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl LabError {
    /// Errors caused by the invocation rather than the run.
    pub fn is_usage(&self) -> bool {
        matches!(self, LabError::Usage(_) | LabError::Core(dlfec_core::Error::InvalidParameter(_)))
    }
}

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T, LabError> {
    Err(LabError::Usage(msg.into()))
}
