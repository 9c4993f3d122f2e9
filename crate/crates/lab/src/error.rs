use thiserror::Error;

pub type Result<T, E = LabError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum LabError {
    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] smoothlab::Error),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("report is not valid: {0}")]
    Report(String),

    #[error("replay mismatch: {0}")]
    ReplayMismatch(String),
}

impl LabError {
    /// Process exit code: 1 config error, 2 out of regime, 3 size limit,
    /// 4 replay mismatch.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Core(smoothlab::Error::OutOfRegime(_)) => 2,
            LabError::Core(smoothlab::Error::SizeLimit { .. }) => 3,
            LabError::ReplayMismatch(_) => 4,
            _ => 1,
        }
    }
}

pub(crate) fn config(msg: impl Into<String>) -> LabError {
    LabError::Config(msg.into())
}

pub(crate) fn io(path: &std::path::Path, source: std::io::Error) -> LabError {
    LabError::Io { path: path.display().to_string(), source }
}
