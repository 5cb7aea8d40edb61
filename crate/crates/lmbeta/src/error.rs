use std::io;
use std::path::PathBuf;

/// Failure of a command, carrying its process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Bad arguments or unusable input data. Exit code 2.
    #[error("{0}")]
    Invalid(String),

    /// Reading or writing a file failed. Exit code 3.
    #[error("{path}: {source}")]
    Io {
        /// File involved.
        path: PathBuf,
        /// Underlying error.
        source: io::Error,
    },

    /// The circulant operator could not be inverted. Exit code 4.
    #[error("{0}")]
    Singular(String),
}

impl CliError {
    /// Process exit code: 2 bad input, 3 I/O, 4 singular operator.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Singular(_) => 4,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<lmbeta_core::Error> for CliError {
    fn from(e: lmbeta_core::Error) -> Self {
        match e {
            lmbeta_core::Error::SingularOperator { .. } => CliError::Singular(e.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}
