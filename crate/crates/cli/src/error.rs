use std::path::PathBuf;

use persistor_core::Error as CoreError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}:{line}: {msg}")]
    Parse { path: String, line: usize, msg: String },
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    /// 2 for bad input, 3 for a failed mathematical precondition, 4 for an
    /// internal inconsistency.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Core(e) => match e {
                CoreError::MalformedSimplex(_)
                | CoreError::ZeroVertex
                | CoreError::NonFinite(_)
                | CoreError::MissingValue(_)
                | CoreError::Shape(_) => 2,
                CoreError::DuplicatePoint(..) | CoreError::DegenerateCloud | CoreError::NonGeneric(..) => 3,
                _ => 4,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
