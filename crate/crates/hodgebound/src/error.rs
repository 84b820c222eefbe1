use std::path::PathBuf;

/// Errors of the command-line layer, each mapped to an exit code.
#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error(transparent)]
    Core(#[from] hodgebound_core::Error),
    #[error("spec file: {0}")]
    Spec(String),
    #[error("configuration: {0}")]
    Config(String),
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cache ledger {}: {msg}", path.display())]
    Ledger { path: PathBuf, msg: String },
}

impl AppError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        AppError::Io {
            path: path.into(),
            source,
        }
    }

    /// 1 for a violated property, 2 for input or configuration problems, 3
    /// for exhausted budgets or precision.
    pub fn exit_code(&self) -> i32 {
        use hodgebound_core::Error as E;
        match self {
            AppError::Core(E::Invariant(_)) => 1,
            AppError::Core(E::Budget { .. } | E::Precision(_) | E::Convergence(_)) => 3,
            _ => 2,
        }
    }
}

pub type AppResult<T> = Result<T, AppError>;
