use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad arguments or a quadruple violating its invariants.
    #[error("invalid input: {0}")]
    Invalid(String),
    /// `--verify` found a difference or no reference data.
    #[error("verification failed: {0}")]
    Mismatch(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Invalid(_) | CliError::Io { .. } => 2,
        }
    }

    pub fn io(path: &std::path::Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }
}

impl From<coxtype::Error> for CliError {
    fn from(e: coxtype::Error) -> Self {
        CliError::Invalid(e.to_string())
    }
}
