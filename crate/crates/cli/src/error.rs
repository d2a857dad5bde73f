use thiserror::Error;

/// Failures of a `phcalc` invocation, each mapped to an exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid filtration: {0}")]
    Validation(phcalc_core::Error),

    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl CliError {
    /// 1 usage/parse, 2 validation, 3 mathematical invariant.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } | CliError::Io { .. } => 1,
            CliError::Validation(_) => 2,
            CliError::Invariant(_) => 3,
        }
    }
}
