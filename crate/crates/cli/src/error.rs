use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("config key `{key}`: {message}")]
    Invalid { key: String, message: String },

    #[error("unknown verify module `{0}`")]
    UnknownModule(String),

    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Compute(#[from] zbw_core::Error),

    #[error("{0} verification check(s) failed")]
    ChecksFailed(usize),
}

impl CliError {
    pub fn invalid(key: &str, message: impl Into<String>) -> Self {
        CliError::Invalid {
            key: key.to_string(),
            message: message.into(),
        }
    }

    /// 0 success, 1 check failure, 2 config error, 3 computation or I/O error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::ChecksFailed(_) => 1,
            CliError::Syntax { .. } | CliError::Invalid { .. } | CliError::UnknownModule(_) | CliError::Read { .. } => 2,
            CliError::Write { .. } | CliError::Compute(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
