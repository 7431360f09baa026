use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{0}")]
    Parse(String),

    #[error("{0}")]
    Usage(String),

    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error(transparent)]
    Core(#[from] lvar_core::Error),
}

impl CliError {
    /// Process exit status.
    ///
    /// | code | meaning |
    /// |------|---------|
    /// | 1 | other numerical failure |
    /// | 2 | unreadable or malformed input, bad flags, unknown suite |
    /// | 3 | infeasible profile |
    /// | 4 | search bracket failure |
    /// | 5 | unwritable output path |
    pub fn exit_code(&self) -> i32 {
        use lvar_core::Error as E;
        match self {
            CliError::Read { .. } | CliError::Parse(_) | CliError::Usage(_) => 2,
            CliError::Write { .. } => 5,
            CliError::Core(e) => match e {
                E::InfeasibleProfile { .. } => 3,
                E::Bracket(_) => 4,
                E::UnknownSuite(_)
                | E::InvalidParameter(_)
                | E::InvalidFunction(_)
                | E::NoData
                | E::NoDualFunction(_) => 2,
                _ => 1,
            },
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
