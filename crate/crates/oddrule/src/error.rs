use std::io;
use std::path::PathBuf;

use oddrule_core::{GfError, OracleError, ParseError, PolyError, SchemeError};
use thiserror::Error;

/// Process exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// A verification check failed.
pub const EXIT_VERIFY: i32 = 1;
/// Bad arguments, unreadable files or malformed input.
pub const EXIT_INPUT: i32 = 2;
/// A state, term or solve limit was exceeded.
pub const EXIT_LIMIT: i32 = 3;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("{what}: {source}")]
    Parse { what: String, source: ParseError },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Gf(#[from] GfError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Verification(String),
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Scheme(SchemeError::TooManyStates { .. })
            | Error::Gf(GfError::TooManyStates { .. })
            | Error::Oracle(OracleError::TermBudget { .. }) => EXIT_LIMIT,
            Error::Verification(_) => EXIT_VERIFY,
            _ => EXIT_INPUT,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
