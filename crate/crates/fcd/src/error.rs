//! Crate-wide error type and exit-code mapping.

use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library and surfaced by the CLI.
#[derive(Debug, Error)]
pub enum Error {
    /// Reading or writing a file failed.
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A dictionary stream does not start with the expected magic/version line.
    #[error("{path}: not a dictionary file (bad magic line {found:?})")]
    BadMagic { path: PathBuf, found: String },

    /// A dictionary or matrix file is structurally malformed.
    #[error("{path}: malformed {what} (line {line}): {reason}")]
    Malformed {
        path: PathBuf,
        what: &'static str,
        line: usize,
        reason: String,
    },

    /// A dictionary stream violates an invariant (out-of-order or duplicate entries).
    #[error("{path}: corrupt dictionary (line {line}): {reason}")]
    Corrupt {
        path: PathBuf,
        line: usize,
        reason: String,
    },

    /// A file that must be UTF-8 text is not.
    #[error("{path}: invalid UTF-8")]
    Encoding { path: PathBuf },

    /// A distance is undefined because the query-side dictionary is empty.
    #[error("distance undefined: dictionary of {doc_id:?} has no entries")]
    EmptyDictionary { doc_id: String },

    /// A distance is undefined because an input string is empty.
    #[error("distance undefined: {doc_id:?} is empty")]
    EmptyText { doc_id: String },

    /// The caller supplied an inconsistent or incomplete configuration.
    #[error("configuration error: {0}")]
    Config(String),

    /// An operation's precondition does not hold for the given input.
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    /// Stable process exit code for this error.
    ///
    /// 0 success, 1 user/config error, 2 i/o error, 3 data-format error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io { .. } => 2,
            Error::BadMagic { .. }
            | Error::Malformed { .. }
            | Error::Corrupt { .. }
            | Error::Encoding { .. } => 3,
            Error::EmptyDictionary { .. }
            | Error::EmptyText { .. }
            | Error::Config(_)
            | Error::Precondition(_) => 1,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
