use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, AuditError>;

#[derive(Debug, Error)]
pub enum AuditError {
    #[error("{}:{line} {message}", file.display())]
    Parse {
        file: PathBuf,
        line: usize,
        message: String,
    },

    #[error("line span {first}..={last} is outside a {available}-line file")]
    SpanOutOfBounds {
        first: usize,
        last: usize,
        available: usize,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: missing column `{column}` (mapped from `{field}`)", path.display())]
    MissingColumn {
        path: PathBuf,
        field: String,
        column: String,
    },

    #[error("{}:{line} {message}", path.display())]
    RowParse {
        path: PathBuf,
        line: u64,
        message: String,
    },

    #[error("empty input")]
    EmptyInput,

    #[error("{0}")]
    Config(String),
}

impl AuditError {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        AuditError::Io {
            path: path.into(),
            source,
        }
    }

    /// Whether the error aborts a run, as opposed to skipping one input.
    pub fn is_fatal(&self) -> bool {
        !matches!(self, AuditError::Parse { .. } | AuditError::RowParse { .. })
    }
}
