use serde::Serialize;
use thiserror::Error;

/// Runner failure with a stable exit code.
#[derive(Debug, Error)]
pub enum RunError {
    #[error("config error at `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error("{0}")]
    Symmetry(String),

    #[error("{0}")]
    Resource(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Compute(krylovlab::Error),
}

impl From<krylovlab::Error> for RunError {
    fn from(e: krylovlab::Error) -> Self {
        use krylovlab::Error as E;
        match e {
            E::SymmetryViolation { .. } => RunError::Symmetry(e.to_string()),
            E::ResourceExhausted(_) => RunError::Resource(e.to_string()),
            other => RunError::Compute(other),
        }
    }
}

/// JSON error record written to stderr by the binary.
#[derive(Debug, Serialize)]
pub struct ErrorRecord {
    pub kind: &'static str,
    pub exit_code: i32,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Schema { .. } => 2,
            RunError::Symmetry(_) => 3,
            RunError::Resource(_) => 4,
            RunError::Io { .. } | RunError::Compute(_) => 1,
        }
    }

    pub fn record(&self) -> ErrorRecord {
        let kind = match self {
            RunError::Schema { .. } => "schema",
            RunError::Symmetry(_) => "symmetry",
            RunError::Resource(_) => "resource",
            RunError::Io { .. } => "io",
            RunError::Compute(_) => "compute",
        };
        ErrorRecord {
            kind,
            exit_code: self.exit_code(),
            message: self.to_string(),
            path: match self {
                RunError::Schema { path, .. } => Some(path.clone()),
                _ => None,
            },
        }
    }
}
