use thiserror::Error;

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_VERDICT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid parameter: {0}")]
    Invalid(eo_algebra::Error),
    #[error("internal assertion failed: {0}")]
    Internal(String),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed grid file {path}: {source}")]
    Grid {
        path: String,
        #[source]
        source: serde_json::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Internal(_) => EXIT_INTERNAL,
            _ => EXIT_USAGE,
        }
    }
}

impl From<eo_algebra::Error> for CliError {
    fn from(e: eo_algebra::Error) -> Self {
        use eo_algebra::Error as E;
        match e {
            E::NotNilpotent { .. }
            | E::NotDegreeDecreasing { .. }
            | E::MismatchedRings
            | E::NotAUnit
            | E::NoOrderPUnit { .. }
            | E::Inconsistent(_)
            | E::DimensionMismatch(_) => CliError::Internal(e.to_string()),
            _ => CliError::Invalid(e),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Internal(format!("serialization: {e}"))
    }
}
