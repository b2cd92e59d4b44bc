use std::path::PathBuf;

/// Errors produced anywhere in the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("matrix is not symmetric: entry ({row}, {col}) = {value} has mirror {mirror:?}")]
    NotSymmetric {
        row: usize,
        col: usize,
        value: f64,
        mirror: Option<f64>,
    },

    #[error("invalid matrix structure: {0}")]
    Structure(String),

    #[error("vector entry {index} is {value}, expected -1 or +1")]
    NotSignVector { index: usize, value: f64 },

    #[error("matrix is not positive semidefinite: eigenvalue {eigenvalue} below -{threshold}")]
    NotPsd { eigenvalue: f64, threshold: f64 },

    #[error("matrix dimension {dim} exceeds dense limit {cap}; use the stochastic estimator instead")]
    TooLarge { dim: usize, cap: usize },

    #[error("matrix has zero trace; there is no state to normalize")]
    ZeroTrace,

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Short machine-readable tag for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::Domain(_) => "domain",
            Error::NotSymmetric { .. } => "not_symmetric",
            Error::Structure(_) => "structure",
            Error::NotSignVector { .. } => "not_sign_vector",
            Error::NotPsd { .. } => "not_psd",
            Error::TooLarge { .. } => "too_large",
            Error::ZeroTrace => "zero_trace",
            Error::Parse { .. } => "parse",
            Error::Config(_) => "config",
            Error::Io { .. } => "io",
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
