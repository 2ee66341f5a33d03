use thiserror::Error;

/// Errors raised by the core library.
///
/// Every variant maps to a stable machine-readable code through [`Error::code`],
/// which the CLI prints on standard error.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error(
        "congruence failure: coefficient of x^{index} in F - Q^2 is {value}, not divisible by 4"
    )]
    Congruence { index: usize, value: String },

    #[error("hypothesis violation: {0}")]
    Hypothesis(String),

    #[error("degenerate Richelot kernel: coefficient determinant vanishes")]
    DegenerateKernel,

    #[error("closed form mismatch for {what}: expected {expected}, computed {actual}")]
    Mismatch {
        what: String,
        expected: String,
        actual: String,
    },

    #[error("cache file is corrupt: {0}")]
    CacheCorrupt(String),

    #[error("cache poisoned for p = {p}: stored {stored}, recomputed {computed}")]
    CachePoisoned {
        p: u64,
        stored: String,
        computed: String,
    },

    #[error("internal error: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain(_) => "DOMAIN_ERROR",
            Error::Capacity(_) => "CAPACITY_ERROR",
            Error::Congruence { .. } => "CONGRUENCE_ERROR",
            Error::Hypothesis(_) => "HYPOTHESIS_VIOLATION",
            Error::DegenerateKernel => "DEGENERATE_KERNEL",
            Error::Mismatch { .. } => "CLOSED_FORM_MISMATCH",
            Error::CacheCorrupt(_) => "CACHE_CORRUPT",
            Error::CachePoisoned { .. } => "CACHE_POISONED",
            Error::Internal(_) => "INTERNAL_ERROR",
            Error::Io(_) => "IO_ERROR",
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    pub(crate) fn mismatch(
        what: impl Into<String>,
        expected: impl ToString,
        actual: impl ToString,
    ) -> Self {
        Error::Mismatch {
            what: what.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
