use thiserror::Error;

/// Errors raised by every layer of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("invalid numerical semigroup: {0}")]
    InvalidSemigroup(String),

    #[error("normalization is not k[[t]]: generator orders have gcd {0}")]
    NotNormalizedByPowerSeries(u64),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precision exhausted, raise N (needed {needed}, have {available})")]
    PrecisionExhausted { needed: usize, available: usize },

    #[error("enumeration budget of {budget} candidates exceeded; unexplored stratum: {stratum}")]
    BudgetExceeded { budget: u64, stratum: String },

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Machine-readable reason tag used in JSON error objects.
    pub fn reason(&self) -> &'static str {
        match self {
            Error::Config(_) => "config",
            Error::InvalidSemigroup(_) => "invalid_semigroup",
            Error::NotNormalizedByPowerSeries(_) => "out_of_model",
            Error::Parse { .. } => "parse",
            Error::Domain(_) => "domain",
            Error::PrecisionExhausted { .. } => "precision_exhausted",
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::InvariantViolation(_) => "invariant_violation",
            Error::Io(_) => "io",
        }
    }

    /// Process exit code: 2 for rejected input, 3 for exhausted resources.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::PrecisionExhausted { .. } | Error::BudgetExceeded { .. } => 3,
            Error::InvariantViolation(_) | Error::Io(_) => 1,
            _ => 2,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
