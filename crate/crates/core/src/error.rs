use thiserror::Error;

/// Errors raised by the numerical kernels and experiment drivers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A literal failed to parse; `production` names the grammar rule that failed.
    #[error("malformed {production}: {message}")]
    Parse {
        production: &'static str,
        message: String,
    },

    #[error("degenerate fit: {0}")]
    DegenerateFit(String),

    #[error("precision loss: {0}")]
    PrecisionLoss(String),

    #[error("reduction did not terminate after {0} steps")]
    NonTermination(usize),

    #[error("too close to the pole of zeta at s = 1 (|s - 1| = {0:e})")]
    NearPole(f64),

    #[error("point is not reduced: {0}")]
    NotReduced(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("stationary point at x = {0} lies on the window boundary")]
    BoundaryStationaryPoint(f64),

    #[error("search exhausted: {0}")]
    NotFound(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(production: &'static str, message: impl Into<String>) -> Self {
        Error::Parse {
            production,
            message: message.into(),
        }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidParameter(message.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
