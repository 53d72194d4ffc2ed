use thiserror::Error;

/// Errors raised by the solver library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("argument {value} is outside the domain of {function}")]
    Domain { function: &'static str, value: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("curve parameter {0} lies on a corner; use a graded curve with shifted nodes")]
    Corner(f64),

    #[error("parameters t = {t} and zeta = {zeta} coincide; use the split kernel evaluation")]
    Coincident { t: f64, zeta: f64 },

    #[error("grid does not match curve: {0}")]
    GridMismatch(String),

    #[error("point ({x}, {y}) {reason}")]
    Placement { x: f64, y: f64, reason: &'static str },

    #[error(
        "linear system is numerically singular (condition estimate {condition:e}); \
         the wavenumber may be an interior Dirichlet eigenvalue of the cavity"
    )]
    Singular { condition: f64 },

    #[error("relative residual {residual:e} exceeds tolerance {tolerance:e}")]
    Residual { residual: f64, tolerance: f64 },

    #[error("run failed at n = {n}: {source}")]
    Failed {
        n: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serialization(String),
}

impl Error {
    /// `true` for errors raised by the solve rather than by the inputs.
    pub fn is_solver_failure(&self) -> bool {
        matches!(self, Error::Singular { .. } | Error::Residual { .. } | Error::Failed { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Serialization(e.to_string())
    }
}
