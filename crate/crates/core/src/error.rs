use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// A solver or strategy was configured with out-of-range parameters.
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// The secular-equation root finder ran out of iterations.
    #[error(
        "cubic subproblem did not converge after {iterations} iterations \
         (best KKT residual {residual:.3e})"
    )]
    SubproblemNoConvergence { iterations: usize, residual: f64 },

    /// Malformed LIBSVM or trace input.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A trace file does not carry the expected CSV header.
    #[error("trace format error: {0}")]
    TraceFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::InvalidConfig(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}
