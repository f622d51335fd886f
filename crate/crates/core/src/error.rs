//! Error types shared across the toolkit.

use thiserror::Error;

/// A specialized Result for toolkit operations.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors that can occur while verifying, estimating, or solving.
#[derive(Error, Debug)]
pub enum Error {
    /// The point set backing a space is empty or malformed.
    #[error("invalid domain: {0}")]
    Domain(String),

    /// A parameter violates its documented range or admissibility constraint.
    #[error("invalid parameter `{field}`: {message}")]
    InvalidParam {
        field: &'static str,
        message: String,
    },

    /// A distance, map, kernel, or right-hand side produced a negative or
    /// non-finite value.
    #[error("evaluation error at {witness}: value {value} is not admissible")]
    Evaluation { witness: String, value: f64 },

    /// An iterate left the space's domain.
    #[error("iterate left the domain at {witness}")]
    Closure { witness: String },

    /// Residuals grew for a full detection window; the iteration is treated
    /// as divergent.
    #[error(
        "iteration diverged: residuals grew for {window} consecutive steps \
         (mean growth factor {factor:.6})"
    )]
    Divergence { window: usize, factor: f64 },

    /// A contraction precondition failed while running in strict mode.
    #[error("contraction precondition violated: {message}")]
    Precondition { message: String },

    /// The problem file could not be parsed.
    #[error("problem file parse error: {0}")]
    Parse(String),

    /// The problem file parsed but a field violates its constraint.
    #[error("invalid problem file: `{field}`: {message}")]
    Validation { field: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid_param(field: &'static str, message: impl Into<String>) -> Self {
        Error::InvalidParam {
            field,
            message: message.into(),
        }
    }

    pub(crate) fn validation(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            message: message.into(),
        }
    }

    /// Process exit status used by the CLI for this error class.
    ///
    /// 2 = validation/parse failure, 3 = divergence or violated solver
    /// precondition, 4 = evaluation failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Validation { .. } | Error::InvalidParam { .. } => 2,
            Error::Divergence { .. } | Error::Precondition { .. } => 3,
            Error::Domain(_) | Error::Evaluation { .. } | Error::Closure { .. } => 4,
            Error::Io(_) => 2,
        }
    }
}
