use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("pad undefined: n = {n} < ‖λ‖ + λ1 = {needed}")]
    PadUndefined { n: u64, needed: u64 },

    #[error("label is not of the form λ[n]: {0}")]
    NotPadded(String),

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("bad parameters: {0}")]
    BadParameters(String),

    #[error("size guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("action not closed: {0}")]
    ActionNotClosed(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("not enough cuspidals of degree {degree}: label needs {needed}, field has {available}")]
    PoolExhausted {
        degree: u32,
        needed: usize,
        available: String,
    },

    #[error("inexact division: {0}")]
    InexactDivision(String),
}

impl Error {
    /// Process exit code for a CLI reporting this error.
    ///
    /// Every error here is an input or guard problem, so all map to 2 except
    /// arithmetic that should have been exact, which indicates a failed check.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InexactDivision(_) | Error::ActionNotClosed(_) => 1,
            _ => 2,
        }
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::BoundExceeded(_) => "bound_exceeded",
            Error::PadUndefined { .. } => "pad_undefined",
            Error::NotPadded(_) => "not_padded",
            Error::SizeMismatch(_) => "size_mismatch",
            Error::BadParameters(_) => "bad_parameters",
            Error::GuardExceeded(_) => "guard_exceeded",
            Error::ActionNotClosed(_) => "action_not_closed",
            Error::DimensionMismatch(_) => "dimension_mismatch",
            Error::PoolExhausted { .. } => "pool_exhausted",
            Error::InexactDivision(_) => "inexact_division",
        }
    }
}
