use thiserror::Error;

use crate::report::Report;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected} variables, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("rank mismatch: expected {expected} coordinates, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("duplicate name `{0}`")]
    DuplicateName(String),

    #[error("Groebner computation exceeded the step cap of {cap} reduction steps")]
    StepCap { cap: u64 },

    #[error("the ideal contains 1; the presented algebra would be zero")]
    ImproperIdeal,

    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),

    #[error("{what} has not been verified; check it before applying")]
    Unchecked { what: &'static str },

    #[error("{0}")]
    NotInSpan(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("verification failed: {}", .0.summary())]
    Verification(Box<Report>),

    #[error("search space of {size} candidates exceeds the limit of {limit}")]
    SearchTooLarge { size: u128, limit: u128 },

    #[error("malformed input: {0}")]
    Malformed(String),
}

impl Error {
    pub(crate) fn verification(report: Report) -> Self {
        Error::Verification(Box::new(report))
    }

    /// True for errors caused by the Groebner step cap or the enumeration guard.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::StepCap { .. } | Error::SearchTooLarge { .. })
    }
}
