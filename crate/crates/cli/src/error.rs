use thiserror::Error;

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}:{column}: syntax error: {message}")]
    Syntax { path: String, line: usize, column: usize, message: String },

    #[error(transparent)]
    Polynomial(Box<PolySyntax>),

    #[error("{path}: schema violation at {field}: {message}")]
    Schema { path: String, field: String, message: String },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] lra_core::Error),
}

/// A polynomial string that failed to parse, with a caret under the column.
#[derive(Debug, Error)]
#[error("{path}: syntax error in {field} at column {column}: {message}\n  {text}\n  {caret}^")]
pub struct PolySyntax {
    pub path: String,
    pub field: String,
    pub text: String,
    pub column: usize,
    pub caret: String,
    pub message: String,
}

impl CliError {
    /// 3 for resource caps, 2 for every other input problem.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_resource() => 3,
            _ => 2,
        }
    }
}
