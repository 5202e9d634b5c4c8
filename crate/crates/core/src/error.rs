use thiserror::Error;

/// Errors raised by encoding, simulation and export routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FsmError {
    #[error("invalid encoding parameters: {0}")]
    InvalidEncoding(String),
    #[error("genome has {actual} bits, encoding expects {expected}")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("gene {gene}: {field} field value {value} is out of range (limit {limit})")]
    Uncorrected {
        gene: usize,
        field: &'static str,
        value: u32,
        limit: u32,
    },
    #[error("machine shape does not match: {0}")]
    ShapeMismatch(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("course generation failed: {0}")]
    CourseGeneration(String),
    #[error("invalid module name `{0}`")]
    InvalidModuleName(String),
}

pub type Result<T, E = FsmError> = std::result::Result<T, E>;

pub(crate) fn parse_err(line: usize, msg: impl Into<String>) -> FsmError {
    FsmError::Parse {
        line,
        msg: msg.into(),
    }
}
