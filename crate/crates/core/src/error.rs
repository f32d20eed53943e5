use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown element `{0}`")]
    UnknownElement(String),

    #[error("enumeration budget exceeded: {what} needs {needed}, limit is {limit}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("invalid instance at `{path}`: {message}")]
    Semantic { path: String, message: String },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{0}")]
    Invalid(String),

    #[error(
        "guarantee violated on `{instance}`: greedy {greedy} is below half of the optimum {opt}"
    )]
    GuaranteeViolation {
        instance: String,
        greedy: crate::value::Value,
        opt: crate::value::Value,
        serialized: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn semantic(path: impl Into<String>, message: impl Into<String>) -> Error {
        Error::Semantic {
            path: path.into(),
            message: message.into(),
        }
    }
}
