use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("coefficient `{0}` is not valid in the configured field")]
    BadCoefficient(String),
    #[error("index {k} out of range for degree {n}")]
    IndexRange { n: usize, k: String },
    #[error("expected a homogeneous element of degree {expected}, found degree {found}")]
    Inhomogeneous { expected: usize, found: usize },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("field mismatch")]
    FieldMismatch,
    #[error("subspace is not contained in the ambient subspace")]
    NotContained,
    #[error("representation too large: {0}")]
    TooLarge(String),
    #[error("invalid field: {0}")]
    BadField(String),
    #[error("schedule error: {0}")]
    Schedule(String),
    #[error("construction failure: {0}")]
    Construction(String),
    #[error("degree {degree} needs levels through {needed}, but only {built} are built")]
    Range { degree: usize, needed: usize, built: usize },
    #[error("element has a nonzero constant term")]
    ConstantTerm,
    #[error("operation requires monomial-spanned levels: {0}")]
    NonMonomial(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
