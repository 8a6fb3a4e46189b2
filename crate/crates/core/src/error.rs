use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("malformed input at line {line}: {msg}")]
    MalformedInput { line: usize, msg: String },

    #[error("arc label `{label}` occurs {count} times (expected 2)")]
    ArcDegree { label: String, count: usize },

    #[error("unknown arc `{0}`")]
    UnknownArc(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("the empty diagram has no normalized bracket")]
    EmptyDiagram,

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("parity error: {0}")]
    Parity(String),

    #[error("formula mismatch: {0}")]
    FormulaMismatch(String),

    #[error("polynomial is not expandable in powers of a+a^-1: {0}")]
    NonExpandable(String),

    #[error("invalid annulus diagram: {0}")]
    InvalidAnnulus(String),

    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn malformed(line: usize, msg: impl Into<String>) -> Self {
        Error::MalformedInput { line, msg: msg.into() }
    }
}
