use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not a primitive root of the required order")]
    InvalidRoot(String),
    #[error("root {0} does not satisfy the n-th power compatibility with zeta")]
    BadRoot(String),
    #[error("contraction limit does not exist: bracket of basis {0} and {1} has a negative s-exponent")]
    NonexistentLimit(usize, usize),
    #[error("variable {0} is not mapped to a basis element")]
    UnknownVariable(String),
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("truncation N={n} is not a positive multiple of the automorphism order m={m}")]
    BadTruncation { n: usize, m: usize },
    #[error("window too narrow: needs t-degree {needed}, window holds up to {available}")]
    WindowOverflow { needed: i64, available: i64 },
    #[error("bilinear form is degenerate")]
    DegenerateForm,
    #[error("bilinear form is not invariant")]
    NonInvariantForm,
    #[error("could not resolve eigenvector generators: {0}")]
    ResolutionFailed(String),
    #[error("no polynomial generating set found: {0}")]
    NonPolynomialInvariants(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("invalid grading: {0}")]
    InvalidGrading(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("unknown catalog entry: {0}")]
    UnknownCatalog(String),
    #[error("{0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse { location: location.into(), message: message.into() }
    }
}
