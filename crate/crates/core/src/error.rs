use thiserror::Error;

/// Every failure mode surfaced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("time stamps are not strictly increasing at index {0}")]
    NonMonotoneTime(usize),
    #[error("path is constant")]
    ConstantPath,
    #[error("non-finite value at index {0}")]
    NonFiniteValue(usize),
    #[error("time interval [{0}, {1}] outside the path domain")]
    OutOfRange(f64, f64),
    #[error("scale must be positive, got {0}")]
    NonPositiveScale(f64),
    #[error("trimmed tree at scale {0} is empty")]
    EmptyTrimmedTree(f64),
    #[error("invalid exponent {0}")]
    InvalidExponent(f64),
    #[error("only {0} usable scales, need at least {1}")]
    InsufficientScales(usize, usize),
    #[error("regression fit too poor (r2 = {0:.3})")]
    PoorFit(f64),
    #[error("too few leaves ({0}) for the estimator")]
    TooFewLeaves(usize),
    #[error("integral did not converge: {0}")]
    NonConvergent(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("Hurst index must lie in (0, 1), got {0}")]
    InvalidHurst(f64),
    #[error("stability index must lie in (0, 2], got {0}")]
    InvalidAlpha(f64),
    #[error("circulant embedding is not positive semidefinite")]
    EmbeddingNotPsd,
    #[error("Picard iteration did not converge: {0}")]
    NoConvergence(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable name for the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyInput => "EmptyInput",
            Error::NonMonotoneTime(_) => "NonMonotoneTime",
            Error::ConstantPath => "ConstantPath",
            Error::NonFiniteValue(_) => "NonFiniteValue",
            Error::OutOfRange(..) => "OutOfRange",
            Error::NonPositiveScale(_) => "NonPositiveScale",
            Error::EmptyTrimmedTree(_) => "EmptyTrimmedTree",
            Error::InvalidExponent(_) => "InvalidExponent",
            Error::InsufficientScales(..) => "InsufficientScales",
            Error::PoorFit(_) => "PoorFit",
            Error::TooFewLeaves(_) => "TooFewLeaves",
            Error::NonConvergent(_) => "NonConvergent",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::InvalidHurst(_) => "InvalidHurst",
            Error::InvalidAlpha(_) => "InvalidAlpha",
            Error::EmbeddingNotPsd => "EmbeddingNotPSD",
            Error::NoConvergence(_) => "NoConvergence",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
