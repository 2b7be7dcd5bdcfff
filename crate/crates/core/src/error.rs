use thiserror::Error;

/// Coarse classification used by callers that map errors to exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed input: a type invariant failed at construction time.
    Validation,
    /// Well-formed input outside an operation's domain or precondition.
    Domain,
}

/// Errors for spectral-scale computations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid breakpoints: {0}")]
    InvalidBreakpoints(String),

    #[error("values must be non-increasing (index {index})")]
    ValuesNotSorted { index: usize },

    #[error("nonpositive weight at index {index}")]
    NonpositiveWeight { index: usize },

    #[error("weights must sum to 1 (got {got})")]
    WeightSum { got: f64 },

    #[error("non-finite entry: {0}")]
    NonFinite(&'static str),

    #[error("matrix is not Hermitian (deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix must be square (got {rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("empty spectrum set")]
    EmptySpectrum,

    #[error("argument out of range: {0}")]
    OutOfRange(&'static str),

    #[error("negative value where nonnegative required: {0}")]
    NegativeValue(&'static str),

    #[error("majorization precondition failed: {0}")]
    NotMajorized(&'static str),

    #[error("submajorization precondition failed: {0}")]
    NotSubmajorized(&'static str),

    #[error("pointwise dominance precondition failed: {0}")]
    NotDominated(&'static str),

    #[error("forms are not aligned: {0}")]
    NotAligned(&'static str),

    #[error("spectrum must be real: {0}")]
    NotRealSpectrum(&'static str),

    #[error("oracle scale guard: {0}")]
    OracleScale(&'static str),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::InvalidBreakpoints(_)
            | Error::ValuesNotSorted { .. }
            | Error::NonpositiveWeight { .. }
            | Error::WeightSum { .. }
            | Error::NonFinite(_)
            | Error::NotHermitian { .. }
            | Error::NotSquare { .. }
            | Error::DimensionMismatch { .. }
            | Error::EmptySpectrum => ErrorKind::Validation,
            Error::OutOfRange(_)
            | Error::NegativeValue(_)
            | Error::NotMajorized(_)
            | Error::NotSubmajorized(_)
            | Error::NotDominated(_)
            | Error::NotAligned(_)
            | Error::NotRealSpectrum(_)
            | Error::OracleScale(_) => ErrorKind::Domain,
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
