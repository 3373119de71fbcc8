use thiserror::Error;

/// Errors produced across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("need at least {needed} samples, got {got}")]
    TooFewSamples { needed: usize, got: usize },
    #[error("xs and ys differ in length: {xs} vs {ys}")]
    LengthMismatch { xs: usize, ys: usize },
    #[error("xs must be strictly increasing (violated at index {index})")]
    NotIncreasing { index: usize },
    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },
    #[error("grid is not equidistant (gap deviation {deviation:.3e} > tolerance {tolerance:.1e}); the data-walk slope is only an approximation here, use compare_irregular")]
    NotEquidistant { deviation: f64, tolerance: f64 },
    #[error("grid must span [0, 1] for this formula (got [{first}, {last}])")]
    NotUnitSpan { first: f64, last: f64 },
    #[error("degenerate denominator in least-squares slope")]
    DegenerateDenominator,
    #[error("reference area overflows for n = {0}")]
    Overflow(usize),
    #[error("degrees of freedom {dof} must satisfy 1 <= dof < {len}")]
    InsufficientDof { dof: usize, len: usize },
    #[error("sigma must be positive, got {0}")]
    NonPositiveSigma(f64),
    #[error("invalid noise spec: {0}")]
    InvalidNoise(String),
    #[error("invalid grid spec: {0}")]
    InvalidGrid(String),
    #[error("line {line}: {message}")]
    Parse { line: u64, message: String },
    #[error("duplicate x value {x} (lines {first} and {second})")]
    DuplicateX { x: f64, first: u64, second: u64 },
    #[error("invalid spec string at position {position}: {message}")]
    SpecString { position: usize, message: String },
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
