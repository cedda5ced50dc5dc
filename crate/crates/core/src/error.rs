//! Error type shared across the crate.

/// Errors reported by landscape construction, enumeration and statistics.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// The requested pairwise correlation cannot be realized for `m` objectives.
    #[error("rho {rho} out of range for m = {m}: admissible interval is [{min}, {max}]")]
    RhoOutOfRange {
        m: usize,
        rho: f64,
        min: f64,
        max: f64,
    },

    /// Fewer than two objectives.
    #[error("objective count m = {m} is invalid; at least 2 objectives are required")]
    InvalidM { m: usize },

    /// Epistasis degree exceeds the number of other bits.
    #[error("epistasis degree k = {k} is invalid for n = {n}; k must be at most n - 1")]
    InvalidK { k: usize, n: usize },

    /// The copula-adjusted correlation matrix has a genuinely negative eigenvalue.
    #[error("adjusted correlation matrix is not positive semidefinite (eigenvalue {eigenvalue:e})")]
    NotPositiveSemidefinite { eigenvalue: f64 },

    /// A solution or objective vector has the wrong length.
    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    /// Exhaustive enumeration was requested beyond the configured limit.
    #[error("search space of 2^{n} points exceeds the enumeration limit of 2^{limit}")]
    SpaceTooLarge { n: usize, limit: usize },

    /// Malformed instance file.
    #[error("instance format error at line {line}: {message}")]
    Format { line: usize, message: String },

    /// Unsupported instance file header.
    #[error("unsupported instance header {found:?}; expected \"rmnk-format 1\"")]
    Version { found: String },

    /// Regression input contains non-positive values where a logarithm is taken.
    #[error("regression input must be strictly positive to fit in log space")]
    NonPositiveData,

    /// Correlation of a constant sequence is undefined.
    #[error("zero variance: correlation is undefined")]
    ZeroVariance,

    /// Too few data points for the requested statistic.
    #[error("insufficient data: need at least {needed} points, got {got}")]
    InsufficientData { needed: usize, got: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
