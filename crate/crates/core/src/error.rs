use crate::alpha::AlphaContext;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("sample is empty")]
    EmptySample,

    #[error("margin dimension must be at least 1")]
    ZeroDimension,

    #[error("margin dimension mismatch: x has {x_cols} columns, y has {y_cols}")]
    DimensionMismatch { x_cols: usize, y_cols: usize },

    #[error("row count mismatch: x has {x_rows} rows, y has {y_rows}")]
    RowCountMismatch { x_rows: usize, y_rows: usize },

    #[error("buffer of length {len} is not a whole number of rows of width {p}")]
    RaggedBuffer { len: usize, p: usize },

    #[error("non-finite value at row {row}, column {column}")]
    NonFinite { row: usize, column: usize },

    #[error("alpha must lie in {window}, got {alpha}")]
    AlphaOutOfRange { alpha: f64, context: AlphaContext, window: &'static str },

    #[error("{what} needs at least {needed} rows, got {got}")]
    TooFewRows { what: &'static str, needed: usize, got: usize },

    #[error("tuple budget must be at least 1")]
    ZeroBudget,

    #[error("row index {index} out of range for {n} rows")]
    RowOutOfRange { index: usize, n: usize },

    #[error("{what} requires one-dimensional margins, got p = {p}")]
    NotOneDimensional { what: &'static str, p: usize },

    #[error("the sorted fast path requires alpha = 1, got {alpha}")]
    FastPathAlpha { alpha: f64 },

    #[error("siCor denominator is {value} on non-constant data; the sample is too small or degenerate")]
    DegenerateDenominator { value: f64 },

    #[error("zero variance in the {margin} margin")]
    ZeroVariance { margin: &'static str },

    #[error("correlation parameter must lie in [-1, 1], got {rho}")]
    RhoOutOfRange { rho: f64 },

    #[error("invalid law: {reason}")]
    InvalidLaw { reason: &'static str },

    #[error("invalid quadrature settings: {reason}")]
    InvalidQuadrature { reason: &'static str },

    #[error("quadrature did not reach tolerance: error estimate {error:e} after {intervals} subintervals")]
    QuadratureNotConverged { error: f64, intervals: usize },

    #[error("at least 19 permutations are needed to resolve level 0.05, got {got}")]
    TooFewPermutations { got: usize },

    #[error("level must lie in (0, 1), got {level}")]
    InvalidLevel { level: f64 },

    #[error("at least {needed} replicates are needed, got {got}")]
    TooFewReplicates { needed: usize, got: usize },
}
