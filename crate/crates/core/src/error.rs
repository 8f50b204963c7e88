use thiserror::Error;

/// Errors raised by matrix construction and the geometric routines.
///
/// Indices carried by variants are 0-based; `Display` renders them 1-based
/// so diagnostics match the external convention.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NonSquare { row: usize, len: usize, expected: usize },

    #[error("size {n} is too small, need at least {min}")]
    TooSmall { n: usize, min: usize },

    #[error("entry ({}, {}) is not finite", .i + 1, .j + 1)]
    NonFiniteEntry { i: usize, j: usize },

    #[error("not skew-symmetric at ({}, {}): a_ij + a_ji = {sum}", .i + 1, .j + 1)]
    NotSkewSymmetric { i: usize, j: usize, sum: f64 },

    #[error("not reciprocal at ({}, {}): m_ij * m_ji = {product}", .i + 1, .j + 1)]
    NotReciprocal { i: usize, j: usize, product: f64 },

    #[error("entry ({}, {}) = {value} is not strictly positive", .i + 1, .j + 1)]
    NonPositiveEntry { i: usize, j: usize, value: f64 },

    #[error("exp overflows at entry ({}, {})", .i + 1, .j + 1)]
    Overflow { i: usize, j: usize },

    #[error("index {} out of range for n = {n}", .index + 1)]
    IndexOutOfRange { index: usize, n: usize },

    #[error("triad ({}, {}, {}) is not strictly increasing", .i + 1, .j + 1, .k + 1)]
    NonIncreasingTriad { i: usize, j: usize, k: usize },

    #[error("pair ({}, {}) repeats an index", .i + 1, .j + 1)]
    RepeatedIndex { i: usize, j: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("zero 2-vector has no Grassmannian representative")]
    ZeroTwoVector,

    #[error("orthogonal embedding coefficient b_{} is zero", .index + 1)]
    ZeroCoefficient { index: usize },

    #[error("regularization lambda must be positive, got {0:e}")]
    NonPositiveLambda(f64),

    #[error("step size must be positive, got {0:e}")]
    NonPositiveStep(f64),

    #[error("tolerance must be positive, got {0:e}")]
    InvalidTolerance(f64),

    #[error("size n = {n} not supported (allowed {allowed})")]
    UnsupportedSize { n: usize, allowed: &'static str },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
