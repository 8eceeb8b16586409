use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not symmetric positive semi-definite: {0}")]
    NotSpd(String),

    #[error("drift matrix is not Hurwitz (max real part of spectrum = {max_real_part})")]
    NotHurwitz { max_real_part: f64 },

    #[error("linear system is numerically singular")]
    Singular,

    #[error("adaptive quadrature exceeded {panels} panels without meeting tolerance {tol:e}")]
    QuadratureFailure { panels: usize, tol: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("not overdamped: gamma = {gamma} must exceed 2*omega = {}", 2.0 * omega)]
    NotOverdamped { gamma: f64, omega: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("unstable time step: dt * |stiffest eigenvalue| = {ratio} >= 0.5")]
    UnstableStep { ratio: f64 },

    #[error("non-finite state encountered at step {step}")]
    NonFinite { step: usize },

    #[error("sample length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("too few samples: need at least 2, got {0}")]
    TooFewSamples(usize),

    #[error("time grid is empty")]
    EmptyGrid,

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("configuration error: {0}")]
    Config(String),
}
