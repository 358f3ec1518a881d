use thiserror::Error;

/// Errors produced by the kit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid spin: j2 must be >= 1, got {j2}")]
    InvalidSpin { j2: u32 },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("Chebyshev argument outside [-1, 1]: {x}")]
    ChebDomain { x: f64 },
    #[error("{what} failed, residual {residual:.3e}")]
    Numeric { what: &'static str, residual: f64 },
    #[error("state is not normalized: norm = {norm}")]
    NotNormalized { norm: f64 },
    #[error("undefined estimate: {0}")]
    UndefinedEstimate(String),
    #[error("fit error: {0}")]
    Fit(String),
    #[error("r and s must be coprime positive integers, got ({r}, {s})")]
    NotCoprime { r: u64, s: u64 },
    #[error("rotation decomposition requires integer spin (even j2), got j2 = {j2}")]
    HalfIntegerSpin { j2: u32 },
    #[error("sweep grid has {points} points, exceeding the cap of {cap}")]
    GridCapExceeded { points: u64, cap: u64 },
    #[error("invalid axis spec: {0}")]
    InvalidAxis(String),
    #[error("nothing to export: table is empty")]
    EmptyTable,
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
