use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("dimension {n} is too small, need at least 2 individuals")]
    TooSmall { n: usize },
    #[error("non-finite value {value} at position {index}")]
    NonFinite { index: usize, value: f64 },
    #[error("negative entry {value} at ({row}, {col})")]
    NegativeEntry { row: usize, col: usize, value: f64 },
    #[error("diagonal entry ({index}, {index}) is {value}, expected 0")]
    Diagonal { index: usize, value: f64 },
    #[error("row {row} sums to {sum}, expected 1")]
    RowSum { row: usize, sum: f64 },
    #[error("interaction graph is not strongly connected ({components} components)")]
    Reducible { components: usize },
    #[error("entry {index} = {value} lies outside [0, 1]")]
    Range { index: usize, value: f64 },
    #[error("entries sum to {sum}, expected 1")]
    Sum { sum: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(
        "power iteration did not converge after {iterations} iterations (residual {residual:e})"
    )]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("sum of self-confidence drifted to {sum} at issue {issue}")]
    SumDrift { issue: usize, sum: f64 },
    #[error("negative discriminant {discriminant} for a = {a}, n = {n}")]
    Discriminant { a: f64, n: usize, discriminant: f64 },
    #[error("simplex grid has {points} points, cap is {cap}")]
    GridTooLarge { points: u128, cap: u128 },
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("Sinkhorn balancing did not converge after {sweeps} sweeps (worst column error {worst_column_error:e})")]
    SinkhornNoConvergence {
        sweeps: usize,
        worst_column_error: f64,
    },
    #[error("{path}: line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by malformed or invalid input data.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::NotSquare { .. }
                | Error::TooSmall { .. }
                | Error::NonFinite { .. }
                | Error::NegativeEntry { .. }
                | Error::Diagonal { .. }
                | Error::RowSum { .. }
                | Error::Reducible { .. }
                | Error::Range { .. }
                | Error::Sum { .. }
                | Error::DimensionMismatch { .. }
                | Error::InvalidArgument(_)
                | Error::Discriminant { .. }
                | Error::UnknownPreset(_)
                | Error::Parse { .. }
                | Error::Json(_)
        )
    }

    pub fn is_non_convergence(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. } | Error::SinkhornNoConvergence { .. }
        )
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
