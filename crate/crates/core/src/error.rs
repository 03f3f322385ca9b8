use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by alignment, data generation and ingestion.
#[derive(Debug, Error)]
pub enum Error {
    #[error("time series is empty")]
    EmptySeries,

    #[error("non-finite sample {value} at position {index}")]
    NonFinite { index: usize, value: f64 },

    #[error("resolution must lie in (0, 1], got {0}")]
    InvalidResolution(f64),

    #[error("band of width {width} does not connect (1,1) to ({n},{m}); minimal connecting width is {min_width}")]
    BandDisconnected {
        width: usize,
        min_width: usize,
        n: usize,
        m: usize,
    },

    #[error("sparse matrix leaves ({n},{m}) unreachable from (1,1)")]
    SparseDisconnected { n: usize, m: usize },

    #[error("backtrack stalled at cell ({i},{j}): no open lower neighbour")]
    BrokenPath { i: usize, j: usize },

    #[error("divide-and-conquer recursion exceeded depth {0}")]
    RecursionLimit(usize),

    #[error("dense matrix of {cells} cells exceeds the budget of {limit} cells")]
    DenseBudgetExceeded { cells: usize, limit: usize },

    #[error("correlation must lie in [-1, 1], got {0}")]
    InvalidCorrelation(f64),

    #[error("correlation is undefined for zero-variance input")]
    UndefinedCorrelation,

    #[error("series lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{}:{line}:{column}: cannot parse {token:?} as a number", path.display())]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        token: String,
    },

    #[error("cannot access {}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
