use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("a scale needs at least 2 levels, got {0}")]
    TooFewLevels(u32),
    #[error("scale with {0} levels does not fit the grade representation")]
    TooManyLevels(u32),
    #[error("the product t-norm is not closed on a finite chain; construct the scale with rounding enabled")]
    ProductNotClosed,
    #[error("operands live on different scales ({left} vs {right})")]
    ScaleMismatch { left: String, right: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("budget of {budget} {what} exceeded")]
    BudgetExceeded { what: &'static str, budget: u64 },
    #[error("value {value} is not a grade of a {levels}-level scale")]
    NotOnScale { value: String, levels: u32 },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("column {0} is constant (min = max)")]
    ConstantColumn(usize),
    #[error("value {value} in row {row}, column {col} lies outside [{min}, {max}]")]
    OutOfRange {
        row: usize,
        col: usize,
        value: f64,
        min: f64,
        max: f64,
    },
    #[error("invalid grade distribution: {0}")]
    InvalidDistribution(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
