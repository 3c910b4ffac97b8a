use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("file not found: {}", .0.display())]
    FileNotFound(PathBuf),

    #[error("line {line}: expected {expected} cells, found {found}")]
    RaggedRows {
        line: u64,
        expected: usize,
        found: usize,
    },

    #[error("line {line}, column {column}: cannot parse {value:?} as a finite number")]
    NonNumericCell {
        line: u64,
        column: usize,
        value: String,
    },

    #[error("line {line}, column {column}: missing value")]
    MissingValue { line: u64, column: usize },

    #[error("delimiter {0:?} must be a single ASCII character")]
    InvalidDelimiter(char),

    #[error("label column {column} is out of range for rows with {width} cells")]
    LabelColumnOutOfRange { column: usize, width: usize },

    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,

    #[error("matrix value at ({row}, {col}) is not finite")]
    NonFiniteValue { row: usize, col: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("cluster index {index} out of range for k = {k}")]
    IndexOutOfRange { index: usize, k: usize },

    #[error("cannot form a midrange of an empty partition")]
    EmptyPartition,

    #[error("k = {k} exceeds the number of records n = {n}")]
    KExceedsN { k: usize, n: usize },

    #[error("invalid cluster count k = {0}")]
    InvalidK(usize),

    #[error("instance too large for exhaustive search: n = {n}, k = {k}")]
    InstanceTooLarge { n: usize, k: usize },

    #[error("unknown dataset {0:?}")]
    UnknownDataset(String),

    #[error("dataset {name}: expected {expected_rows}x{expected_cols}, loaded {rows}x{cols}")]
    ShapeMismatch {
        name: String,
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },

    #[error("unknown {kind} {value:?}")]
    UnknownName { kind: &'static str, value: String },

    #[error("invalid experiment: {0}")]
    InvalidExperiment(String),

    #[error("unknown report format {0:?}")]
    UnknownFormat(String),

    #[error("report has no cells")]
    EmptyReport,

    #[error("{dataset} k={k}: cells scored in different spaces cannot be ranked together")]
    IncomparableCells { dataset: String, k: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
