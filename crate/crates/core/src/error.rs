use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension {k} exceeds the supported maximum of {max}")]
    DimensionTooLarge { k: usize, max: usize },

    #[error("length {n} exceeds the supported maximum of {max}")]
    LengthTooLarge { n: usize, max: usize },

    #[error("matrix has rank {rank} but {rows} rows; a full-rank generator matrix is required")]
    RankDeficient { rank: usize, rows: usize },

    #[error("the zero code has no minimum distance")]
    ZeroCode,

    #[error("column of length {got} does not match matrix dimension {expected}")]
    ColumnLength { expected: usize, got: usize },

    #[error("matrix parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("vector is not a codeword of the code")]
    NotACodeword,

    #[error("invalid weight enumerator: {0}")]
    InvalidEnumerator(String),

    #[error("target set size must be at least 1")]
    EmptyTarget,

    #[error("even-code reduction is inapplicable: d = {0} is odd")]
    ReductionInapplicable(usize),

    #[error("no L({k},{dperp}) entry is known")]
    MissingL { k: usize, dperp: usize },

    #[error("no residual database for [{n},{k}] with dual distance >= {dperp}")]
    MissingResidualDb { n: usize, k: usize, dperp: usize },

    #[error("cell (n={n}, k={k}) is starred; optimal-code counts cannot be derived from it")]
    StarredCell { n: usize, k: usize },

    #[error("database cell (n={n}, k={k}) is missing or incomplete")]
    IncompleteCell { n: usize, k: usize },

    #[error("malformed database file {path}: {msg}")]
    MalformedDb { path: PathBuf, msg: String },

    #[error("unsupported database version {found} in {path}")]
    DbVersion { path: PathBuf, found: String },

    #[error("database verification failed for {path}: {msg}")]
    DbVerification { path: PathBuf, msg: String },

    #[error("bounds file line {line}: {msg}")]
    Bounds { line: usize, msg: String },

    #[error("inconsistent data: {0}")]
    Inconsistent(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
