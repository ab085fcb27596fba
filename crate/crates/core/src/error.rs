use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown condition attribute `{0}`")]
    UnknownAttribute(String),

    #[error("attribute set must not be empty")]
    EmptyAttributeSet,

    #[error(
        "decision attribute `{attribute}` takes the single value `{value}`; at least two decision classes are required"
    )]
    DegenerateDecision { attribute: String, value: String },

    #[error("invalid decision system: {0}")]
    InvalidSystem(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("objects {foreign:?} are outside the universe of the partition")]
    UniverseMismatch { foreign: Vec<usize> },

    #[error("partitions are defined over different object sets")]
    PartitionMismatch,

    #[error("class index {index} out of range for {classes} decision classes")]
    ClassIndexOutOfRange { index: usize, classes: usize },

    #[error("shape mismatch: expected {expected} granules, classifier covers {found}")]
    ShapeMismatch { expected: usize, found: usize },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("value {0} is outside the closed interval [0, 1]")]
    OutOfUnitInterval(String),

    #[error("instance too large for exhaustive search: {classes}^{granules} classifiers exceeds the limit of {limit}")]
    InstanceTooLarge {
        classes: usize,
        granules: usize,
        limit: u64,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: row {row}, column {column}: {message}")]
    Csv {
        path: PathBuf,
        row: usize,
        column: String,
        message: String,
    },

    #[error("{path}: {message}")]
    Input { path: PathBuf, message: String },

    #[error("{path}: line {line}: {message}")]
    ClassifierFile {
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
}
