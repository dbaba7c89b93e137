use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid problem parameters: {0}")]
    ParameterDomain(String),

    #[error("sector index {index} outside 1..={sectors}")]
    SectorOutOfRange { index: usize, sectors: usize },

    #[error("genotype has {found} cells but the problem needs {expected}")]
    CellCount { expected: usize, found: usize },

    #[error("genotype is for problem (M={found_m}, r={found_r}), expected (M={m}, r={r})")]
    ProblemMismatch {
        m: usize,
        r: usize,
        found_m: usize,
        found_r: usize,
    },

    #[error("bit vector has length {found}, expected {expected}")]
    BitLength { expected: usize, found: usize },

    #[error("point ({x}, {y}) lies outside the unit circle")]
    OutsideCircle { x: f64, y: f64 },

    #[error("invalid assignment: {0}")]
    Assignment(String),

    #[error(
        "instance too large for exhaustive search: {reason} (estimated {estimate:.3e} assignments)"
    )]
    InstanceTooLarge { reason: String, estimate: f64 },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("degenerate fit input: {0}")]
    DegenerateFit(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of the filesystem rather than of the inputs.
    pub fn is_io(&self) -> bool {
        match self {
            Error::Io { .. } => true,
            Error::Csv { source, .. } => source.is_io_error(),
            _ => false,
        }
    }
}
