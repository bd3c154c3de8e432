//! Crate-wide error type.

use std::path::PathBuf;

/// Errors produced by corpus loading, featurization, fitting, and evaluation.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cannot read `{path}`: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    /// A record in an input file could not be parsed. `line` is 1-based.
    #[error("{path}: line {line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("unknown input format `{0}`")]
    UnknownFormat(String),

    #[error("no valid reviews")]
    EmptyCorpus,

    #[error("n-gram order {0} is not supported (orders must be 1 or 2)")]
    NgramOrder(usize),

    /// A caller-supplied value is out of its documented range.
    #[error("{0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// The iterative solver stopped before meeting its gradient tolerance.
    #[error(
        "solver did not converge: gradient norm {achieved:.3e} exceeds tolerance {required:.3e}"
    )]
    NonConvergence { achieved: f64, required: f64 },

    #[error("model file error: {0}")]
    ModelFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
