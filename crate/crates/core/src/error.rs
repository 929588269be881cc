use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("non-finite initial value {value} at x = {x}, v = {v}")]
    NonFiniteSample { x: f64, v: f64, value: f64 },

    #[error("point (x = {x}, v = {v}) lies outside the velocity domain [{v_min}, {v_max}]")]
    OutOfDomain {
        x: f64,
        v: f64,
        v_min: f64,
        v_max: f64,
    },

    #[error(
        "incompatible density: integral of (rho - 1) is {integral:e}, tolerance {tolerance:e}"
    )]
    IncompatibleDensity { integral: f64, tolerance: f64 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("non-finite distribution value detected after step {step} (t = {t})")]
    BlowUp { step: usize, t: f64 },

    #[error("configuration error at line {line}, key `{key}`: {message}")]
    Config {
        line: usize,
        key: String,
        message: String,
    },

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
