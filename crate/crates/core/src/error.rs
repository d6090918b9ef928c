use std::io;

use thiserror::Error;

use crate::graph::TimeInterval;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("input contains no edges")]
    EmptyInput,
    #[error("graph has no edges")]
    EmptyGraph,
    #[error("invalid interval [{ts},{te}]")]
    InvalidInterval { ts: i64, te: i64 },
    #[error("bucket width must be positive, got {0}")]
    InvalidBucketWidth(i64),
    #[error("unknown granularity `{0}` (expected `rank` or `bucket:<width>`)")]
    InvalidGranularity(String),
    #[error("self-loop on vertex {0}")]
    SelfLoop(u32),
    #[error("vertex {vertex} out of range for {count} vertices")]
    VertexOutOfRange { vertex: u32, count: usize },
    #[error("synthetic graph: {0}")]
    InvalidSynthetic(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TelError {
    #[error("k must be at least 1")]
    InvalidK,
    #[error("cannot induce {requested} from a TEL holding {current}")]
    NotEnclosed {
        requested: TimeInterval,
        current: TimeInterval,
    },
    #[error("cannot induce a {requested}-core from a {current}-core")]
    CoreTooTight { requested: usize, current: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeasureError {
    #[error("measure `{0}` is undefined on an empty core")]
    EmptyCore(&'static str),
    #[error("measure `{measure}` needs {what} in its evaluation context")]
    MissingContext {
        measure: &'static str,
        what: &'static str,
    },
    #[error("measure `{0}` is already registered")]
    Duplicate(String),
    #[error("unknown measure `{0}`")]
    Unknown(String),
    #[error("measure `{measure}`: {message}")]
    Undefined {
        measure: String,
        message: String,
    },
    #[error("cannot parse measure value `{0}`")]
    BadValue(String),
}

#[derive(Debug, Error)]
pub enum QueryError {
    #[error("k must be at least 1")]
    InvalidK,
    #[error("mode `{0}` requires a measure")]
    MissingMeasure(&'static str),
    #[error("constrain mode requires a threshold")]
    MissingThreshold,
    #[error("measure `{measure}` is not {expected}")]
    WrongSensitivity {
        measure: String,
        expected: &'static str,
    },
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Tel(#[from] TelError),
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}
