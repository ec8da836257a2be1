use thiserror::Error;

use crate::graph::NodeId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("node {node} out of range for a graph of {nodes} nodes")]
    NodeOutOfRange { node: NodeId, nodes: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("non-ergodic configuration: {0}")]
    NonErgodic(String),

    #[error("pair chain needs {states} states, above the cap of {cap}")]
    StateSpaceTooLarge { states: usize, cap: usize },

    #[error(
        "power iteration stopped after {iterations} iterations with residual {residual:e} (tolerance {tolerance:e})"
    )]
    NotConverged {
        iterations: usize,
        residual: f64,
        tolerance: f64,
    },

    #[error("linear solve for the stationary vector failed: {0}")]
    SingularSystem(String),

    #[error("sequence unreachable: zero transition probability")]
    Unreachable,

    #[error("unobserved: {0}")]
    Unobserved(String),

    #[error("proportional-to-probability weights need every equivalent sequence inside the seed sample")]
    PpwInfeasible,

    #[error("no collisions between the two walks")]
    NoCollisions,

    #[error("no informative window")]
    NoObservations,

    #[error("zero denominator in ratio estimate")]
    ZeroDenominator,

    #[error("need at least {needed} values, got {got}")]
    TooFewValues { needed: usize, got: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
