use thiserror::Error;

pub type Result<T> = std::result::Result<T, ExperimentError>;

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Core(#[from] lrw_core::Error),

    #[error("{cell}: failure rate {rate} exceeds the threshold {threshold}")]
    FailureThreshold { cell: String, rate: f64, threshold: f64 },

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl ExperimentError {
    /// 2 for configuration problems, 3 for a non-ergodic walk, 4 when
    /// failed replicates exceed the threshold, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        use lrw_core::Error as E;
        match self {
            ExperimentError::Config(_) => 2,
            ExperimentError::Core(E::NonErgodic(_)) => 3,
            ExperimentError::Core(
                E::InvalidConfig(_)
                | E::InvalidGraph(_)
                | E::NodeOutOfRange { .. }
                | E::Parse { .. }
                | E::StateSpaceTooLarge { .. },
            ) => 2,
            ExperimentError::FailureThreshold { .. } => 4,
            _ => 1,
        }
    }

    pub(crate) fn io(path: &std::path::Path, e: std::io::Error) -> Self {
        ExperimentError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        }
    }
}
