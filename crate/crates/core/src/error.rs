use thiserror::Error;

/// Errors raised by the group, order, and search layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different groups: {0} vs {1}")]
    GroupMismatch(String, String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("handle reduction exceeded the step cap ({0} steps)")]
    StepCap(usize),

    #[error("ball of radius {radius} exceeds the element cap ({cap})")]
    BallCap { radius: usize, cap: usize },

    #[error("the identity element has no sign")]
    IdentitySign,

    #[error("outside the realized domain: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("non-Archimedean behaviour detected: {0}")]
    NonArchimedean(String),
}

impl Error {
    /// True for errors that signal an exhausted resource bound rather than a
    /// mathematical or usage failure.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::StepCap(_) | Error::BallCap { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
