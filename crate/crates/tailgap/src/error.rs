use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by distribution constructors, analytical operations,
/// estimators, and experiment drivers.
#[derive(Debug, Error)]
pub enum Error {
    /// A scalar parameter failed validation at construction time.
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// An input lies outside the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A sample set is too small for the requested estimator.
    #[error("insufficient samples: need at least {needed}, got {got}")]
    InsufficientSamples { needed: usize, got: usize },

    /// A sample set is formally large enough but carries no usable
    /// information (for example, all order statistics above the Hill
    /// baseline are tied).
    #[error("degenerate input: {0}")]
    Degenerate(String),

    /// An experiment or CLI configuration is structurally invalid.
    #[error("invalid config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
