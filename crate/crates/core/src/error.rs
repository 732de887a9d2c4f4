use alloc::string::String;

/// Errors produced by the analysis core.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("malformed network: {0}")]
    MalformedNetwork(String),

    #[error("dimension mismatch: expected {expected} nodes, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("control mask {mask:#x} is not supported on the control set {control:#x}")]
    MaskOutsideControlSet { mask: u32, control: u32 },

    #[error("operation not applicable: {0}")]
    NotApplicable(String),

    #[error("network has {n} nodes, above the cap of {cap} for this operation")]
    CapExceeded { n: usize, cap: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("retry budget of {0} attempts exhausted")]
    RetryBudgetExhausted(u64),

    #[error("no constructive schedule exists for {0}")]
    NoSchedule(String),

    #[error("inconsistent multiplicities: {0}")]
    InconsistentMultiplicities(String),
}

pub type Result<T> = core::result::Result<T, Error>;
