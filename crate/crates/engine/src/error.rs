use fogsim_core::CoreError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EngineError {
    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("tick out of order: expected second {expected}, got {got}")]
    OutOfOrderTick { expected: u64, got: u64 },

    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("invalid workload: {0}")]
    InvalidWorkload(String),
}
