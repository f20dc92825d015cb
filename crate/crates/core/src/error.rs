use crate::ids::{FogId, UserId};
use crate::params::Megabits;

/// Errors surfaced by the core state machine.
///
/// `ContractViolation` marks a broken internal precondition (e.g. serving on a
/// fully occupied fog); it indicates a routing bug, not bad input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoreError {
    #[error("invalid capacity: thresh {thresh} Mb/s is not a positive integer multiple of req_size {req_size} Mb")]
    InvalidCapacity { thresh: Megabits, req_size: Megabits },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("unknown user {0}")]
    UnknownUser(UserId),

    #[error("unknown fog {0}")]
    UnknownFog(FogId),

    #[error("request for {uid} must carry at least one request")]
    ZeroNeed { uid: UserId },

    #[error("no sleeping fog available to isolate {0}")]
    IsolationUnavailable(UserId),

    #[error("internal contract violation: {0}")]
    ContractViolation(String),
}
