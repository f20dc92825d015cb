use std::fmt;

use crate::ids::FogId;
use crate::params::Requests;

/// Who dispatched a request: the user itself, or a fog forwarding the part of
/// a batch it could not serve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    User,
    Fog(FogId),
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::User => write!(f, "user"),
            Origin::Fog(fid) => write!(f, "{fid}"),
        }
    }
}

/// Result of serving a batch on one fog.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ServeOutcome {
    /// Fully served with capacity to spare.
    Completed,
    /// Fully served and the fog is now exactly full.
    Saturated,
    /// The fog filled up mid-batch; the remainder was forwarded onward.
    Overflow(Requests),
}

/// A serving destination in a forwarding chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ServerRole {
    Fog(FogId),
    Cloud,
}

/// End-to-end result of routing one request batch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RoutingOutcome {
    /// One fog served the whole batch.
    ServedByFog(FogId),
    /// No active fog had room; the cloud took the whole batch.
    ForwardedToCloud,
    /// The batch pushed the sender over its quota; it was refused in full and
    /// the sender is now quarantined on the given attack fog.
    AttackerIsolated(FogId),
    /// The batch was split across several servers; segments are in serving
    /// order and total the original need.
    SplitServed(Vec<(ServerRole, Requests)>),
    /// The sender was already blacklisted; its attack fog host absorbed the
    /// batch without serving it.
    AbsorbedByAttackFog(FogId),
    /// Quota breach detected but no sleeping fog was available; the batch was
    /// discarded and the run continues.
    Dropped,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_segments_total_original_need() {
        let outcome = RoutingOutcome::SplitServed(vec![
            (ServerRole::Fog(FogId(1)), 50),
            (ServerRole::Cloud, 30),
        ]);
        if let RoutingOutcome::SplitServed(segments) = outcome {
            let total: Requests = segments.iter().map(|(_, n)| n).sum();
            assert_eq!(total, 80);
        }
    }
}
