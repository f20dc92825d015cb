use crate::fog::FogMode;
use crate::ids::FogId;
use crate::state::SystemState;

/// Policy choosing which fog takes a request. Routing threads the policy
/// through every dispatch so the driving layer decides it.
pub trait FogSelector {
    /// Pick a fog with mode 1 and free 1, never the excluded one; `None` when
    /// no such fog exists.
    fn select(&self, state: &SystemState, exclude: Option<FogId>) -> Option<FogId>;
}

/// The canonical deterministic policy: lowest fog id first. Determinism here
/// is what makes whole-run serving traces reproducible.
#[derive(Debug, Clone, Copy, Default)]
pub struct LowestFidFirst;

impl FogSelector for LowestFidFirst {
    fn select(&self, state: &SystemState, exclude: Option<FogId>) -> Option<FogId> {
        state
            .fogs
            .values()
            .filter(|fog| fog.flag.mode == FogMode::Active && fog.flag.free)
            .map(|fog| fog.fid)
            .find(|fid| Some(*fid) != exclude)
    }
}
