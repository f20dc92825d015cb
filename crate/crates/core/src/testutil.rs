//! Shared builders for unit tests.

use crate::fog::FogMode;
use crate::ids::{FogId, UserId};
use crate::params::{FogSpec, SimParams, UserSpec};
use crate::state::SystemState;

/// The reference setup: F1/F3 active, F2 sleeping, six users at 100 req/s,
/// 5000 Mb/s fogs with 10 Mb requests (capacity 500).
pub(crate) fn three_fog_params() -> SimParams {
    SimParams {
        thresh: 5000,
        req_size: 10,
        users: (1..=6)
            .map(|n| UserSpec {
                uid: UserId(n),
                max_rps: 100,
            })
            .collect(),
        fogs: vec![
            FogSpec {
                fid: FogId(1),
                mode: FogMode::Active,
            },
            FogSpec {
                fid: FogId(2),
                mode: FogMode::Sleep,
            },
            FogSpec {
                fid: FogId(3),
                mode: FogMode::Active,
            },
        ],
    }
}

pub(crate) fn three_fog_state() -> SystemState {
    SystemState::new(three_fog_params()).unwrap()
}

/// Capacity safety and flag consistency for every fog.
pub(crate) fn assert_fog_invariants(state: &SystemState) {
    for fog in state.fogs.values() {
        assert_eq!(
            fog.flag.sum,
            fog.served_total(),
            "{}: flag.sum out of step with per-user counts",
            fog.fid
        );
        assert!(fog.flag.sum <= state.f_cap, "{}: over capacity", fog.fid);
        assert_eq!(
            !fog.flag.free,
            fog.flag.sum == state.f_cap,
            "{}: free bit inconsistent with sum",
            fog.fid
        );
    }
}
