//! Property tests for the state machine's global invariants, driven by
//! generated multi-second dispatch plans.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;

use fogsim_core::{
    global_assign, local_assign, send_request, EventKind, FogId, FogMode, FogSpec, LowestFidFirst,
    Origin, RoutingOutcome, SimParams, SystemState, UserId, UserSpec,
};

#[derive(Debug, Clone)]
struct Plan {
    req_size: u64,
    f_cap: u64,
    max_rps: Vec<u64>,
    attack_fog_first: bool,
    /// Per second: (user index, need).
    seconds: Vec<Vec<(usize, u64)>>,
}

impl Plan {
    fn params(&self) -> SimParams {
        let modes = if self.attack_fog_first {
            [FogMode::Sleep, FogMode::Active, FogMode::Active]
        } else {
            [FogMode::Active, FogMode::Sleep, FogMode::Active]
        };
        SimParams {
            thresh: self.f_cap * self.req_size,
            req_size: self.req_size,
            users: self
                .max_rps
                .iter()
                .enumerate()
                .map(|(i, max)| UserSpec {
                    uid: UserId(i as u32 + 1),
                    max_rps: *max,
                })
                .collect(),
            fogs: modes
                .iter()
                .enumerate()
                .map(|(i, mode)| FogSpec {
                    fid: FogId(i as u32 + 1),
                    mode: *mode,
                })
                .collect(),
        }
    }
}

fn plan_strategy() -> impl Strategy<Value = Plan> {
    (
        1u64..=8,
        3u64..=30,
        prop::collection::vec(1u64..=40, 1..=5),
        any::<bool>(),
    )
        .prop_flat_map(|(req_size, f_cap, max_rps, attack_fog_first)| {
            let n_users = max_rps.len();
            let seconds = prop::collection::vec(
                prop::collection::vec((0..n_users, 1u64..=60), 0..=8),
                1..=4,
            );
            (
                Just(req_size),
                Just(f_cap),
                Just(max_rps),
                Just(attack_fog_first),
                seconds,
            )
        })
        .prop_map(
            |(req_size, f_cap, max_rps, attack_fog_first, seconds)| Plan {
                req_size,
                f_cap,
                max_rps,
                attack_fog_first,
                seconds,
            },
        )
}

fn assert_fog_invariants(state: &SystemState) {
    for fog in state.fogs.values() {
        assert_eq!(fog.flag.sum, fog.served_total());
        assert!(fog.flag.sum <= state.f_cap);
        assert_eq!(!fog.flag.free, fog.flag.sum == state.f_cap);
    }
}

proptest! {
    #[test]
    fn dispatch_plans_preserve_every_invariant(plan in plan_strategy()) {
        let mut state = SystemState::new(plan.params()).unwrap();
        let selector = LowestFidFirst;
        let mut previous_blacklist: BTreeSet<UserId> = BTreeSet::new();

        for (second, demands) in plan.seconds.iter().enumerate() {
            state.second = second as u64;
            global_assign(&mut state);
            let blacklist = state.blacklist.clone();
            for fog in state.fogs.values_mut() {
                local_assign(fog, &blacklist);
            }

            let mut offered = 0u64;
            let mut rejected = 0u64;
            let mut handled: BTreeMap<UserId, u64> = BTreeMap::new();
            for (user_index, need) in demands {
                let uid = UserId(*user_index as u32 + 1);
                offered += need;
                let outcome = send_request(&mut state, &selector, Origin::User, uid, *need).unwrap();
                match outcome {
                    RoutingOutcome::ServedByFog(_)
                    | RoutingOutcome::SplitServed(_) => *handled.entry(uid).or_insert(0) += need,
                    RoutingOutcome::AttackerIsolated(_) | RoutingOutcome::Dropped => {
                        *handled.entry(uid).or_insert(0) += need;
                        rejected += need;
                    }
                    RoutingOutcome::ForwardedToCloud | RoutingOutcome::AbsorbedByAttackFog(_) => {}
                }
                assert_fog_invariants(&state);
            }

            // Conservation: everything offered is fog-served, cloud-served,
            // absorbed, or refused at detection.
            prop_assert_eq!(
                offered,
                state.fog_served_total() + state.cloud_served + state.absorbed_total() + rejected
            );

            // Quota safety: no surviving account past its ceiling.
            for user in state.users.values() {
                if let Some(account) = user.account {
                    prop_assert!(account <= user.max_rps);
                    prop_assert!(user.score <= user.limit);
                }
            }

            // Detection completeness: over-ceiling fog-handled demand means
            // the sender is blacklisted before the second ends.
            for (uid, total) in &handled {
                if *total > state.users[uid].max_rps {
                    prop_assert!(state.blacklist.contains(uid));
                }
            }

            // Blacklist only grows.
            prop_assert!(previous_blacklist.is_subset(&state.blacklist));
            previous_blacklist = state.blacklist.clone();
        }

        // Post-isolation starvation over the whole run.
        let mut isolated_at: BTreeMap<UserId, usize> = BTreeMap::new();
        for (i, event) in state.event_log.iter().enumerate() {
            if let EventKind::Blacklisted { uid, .. } = event.kind {
                isolated_at.entry(uid).or_insert(i);
            }
        }
        for (i, event) in state.event_log.iter().enumerate() {
            match event.kind {
                EventKind::Served { uid, .. } => {
                    if let Some(at) = isolated_at.get(&uid) {
                        prop_assert!(i < *at, "{uid} served after isolation");
                    }
                }
                EventKind::CloudForwarded { uid, origin: Origin::Fog(_), .. } => {
                    if let Some(at) = isolated_at.get(&uid) {
                        prop_assert!(i < *at, "{uid} overflowed to cloud after isolation");
                    }
                }
                _ => {}
            }
        }
    }
}
