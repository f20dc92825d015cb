use std::collections::{BTreeMap, BTreeSet};

use crate::error::CoreError;
use crate::event::{Event, EventKind};
use crate::fog::FogServer;
use crate::ids::{FogId, UserId};
use crate::params::{compute_f_cap, Requests, SimParams};
use crate::user::UserRecord;

/// Complete mutable state of one simulation run.
///
/// Strictly sequential: operations mutate one state and must never run
/// concurrently. The value may move between threads between seconds (e.g. for
/// parallel scenario sweeps) but is never shared mutably.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemState {
    pub params: SimParams,
    /// Requests/second one fog server can handle (`thresh / req_size`).
    pub f_cap: Requests,
    pub users: BTreeMap<UserId, UserRecord>,
    pub fogs: BTreeMap<FogId, FogServer>,
    /// Isolated attackers; never shrinks during a run.
    pub blacklist: BTreeSet<UserId>,
    /// Requests the cloud took this second.
    pub cloud_served: Requests,
    /// Requests absorbed from blacklisted users this second, per user.
    pub attack_absorbed: BTreeMap<UserId, Requests>,
    /// Which attack fog holds each isolated attacker.
    pub attacker_host: BTreeMap<UserId, FogId>,
    /// Append-only log of everything that happened, across all seconds.
    pub event_log: Vec<Event>,
    /// The second currently being simulated; stamps logged events.
    pub second: u64,
}

impl SystemState {
    pub fn new(params: SimParams) -> Result<Self, CoreError> {
        params.validate()?;
        let f_cap = compute_f_cap(params.thresh, params.req_size)?;
        let users = params
            .users
            .iter()
            .map(|spec| (spec.uid, UserRecord::new(spec, params.req_size)))
            .collect();
        let fogs = params
            .fogs
            .iter()
            .map(|spec| (spec.fid, FogServer::new(spec.fid, spec.mode)))
            .collect();
        Ok(Self {
            params,
            f_cap,
            users,
            fogs,
            blacklist: BTreeSet::new(),
            cloud_served: 0,
            attack_absorbed: BTreeMap::new(),
            attacker_host: BTreeMap::new(),
            event_log: Vec::new(),
            second: 0,
        })
    }

    pub(crate) fn log(&mut self, kind: EventKind) {
        let second = self.second;
        self.event_log.push(Event { second, kind });
    }

    /// Requests served at the fog layer this second.
    pub fn fog_served_total(&self) -> Requests {
        self.fogs.values().map(|fog| fog.flag.sum).sum()
    }

    /// Requests absorbed from blacklisted users this second.
    pub fn absorbed_total(&self) -> Requests {
        self.attack_absorbed.values().sum()
    }
}

/// Start-of-second reset. Every non-blacklisted user gets a fresh account and
/// score (their limit is recomputed from the declared ceiling); every fog's
/// sum is zeroed and its free bit raised. Mode bits are untouched, so attack
/// fogs stay asleep and active fogs stay active. Blacklisted users keep their
/// absent account for the rest of the run — the blacklist never resets.
pub fn global_assign(state: &mut SystemState) {
    let req_size = state.params.req_size;
    for user in state.users.values_mut() {
        user.limit = user.max_rps * req_size;
        if user.account.is_some() {
            user.account = Some(0);
            user.score = 0;
        }
    }
    for fog in state.fogs.values_mut() {
        fog.flag.sum = 0;
        fog.flag.free = true;
    }
    state.cloud_served = 0;
    state.attack_absorbed.clear();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fog::{FogFlag, FogMode};
    use crate::testutil::three_fog_params;

    #[test]
    fn new_state_has_exact_capacity_and_fresh_accounts() {
        let state = SystemState::new(three_fog_params()).unwrap();
        assert_eq!(state.f_cap, 500);
        for user in state.users.values() {
            assert_eq!(user.account, Some(0));
            assert_eq!(user.limit, 1000);
        }
        assert!(state.fogs.values().all(|f| f.flag.free && f.flag.sum == 0));
    }

    #[test]
    fn reset_clears_accounts_and_counters() {
        let mut state = SystemState::new(three_fog_params()).unwrap();
        let user = state.users.get_mut(&UserId(1)).unwrap();
        user.account = Some(360);
        user.score = 3600;
        state.cloud_served = 42;
        state.attack_absorbed.insert(UserId(3), 7);

        global_assign(&mut state);

        let user = &state.users[&UserId(1)];
        assert_eq!(user.account, Some(0));
        assert_eq!(user.score, 0);
        assert_eq!(state.cloud_served, 0);
        assert!(state.attack_absorbed.is_empty());
    }

    #[test]
    fn reset_keeps_blacklisted_account_absent() {
        let mut state = SystemState::new(three_fog_params()).unwrap();
        state.blacklist.insert(UserId(2));
        state.users.get_mut(&UserId(2)).unwrap().account = None;

        global_assign(&mut state);

        assert_eq!(state.users[&UserId(2)].account, None);
        assert!(state.blacklist.contains(&UserId(2)));
    }

    #[test]
    fn reset_preserves_mode_bit_while_raising_free_bit() {
        let mut state = SystemState::new(three_fog_params()).unwrap();
        state.fogs.get_mut(&FogId(1)).unwrap().flag = FogFlag {
            mode: FogMode::Active,
            free: false,
            sum: 500,
        };

        global_assign(&mut state);

        let flag = state.fogs[&FogId(1)].flag;
        assert_eq!(flag.mode, FogMode::Active);
        assert!(flag.free);
        assert_eq!(flag.sum, 0);
        assert_eq!(state.fogs[&FogId(2)].flag.mode, FogMode::Sleep);
    }
}
