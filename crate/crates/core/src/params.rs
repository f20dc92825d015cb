use std::collections::BTreeSet;

use crate::error::CoreError;
use crate::fog::FogMode;
use crate::ids::{FogId, UserId};

/// Request counts (requests, or requests per second where noted).
pub type Requests = u64;
/// Data volumes in megabits (or megabits per second where noted).
pub type Megabits = u64;

/// One user in the connection roster: the ceiling it declared at connect time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UserSpec {
    pub uid: UserId,
    /// Maximum requests this user may send per second.
    pub max_rps: Requests,
}

/// One fog server in the roster with its initial mode bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FogSpec {
    pub fid: FogId,
    pub mode: FogMode,
}

/// Static simulation parameters: fog data rate, request size, and the user
/// and fog rosters.
///
/// All quantities are integers; `thresh` must divide evenly by `req_size` so
/// the per-fog capacity is an exact request count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimParams {
    /// Data processing speed of every fog server, in megabits/second.
    pub thresh: Megabits,
    /// Size of one request in megabits.
    pub req_size: Megabits,
    pub users: Vec<UserSpec>,
    pub fogs: Vec<FogSpec>,
}

/// Maximum requests a fog server can handle per second: `thresh / req_size`,
/// required to be exact.
pub fn compute_f_cap(thresh: Megabits, req_size: Megabits) -> Result<Requests, CoreError> {
    if thresh == 0 || req_size == 0 || thresh % req_size != 0 {
        return Err(CoreError::InvalidCapacity { thresh, req_size });
    }
    Ok(thresh / req_size)
}

impl SimParams {
    pub fn n_users(&self) -> usize {
        self.users.len()
    }

    /// Fog servers that start in sleep mode and act as attacker quarantine.
    pub fn attack_fog_ids(&self) -> Vec<FogId> {
        self.fogs
            .iter()
            .filter(|f| f.mode == FogMode::Sleep)
            .map(|f| f.fid)
            .collect()
    }

    pub fn max_rps_of(&self, uid: UserId) -> Option<Requests> {
        self.users.iter().find(|u| u.uid == uid).map(|u| u.max_rps)
    }

    pub fn f_cap(&self) -> Result<Requests, CoreError> {
        compute_f_cap(self.thresh, self.req_size)
    }

    pub fn validate(&self) -> Result<(), CoreError> {
        compute_f_cap(self.thresh, self.req_size)?;
        if self.users.is_empty() {
            return Err(CoreError::InvalidParams(
                "at least one user is required".into(),
            ));
        }
        let mut uids = BTreeSet::new();
        for user in &self.users {
            if !uids.insert(user.uid) {
                return Err(CoreError::InvalidParams(format!(
                    "duplicate user {}",
                    user.uid
                )));
            }
        }
        let mut fids = BTreeSet::new();
        for fog in &self.fogs {
            if !fids.insert(fog.fid) {
                return Err(CoreError::InvalidParams(format!(
                    "duplicate fog {}",
                    fog.fid
                )));
            }
        }
        if !self.fogs.iter().any(|f| f.mode == FogMode::Active) {
            return Err(CoreError::InvalidParams(
                "at least one active fog is required".into(),
            ));
        }
        if !self.fogs.iter().any(|f| f.mode == FogMode::Sleep) {
            return Err(CoreError::InvalidParams(
                "at least one sleeping (attack) fog is required".into(),
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn f_cap_matches_reference_parameters() {
        // 5 Gbps fog data rate with 10 Mb requests.
        assert_eq!(compute_f_cap(5000, 10).unwrap(), 500);
    }

    #[test]
    fn f_cap_unit_capacity() {
        assert_eq!(compute_f_cap(10, 10).unwrap(), 1);
    }

    #[test]
    fn f_cap_division_checked_by_multiplication() {
        let f_cap = compute_f_cap(7000, 10).unwrap();
        assert_eq!(f_cap, 700);
        assert_eq!(f_cap * 10, 7000);
    }

    #[test]
    fn f_cap_rejects_non_divisible_and_non_positive() {
        let err = compute_f_cap(5001, 10).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("5001") && msg.contains("10"), "{msg}");
        assert!(compute_f_cap(0, 10).is_err());
        assert!(compute_f_cap(10, 0).is_err());
    }

    fn params(fog_modes: &[FogMode]) -> SimParams {
        SimParams {
            thresh: 100,
            req_size: 10,
            users: vec![UserSpec {
                uid: UserId(1),
                max_rps: 5,
            }],
            fogs: fog_modes
                .iter()
                .enumerate()
                .map(|(i, mode)| FogSpec {
                    fid: FogId(i as u32 + 1),
                    mode: *mode,
                })
                .collect(),
        }
    }

    #[test]
    fn roster_needs_one_active_and_one_sleeping_fog() {
        assert!(params(&[FogMode::Active, FogMode::Sleep]).validate().is_ok());
        assert!(params(&[FogMode::Active]).validate().is_err());
        assert!(params(&[FogMode::Sleep]).validate().is_err());
    }

    #[test]
    fn duplicate_ids_rejected() {
        let mut p = params(&[FogMode::Active, FogMode::Sleep]);
        p.users.push(UserSpec {
            uid: UserId(1),
            max_rps: 9,
        });
        assert!(p.validate().is_err());

        let mut p = params(&[FogMode::Active, FogMode::Sleep]);
        p.fogs.push(FogSpec {
            fid: FogId(1),
            mode: FogMode::Active,
        });
        assert!(p.validate().is_err());
    }

    proptest! {
        #[test]
        fn f_cap_is_exact_division(f_cap in 1u64..10_000, req_size in 1u64..1_000) {
            let thresh = f_cap * req_size;
            prop_assert_eq!(compute_f_cap(thresh, req_size).unwrap(), f_cap);
        }

        #[test]
        fn non_multiples_are_rejected(f_cap in 1u64..10_000, req_size in 2u64..1_000, off in 1u64..1_000) {
            let thresh = f_cap * req_size + (off % req_size).max(1).min(req_size - 1);
            prop_assume!(thresh % req_size != 0);
            prop_assert!(compute_f_cap(thresh, req_size).is_err());
        }
    }
}
