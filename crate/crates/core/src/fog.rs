use std::collections::{BTreeMap, BTreeSet};

use crate::ids::{FogId, UserId};
use crate::params::Requests;

/// Mode bit of a fog server: sleeping servers take no regular traffic and are
/// woken only to quarantine a detected attacker.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FogMode {
    Sleep,
    Active,
}

impl FogMode {
    pub fn as_bit(self) -> u8 {
        match self {
            FogMode::Sleep => 0,
            FogMode::Active => 1,
        }
    }

    pub fn from_bit(bit: u8) -> Option<Self> {
        match bit {
            0 => Some(FogMode::Sleep),
            1 => Some(FogMode::Active),
            _ => None,
        }
    }
}

/// The per-fog state triple: mode bit, free bit, and the requests served this
/// second. `free` is false exactly when `sum` has reached the fog capacity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FogFlag {
    pub mode: FogMode,
    /// True while the fog can take more requests this second.
    pub free: bool,
    /// Requests served this second (the total of the per-user counts).
    pub sum: Requests,
}

/// One fog server: its flag triple plus how many requests it has served for
/// each user this second.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FogServer {
    pub fid: FogId,
    pub flag: FogFlag,
    /// Requests served per user this second.
    pub served: BTreeMap<UserId, Requests>,
}

impl FogServer {
    pub fn new(fid: FogId, mode: FogMode) -> Self {
        Self {
            fid,
            flag: FogFlag {
                mode,
                free: true,
                sum: 0,
            },
            served: BTreeMap::new(),
        }
    }

    pub fn served_total(&self) -> Requests {
        self.served.values().sum()
    }
}

/// Start-of-second reset of one fog's per-user counters. Entries for
/// blacklisted users are removed entirely; the rest are zeroed in place.
pub fn local_assign(fog: &mut FogServer, blacklist: &BTreeSet<UserId>) {
    fog.served.retain(|uid, _| !blacklist.contains(uid));
    for count in fog.served.values_mut() {
        *count = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fog_with(counts: &[(u32, u64)]) -> FogServer {
        let mut fog = FogServer::new(FogId(1), FogMode::Active);
        for (uid, count) in counts {
            fog.served.insert(UserId(*uid), *count);
        }
        fog.flag.sum = fog.served_total();
        fog
    }

    #[test]
    fn reset_zeroes_every_counter() {
        let mut fog = fog_with(&[(1, 100), (6, 50)]);
        local_assign(&mut fog, &BTreeSet::new());
        assert!(fog.served.values().all(|&c| c == 0));
        assert_eq!(fog.served.len(), 2);
    }

    #[test]
    fn reset_removes_blacklisted_entries() {
        let mut fog = fog_with(&[(1, 100), (2, 30)]);
        let blacklist = BTreeSet::from([UserId(2)]);
        local_assign(&mut fog, &blacklist);
        assert!(!fog.served.contains_key(&UserId(2)));
        assert_eq!(fog.served.get(&UserId(1)), Some(&0));
    }

    #[test]
    fn reset_of_empty_fog_is_identity() {
        let mut fog = FogServer::new(FogId(2), FogMode::Sleep);
        local_assign(&mut fog, &BTreeSet::new());
        assert!(fog.served.is_empty());
        assert_eq!(fog.flag.mode, FogMode::Sleep);
    }
}
