use std::fmt;

use crate::ids::{FogId, UserId};
use crate::outcome::Origin;
use crate::params::{Megabits, Requests};

/// One state-transition event, stamped with the second it happened in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    pub second: u64,
    pub kind: EventKind,
}

/// Everything observable the state machine does, in order. The event log is
/// append-only for a whole run; serving traces, isolation timelines and the
/// exported `events` format are all derived from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EventKind {
    /// A fog served (part of) a batch; `sum` is its total right afterwards.
    Served {
        fid: FogId,
        uid: UserId,
        requests: Requests,
        sum: Requests,
    },
    /// The fog reached capacity and flipped its free bit to 0.
    Saturated { fid: FogId },
    /// The fog could not serve the whole batch and forwards the remainder.
    Overflowed {
        fid: FogId,
        uid: UserId,
        remainder: Requests,
    },
    /// No active fog had room; the batch went to the cloud.
    CloudForwarded {
        uid: UserId,
        requests: Requests,
        origin: Origin,
    },
    /// A batch pushed the sender's score past its limit.
    QuotaExceeded {
        uid: UserId,
        need: Requests,
        score: Megabits,
        limit: Megabits,
    },
    /// A sleeping fog was woken to take an attacker.
    AttackFogActivated { fid: FogId },
    /// The user was declared an attacker and bound to the given attack fog.
    Blacklisted { uid: UserId, fog: FogId },
    /// The attack fog went back to sleep with the attacker quarantined on it.
    AttackFogSlept { fid: FogId },
    /// Isolation requested for an already-blacklisted user; no state change.
    DuplicateIsolation { uid: UserId },
    /// A quota breach could not be punished: no sleeping fog exists.
    IsolationUnavailable { uid: UserId },
    /// A blacklisted user sent again; its attack fog host absorbed the batch.
    Absorbed {
        uid: UserId,
        fog: FogId,
        requests: Requests,
    },
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.second;
        match &self.kind {
            EventKind::Served {
                fid,
                uid,
                requests,
                sum,
            } => write!(f, "{s} served fog={fid} uid={uid} requests={requests} sum={sum}"),
            EventKind::Saturated { fid } => write!(f, "{s} saturated fog={fid}"),
            EventKind::Overflowed {
                fid,
                uid,
                remainder,
            } => write!(f, "{s} overflow fog={fid} uid={uid} remainder={remainder}"),
            EventKind::CloudForwarded {
                uid,
                requests,
                origin,
            } => write!(f, "{s} cloud-forwarded uid={uid} requests={requests} origin={origin}"),
            EventKind::QuotaExceeded {
                uid,
                need,
                score,
                limit,
            } => write!(f, "{s} quota-exceeded uid={uid} need={need} score={score} limit={limit}"),
            EventKind::AttackFogActivated { fid } => {
                write!(f, "{s} attack-fog-activated fog={fid}")
            }
            EventKind::Blacklisted { uid, fog } => {
                write!(f, "{s} blacklisted uid={uid} fog={fog}")
            }
            EventKind::AttackFogSlept { fid } => write!(f, "{s} attack-fog-slept fog={fid}"),
            EventKind::DuplicateIsolation { uid } => {
                write!(f, "{s} duplicate-isolation uid={uid}")
            }
            EventKind::IsolationUnavailable { uid } => {
                write!(f, "{s} isolation-unavailable uid={uid}")
            }
            EventKind::Absorbed {
                uid,
                fog,
                requests,
            } => write!(f, "{s} absorbed uid={uid} fog={fog} requests={requests}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn event_lines_are_stable() {
        let event = Event {
            second: 4,
            kind: EventKind::Blacklisted {
                uid: UserId(10),
                fog: FogId(2),
            },
        };
        assert_eq!(event.to_string(), "4 blacklisted uid=U10 fog=F2");

        let event = Event {
            second: 0,
            kind: EventKind::CloudForwarded {
                uid: UserId(12),
                requests: 60,
                origin: Origin::Fog(FogId(3)),
            },
        };
        assert_eq!(
            event.to_string(),
            "0 cloud-forwarded uid=U12 requests=60 origin=F3"
        );
    }
}
