use crate::ids::UserId;
use crate::params::{Megabits, Requests, UserSpec};

/// Per-user quota state for the current second.
///
/// `account` is the number of requests counted against the user this second;
/// it is `None` exactly when the user is blacklisted, which is how every fog
/// learns the user must no longer be served. `score` is the megabit
/// equivalent of `account` and is compared against `limit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UserRecord {
    pub uid: UserId,
    /// Requests/second ceiling declared when the user connected.
    pub max_rps: Requests,
    /// Usage ceiling in megabits/second: `max_rps * req_size`.
    pub limit: Megabits,
    /// Requests counted this second; `None` once blacklisted.
    pub account: Option<Requests>,
    /// Megabits/second used this second: `account * req_size`.
    pub score: Megabits,
}

/// Current usage of a user in megabits/second.
pub fn compute_score(account: Requests, req_size: Megabits) -> Megabits {
    account * req_size
}

impl UserRecord {
    pub(crate) fn new(spec: &UserSpec, req_size: Megabits) -> Self {
        Self {
            uid: spec.uid,
            max_rps: spec.max_rps,
            limit: spec.max_rps * req_size,
            account: Some(0),
            score: 0,
        }
    }

    pub fn is_blacklisted(&self) -> bool {
        self.account.is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn score_of_oversized_batch() {
        // 200 requests of 10 Mb each: well past a 1000 Mbps limit.
        assert_eq!(compute_score(200, 10), 2000);
    }

    #[test]
    fn score_of_idle_user_is_zero() {
        assert_eq!(compute_score(0, 10), 0);
    }

    #[test]
    fn score_hits_limit_exactly_at_max_rps() {
        let spec = UserSpec {
            uid: UserId(1),
            max_rps: 100,
        };
        let user = UserRecord::new(&spec, 10);
        assert_eq!(user.limit, 1000);
        assert_eq!(compute_score(100, 10), user.limit);
    }
}
