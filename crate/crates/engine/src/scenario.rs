use std::collections::BTreeSet;

use fogsim_core::{Requests, SimParams, UserId};

use crate::error::EngineError;

/// One simulated second of demand: batches in arrival order. Order matters —
/// serving traces and overflow splits depend on it — so it is always explicit
/// and never randomized inside a tick.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tick {
    pub second: u64,
    /// (uid, need) batches in arrival order.
    pub demands: Vec<(UserId, Requests)>,
}

impl Tick {
    pub fn empty(second: u64) -> Self {
        Self {
            second,
            demands: Vec::new(),
        }
    }

    pub fn demand_total(&self) -> Requests {
        self.demands.iter().map(|(_, need)| need).sum()
    }
}

/// A complete runnable scenario: parameters, a per-second schedule, and the
/// seed any workload generation used (kept for reproducibility and
/// round-tripping).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub params: SimParams,
    pub schedule: Vec<Tick>,
    pub seed: u64,
}

impl Scenario {
    pub fn last_second(&self) -> u64 {
        self.schedule.last().map(|t| t.second).unwrap_or(0)
    }

    pub fn validate(&self) -> Result<(), EngineError> {
        self.params.validate()?;
        if self.schedule.is_empty() {
            return Err(EngineError::InvalidScenario(
                "schedule must contain at least one second".into(),
            ));
        }
        let roster: BTreeSet<UserId> = self.params.users.iter().map(|u| u.uid).collect();
        let mut prev: Option<u64> = None;
        for tick in &self.schedule {
            if let Some(p) = prev {
                if tick.second <= p {
                    return Err(EngineError::InvalidScenario(format!(
                        "schedule seconds must strictly increase ({} after {p})",
                        tick.second
                    )));
                }
            }
            prev = Some(tick.second);
            for (uid, need) in &tick.demands {
                if !roster.contains(uid) {
                    return Err(EngineError::InvalidScenario(format!(
                        "second {}: demand references unknown user {uid}",
                        tick.second
                    )));
                }
                if *need == 0 {
                    return Err(EngineError::InvalidScenario(format!(
                        "second {}: demand for {uid} must be at least 1",
                        tick.second
                    )));
                }
            }
        }
        Ok(())
    }
}
