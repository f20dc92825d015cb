use std::collections::BTreeMap;

use fogsim_core::{Event, FogId, Requests, UserId};

/// Everything observable about one simulated second.
///
/// `flag_trace` reproduces the column-by-column story of a second: each fog
/// starts at 0 after the reset and gets one entry per batch it served, so a
/// fog untouched all second has the single entry `[0]`. Refused batches
/// (quota breaches) and absorbed batches from blacklisted users never touch a
/// fog's counters and therefore leave no trace entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TickMetrics {
    pub second: u64,
    /// Total requests offered this second.
    pub demand_total: Requests,
    /// Requests each fog served this second (its final sum).
    pub served_per_fog: BTreeMap<FogId, Requests>,
    pub cloud_served: Requests,
    /// Requests dropped from blacklisted users this second.
    pub absorbed: Requests,
    /// Requests in batches refused at detection time this second.
    pub rejected_at_detection: Requests,
    /// (attacker, attack fog) isolations this second, in order.
    pub blacklist_events: Vec<(UserId, FogId)>,
    /// Cumulative blacklist size at the end of this second.
    pub blacklist_size: usize,
    /// Per fog: 0 after reset, then the fog's sum after each served batch.
    pub flag_trace: BTreeMap<FogId, Vec<Requests>>,
    /// This second's slice of the event log.
    pub events: Vec<Event>,
}

impl TickMetrics {
    /// Requests served at the fog layer this second.
    pub fn fog_served_total(&self) -> Requests {
        self.served_per_fog.values().sum()
    }

    /// Every offered request is accounted for exactly once: served by a fog,
    /// served by the cloud, absorbed from a blacklisted sender, or refused at
    /// detection.
    pub fn is_conserved(&self) -> bool {
        self.demand_total
            == self.fog_served_total()
                + self.cloud_served
                + self.absorbed
                + self.rejected_at_detection
    }
}
