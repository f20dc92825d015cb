//! The per-second driving loop.

use std::collections::BTreeMap;

use fogsim_core::{
    global_assign, local_assign, send_request, Event, EventKind, FogId, FogSelector,
    LowestFidFirst, Origin, Requests, SystemState,
};

use crate::error::EngineError;
use crate::metrics::TickMetrics;
use crate::scenario::{Scenario, Tick};

/// The engine's fog selection policy: lowest id among active fogs with spare
/// capacity, never the excluded (forwarding) fog.
pub fn select_fog(state: &SystemState, exclude: Option<FogId>) -> Option<FogId> {
    LowestFidFirst.select(state, exclude)
}

/// Simulate one second: run the start-of-second resets, then feed the demands
/// through routing in arrival order. Ticks must arrive in order, one per
/// second.
pub fn tick(state: &mut SystemState, entry: &Tick) -> Result<TickMetrics, EngineError> {
    if entry.second != state.second {
        return Err(EngineError::OutOfOrderTick {
            expected: state.second,
            got: entry.second,
        });
    }
    global_assign(state);
    let blacklist = state.blacklist.clone();
    for fog in state.fogs.values_mut() {
        local_assign(fog, &blacklist);
    }

    let log_start = state.event_log.len();
    for (uid, need) in &entry.demands {
        send_request(state, &LowestFidFirst, Origin::User, *uid, *need)?;
    }

    let metrics = collect_metrics(state, entry, &state.event_log[log_start..]);
    debug_assert!(metrics.is_conserved(), "request conservation broken");
    state.second += 1;
    Ok(metrics)
}

fn collect_metrics(state: &SystemState, entry: &Tick, events: &[Event]) -> TickMetrics {
    let mut flag_trace: BTreeMap<FogId, Vec<Requests>> =
        state.fogs.keys().map(|fid| (*fid, vec![0])).collect();
    let mut rejected = 0;
    let mut blacklist_events = Vec::new();
    for event in events {
        match &event.kind {
            EventKind::Served { fid, sum, .. } => {
                flag_trace.get_mut(fid).expect("roster fog").push(*sum);
            }
            EventKind::QuotaExceeded { need, .. } => rejected += need,
            EventKind::Blacklisted { uid, fog } => blacklist_events.push((*uid, *fog)),
            _ => {}
        }
    }
    TickMetrics {
        second: entry.second,
        demand_total: entry.demand_total(),
        served_per_fog: state
            .fogs
            .iter()
            .map(|(fid, fog)| (*fid, fog.flag.sum))
            .collect(),
        cloud_served: state.cloud_served,
        absorbed: state.absorbed_total(),
        rejected_at_detection: rejected,
        blacklist_events,
        blacklist_size: state.blacklist.len(),
        flag_trace,
        events: events.to_vec(),
    }
}

/// Run a whole scenario from a fresh state. Seconds missing from the schedule
/// are simulated as idle. Deterministic: identical scenarios produce
/// identical metrics.
pub fn run(scenario: &Scenario) -> Result<Vec<TickMetrics>, EngineError> {
    scenario.validate()?;
    let mut state = SystemState::new(scenario.params.clone())?;
    let by_second: BTreeMap<u64, &Tick> =
        scenario.schedule.iter().map(|t| (t.second, t)).collect();
    let mut out = Vec::new();
    for second in 0..=scenario.last_second() {
        match by_second.get(&second) {
            Some(entry) => out.push(tick(&mut state, entry)?),
            None => out.push(tick(&mut state, &Tick::empty(second))?),
        }
    }
    Ok(out)
}
