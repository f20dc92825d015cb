//! Cross-check a scenario: run it through the engine and through the
//! stand-alone reference simulator, compare every per-second observable, and
//! on divergence minimize to the first offending demand.

use fogsim_engine::{run, EngineError, Scenario, Tick, TickMetrics};
use fogsim_oracle as oracle;

use crate::Failure;

/// Convert a scenario into the reference simulator's plain input shape,
/// materializing idle seconds for schedule gaps exactly like the engine does.
pub fn to_oracle_input(scenario: &Scenario) -> oracle::Input {
    let last = scenario.last_second();
    let mut seconds = vec![Vec::new(); (last + 1) as usize];
    for tick in &scenario.schedule {
        seconds[tick.second as usize] = tick
            .demands
            .iter()
            .map(|(uid, need)| (uid.0, *need))
            .collect();
    }
    oracle::Input {
        thresh: scenario.params.thresh,
        req_size: scenario.params.req_size,
        users: scenario
            .params
            .users
            .iter()
            .map(|u| (u.uid.0, u.max_rps))
            .collect(),
        fogs: scenario
            .params
            .fogs
            .iter()
            .map(|f| (f.fid.0, f.mode.as_bit()))
            .collect(),
        seconds,
    }
}

/// Project engine metrics onto the reference simulator's report shape so the
/// two runs compare field by field.
pub fn metrics_report(metrics: &[TickMetrics]) -> oracle::Report {
    let seconds = metrics
        .iter()
        .map(|m| oracle::SecondReport {
            traces: m
                .flag_trace
                .iter()
                .map(|(fid, trace)| (fid.0, trace.clone()))
                .collect(),
            fog_served: m
                .served_per_fog
                .iter()
                .map(|(fid, n)| (fid.0, *n))
                .collect(),
            cloud: m.cloud_served,
            absorbed: m.absorbed,
            rejected: m.rejected_at_detection,
            blacklisted: m
                .blacklist_events
                .iter()
                .map(|(uid, fid)| (uid.0, fid.0))
                .collect(),
        })
        .collect();
    oracle::Report {
        seconds,
        blacklist: metrics
            .iter()
            .flat_map(|m| m.blacklist_events.iter().map(|(uid, _)| uid.0))
            .collect(),
        cloud_total: metrics.iter().map(|m| m.cloud_served).sum(),
    }
}

pub fn engine_report(scenario: &Scenario) -> Result<oracle::Report, EngineError> {
    Ok(metrics_report(&run(scenario)?))
}

pub fn oracle_report(scenario: &Scenario) -> oracle::Report {
    oracle::simulate(&to_oracle_input(scenario))
}

/// First point where two reports disagree: the second and the field name.
pub fn first_divergence(engine: &oracle::Report, reference: &oracle::Report) -> Option<(u64, String)> {
    for (second, (e, r)) in engine.seconds.iter().zip(&reference.seconds).enumerate() {
        let second = second as u64;
        if e.traces != r.traces {
            return Some((second, format!("traces {:?} vs {:?}", e.traces, r.traces)));
        }
        if e.fog_served != r.fog_served {
            return Some((
                second,
                format!("fog_served {:?} vs {:?}", e.fog_served, r.fog_served),
            ));
        }
        if e.cloud != r.cloud {
            return Some((second, format!("cloud {} vs {}", e.cloud, r.cloud)));
        }
        if e.absorbed != r.absorbed {
            return Some((second, format!("absorbed {} vs {}", e.absorbed, r.absorbed)));
        }
        if e.rejected != r.rejected {
            return Some((second, format!("rejected {} vs {}", e.rejected, r.rejected)));
        }
        if e.blacklisted != r.blacklisted {
            return Some((
                second,
                format!("blacklisted {:?} vs {:?}", e.blacklisted, r.blacklisted),
            ));
        }
    }
    if engine.seconds.len() != reference.seconds.len() {
        return Some((
            engine.seconds.len().min(reference.seconds.len()) as u64,
            format!(
                "second count {} vs {}",
                engine.seconds.len(),
                reference.seconds.len()
            ),
        ));
    }
    let last = engine.seconds.len().saturating_sub(1) as u64;
    if engine.blacklist != reference.blacklist {
        return Some((
            last,
            format!(
                "final blacklist {:?} vs {:?}",
                engine.blacklist, reference.blacklist
            ),
        ));
    }
    if engine.cloud_total != reference.cloud_total {
        return Some((
            last,
            format!(
                "cloud total {} vs {}",
                engine.cloud_total, reference.cloud_total
            ),
        ));
    }
    None
}

/// A located mismatch between engine and reference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divergence {
    pub second: u64,
    /// Index into that second's demand list, when one demand pins it down.
    pub demand_index: Option<usize>,
    pub field: String,
}

impl std::fmt::Display for Divergence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.demand_index {
            Some(idx) => write!(
                f,
                "divergence at second {}, demand index {idx}: {}",
                self.second, self.field
            ),
            None => write!(f, "divergence at second {}: {}", self.second, self.field),
        }
    }
}

/// Run both simulators over the scenario. `Ok(None)` means every observable
/// matched; a divergence is minimized by replaying prefixes of the offending
/// second's demand list.
pub fn check_scenario(scenario: &Scenario) -> Result<Option<Divergence>, Failure> {
    let engine = engine_report(scenario)
        .map_err(|e| Failure::Contract(format!("engine failed mid-run: {e}")))?;
    let reference = oracle_report(scenario);
    let Some((second, field)) = first_divergence(&engine, &reference) else {
        return Ok(None);
    };
    let demand_index = minimize(scenario, second);
    Ok(Some(Divergence {
        second,
        demand_index,
        field,
    }))
}

/// Shrink the schedule to growing prefixes of the diverging second until the
/// divergence first appears.
fn minimize(scenario: &Scenario, second: u64) -> Option<usize> {
    let tick = scenario.schedule.iter().find(|t| t.second == second)?;
    for prefix in 1..=tick.demands.len() {
        let mut schedule: Vec<Tick> = scenario
            .schedule
            .iter()
            .filter(|t| t.second < second)
            .cloned()
            .collect();
        schedule.push(Tick {
            second,
            demands: tick.demands[..prefix].to_vec(),
        });
        let truncated = Scenario {
            params: scenario.params.clone(),
            schedule,
            seed: scenario.seed,
        };
        let Ok(engine) = engine_report(&truncated) else {
            return Some(prefix - 1);
        };
        if first_divergence(&engine, &oracle_report(&truncated)).is_some() {
            return Some(prefix - 1);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use fogsim_scenario_io::builtin_fixture;

    #[test]
    fn fixtures_match_the_reference() {
        for name in fogsim_scenario_io::fixture_names() {
            let scenario = builtin_fixture(name).unwrap();
            assert_eq!(check_scenario(&scenario).unwrap(), None, "{name}");
        }
    }

    // Harness sanity: a deliberately corrupted run must be reported with its
    // location, otherwise a silent comparator would make the whole
    // cross-check meaningless.
    #[test]
    fn perturbed_report_is_located() {
        let scenario = builtin_fixture("case-c").unwrap();
        let good = engine_report(&scenario).unwrap();
        let mut bad = good.clone();
        bad.seconds[0].cloud += 1;
        let (second, field) = first_divergence(&bad, &oracle_report(&scenario)).unwrap();
        assert_eq!(second, 0);
        assert!(field.starts_with("cloud"), "{field}");

        let mut bad = good.clone();
        if let Some(trace) = bad.seconds[0].traces.get_mut(&1) {
            *trace.last_mut().unwrap() += 5;
        }
        let (second, field) = first_divergence(&bad, &oracle_report(&scenario)).unwrap();
        assert_eq!(second, 0);
        assert!(field.starts_with("traces"), "{field}");
    }

    #[test]
    fn minimization_points_at_the_offending_demand() {
        // Mutate the engine result indirectly: compare a scenario against a
        // reference for a slightly different scenario, so the divergence is
        // real and sits at a known demand.
        let scenario = builtin_fixture("case-2").unwrap();
        let divergence = {
            let mut other = scenario.clone();
            // Soften the first attacker into a legitimate sender.
            let slot = other.schedule[0]
                .demands
                .iter_mut()
                .find(|(uid, _)| uid.0 == 2)
                .unwrap();
            slot.1 = 50;
            let engine = engine_report(&other).unwrap();
            first_divergence(&engine, &oracle_report(&scenario))
        };
        let (second, _) = divergence.expect("the two scenarios must differ");
        assert_eq!(second, 0);
    }
}
