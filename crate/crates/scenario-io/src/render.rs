use std::fmt::Write as _;

use fogsim_engine::Scenario;

/// Inverse of the parser for explicit-schedule documents:
/// `parse_scenario(render_scenario(s)) == s` for any valid scenario,
/// including generated workloads (they render as their expanded schedule).
pub fn render_scenario(scenario: &Scenario) -> String {
    let mut out = String::from("format=1\n[params]\n");
    let _ = writeln!(out, "thresh = {}", scenario.params.thresh);
    let _ = writeln!(out, "req_size = {}", scenario.params.req_size);
    let _ = writeln!(out, "seed = {}", scenario.seed);
    for user in &scenario.params.users {
        let _ = writeln!(out, "user = {} {}", user.uid, user.max_rps);
    }
    for fog in &scenario.params.fogs {
        let _ = writeln!(out, "fog = {} {}", fog.fid, fog.mode.as_bit());
    }
    out.push_str("[schedule]\n");
    for tick in &scenario.schedule {
        for (uid, need) in &tick.demands {
            let _ = writeln!(out, "{} {} {}", tick.second, uid, need);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_scenario;
    use fogsim_engine::{generate_workload, DemandModel, WorkloadSpec};
    use fogsim_core::{FogId, FogMode, FogSpec, SimParams, UserId, UserSpec};
    use proptest::prelude::*;

    fn params(n_users: u32) -> SimParams {
        SimParams {
            thresh: 5000,
            req_size: 10,
            users: (1..=n_users)
                .map(|n| UserSpec {
                    uid: UserId(n),
                    max_rps: 100,
                })
                .collect(),
            fogs: vec![
                FogSpec {
                    fid: FogId(1),
                    mode: FogMode::Active,
                },
                FogSpec {
                    fid: FogId(2),
                    mode: FogMode::Sleep,
                },
            ],
        }
    }

    proptest! {
        // Generated workloads must survive a write/read cycle unchanged.
        #[test]
        fn round_trip_of_generated_workloads(
            n_users in 1u32..6,
            duration in 1u64..5,
            seed in 0u64..1000,
            uniform in proptest::bool::ANY,
        ) {
            let spec = WorkloadSpec {
                params: params(n_users),
                demand: if uniform {
                    DemandModel::Uniform { lo: 1, hi: 90 }
                } else {
                    DemandModel::Constant(60)
                },
                duration,
                attacks: vec![],
            };
            let scenario = generate_workload(&spec, seed).unwrap();
            let parsed = parse_scenario(&render_scenario(&scenario)).unwrap();
            prop_assert_eq!(parsed, scenario);
        }
    }
}
