//! Golden replay of the bundled cases: run a fixture and print its serving
//! traces side by side with the expected values, marking each cell.
//! The expected values are embedded here so the comparison needs no external
//! files.

use std::fmt::Write as _;

use fogsim_core::Requests;
use fogsim_engine::{run, TickMetrics};
use fogsim_scenario_io::builtin_fixture;

use crate::Failure;

struct FogGolden {
    fid: &'static str,
    mode_bit: u8,
    trace: &'static [Requests],
}

struct CaseGolden {
    name: &'static str,
    fogs: &'static [FogGolden],
    /// (attacker, attack fog) isolations in order.
    isolations: &'static [(&'static str, &'static str)],
    cloud: Requests,
}

const F_CAP: Requests = 500;

static GOLDEN: &[CaseGolden] = &[
    CaseGolden {
        name: "case-a",
        fogs: &[
            FogGolden {
                fid: "F1",
                mode_bit: 1,
                trace: &[0, 50, 140, 180, 230, 260, 360],
            },
            FogGolden {
                fid: "F2",
                mode_bit: 0,
                trace: &[0],
            },
            FogGolden {
                fid: "F3",
                mode_bit: 1,
                trace: &[0],
            },
        ],
        isolations: &[],
        cloud: 0,
    },
    CaseGolden {
        name: "case-b",
        fogs: &[
            FogGolden {
                fid: "F1",
                mode_bit: 1,
                trace: &[0, 100, 200, 250, 300, 400, 500],
            },
            FogGolden {
                fid: "F2",
                mode_bit: 0,
                trace: &[0],
            },
            FogGolden {
                fid: "F3",
                mode_bit: 1,
                trace: &[0],
            },
        ],
        isolations: &[],
        cloud: 0,
    },
    CaseGolden {
        name: "case-c",
        fogs: &[
            FogGolden {
                fid: "F1",
                mode_bit: 1,
                trace: &[0, 100, 185, 260, 355, 450, 500],
            },
            FogGolden {
                fid: "F2",
                mode_bit: 0,
                trace: &[0],
            },
            FogGolden {
                fid: "F3",
                mode_bit: 1,
                trace: &[0, 50],
            },
        ],
        isolations: &[],
        cloud: 0,
    },
    CaseGolden {
        name: "case-d",
        fogs: &[
            FogGolden {
                fid: "F1",
                mode_bit: 1,
                trace: &[0, 100, 200, 285, 380, 480, 500],
            },
            FogGolden {
                fid: "F2",
                mode_bit: 0,
                trace: &[0],
            },
            FogGolden {
                fid: "F3",
                mode_bit: 1,
                trace: &[0, 85, 185, 285, 360, 460, 500],
            },
        ],
        isolations: &[],
        cloud: 60,
    },
    CaseGolden {
        name: "case-2",
        fogs: &[
            FogGolden {
                fid: "F1",
                mode_bit: 1,
                trace: &[0, 100, 150, 200, 300],
            },
            FogGolden {
                fid: "F2",
                mode_bit: 0,
                trace: &[0],
            },
            FogGolden {
                fid: "F3",
                mode_bit: 1,
                trace: &[0],
            },
        ],
        isolations: &[("U2", "F2"), ("U5", "F2")],
        cloud: 0,
    },
];

/// Expected per-second fog-layer totals for the ten-second evaluation run:
/// full capacity before the attack, the attack second loses exactly the
/// refused burst, and afterwards the quarantined client's share stays gone.
static EVAL_FOG_TOTALS: [Requests; 10] =
    [1000, 1000, 1000, 1000, 900, 900, 900, 900, 900, 900];
static EVAL_ABSORBED: [Requests; 10] = [0, 0, 0, 0, 0, 100, 100, 100, 100, 100];

fn join(values: impl IntoIterator<Item = Requests>) -> String {
    values
        .into_iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

fn mark(matched: bool) -> &'static str {
    if matched {
        "ok"
    } else {
        "MISMATCH"
    }
}

fn trace_cells(expected: &[Requests], actual: &[Requests]) -> (String, bool) {
    let len = expected.len().max(actual.len());
    let mut cells = Vec::with_capacity(len);
    let mut all_ok = true;
    for i in 0..len {
        let ok = expected.get(i) == actual.get(i);
        all_ok &= ok;
        cells.push(mark(ok));
    }
    (cells.join(","), all_ok)
}

/// Replay one bundled case and write the expected/actual table to `out`.
/// Returns whether every cell matched.
pub fn replay_case(name: &str, out: &mut String) -> Result<bool, Failure> {
    if name == "eval-fig12" {
        return replay_eval(out);
    }
    let golden = GOLDEN
        .iter()
        .find(|g| g.name == name)
        .ok_or_else(|| Failure::Invalid(format!("unknown case '{name}'")))?;
    let scenario = builtin_fixture(name).map_err(|e| Failure::Invalid(e.to_string()))?;
    let metrics = run(&scenario).map_err(|e| Failure::Contract(e.to_string()))?;
    let second = &metrics[0];

    let mut all_ok = true;
    let _ = writeln!(out, "{name} (f_cap={F_CAP})");
    for fog in golden.fogs {
        let actual_mode = scenario
            .params
            .fogs
            .iter()
            .find(|f| f.fid.to_string() == fog.fid)
            .map(|f| f.mode.as_bit());
        let mode_ok = actual_mode == Some(fog.mode_bit);
        all_ok &= mode_ok;
        let _ = writeln!(
            out,
            "  {}.mode expected {} | actual {} | {}",
            fog.fid,
            fog.mode_bit,
            actual_mode.map_or("-".to_string(), |b| b.to_string()),
            mark(mode_ok),
        );

        let actual_trace = second
            .flag_trace
            .iter()
            .find(|(fid, _)| fid.to_string() == fog.fid)
            .map(|(_, t)| t.clone())
            .unwrap_or_default();
        let (cells, trace_ok) = trace_cells(fog.trace, &actual_trace);
        all_ok &= trace_ok;
        let _ = writeln!(out, "  {}.sum  expected {}", fog.fid, join(fog.trace.iter().copied()));
        let _ = writeln!(out, "          actual   {}", join(actual_trace.iter().copied()));
        let _ = writeln!(out, "          cells    {cells}");

        // The free bit follows from the trace: it drops exactly when the sum
        // reaches capacity.
        let expected_free = u8::from(*fog.trace.last().unwrap_or(&0) < F_CAP);
        let actual_free = u8::from(*actual_trace.last().unwrap_or(&0) < F_CAP);
        let free_ok = expected_free == actual_free;
        all_ok &= free_ok;
        let _ = writeln!(
            out,
            "  {}.free expected {expected_free} | actual {actual_free} | {}",
            fog.fid,
            mark(free_ok),
        );
    }

    let actual_isolations: Vec<(String, String)> = second
        .blacklist_events
        .iter()
        .map(|(uid, fid)| (uid.to_string(), fid.to_string()))
        .collect();
    let expected_isolations: Vec<(String, String)> = golden
        .isolations
        .iter()
        .map(|(u, f)| (u.to_string(), f.to_string()))
        .collect();
    let isolations_ok = actual_isolations == expected_isolations;
    all_ok &= isolations_ok;
    for (i, (uid, fid)) in expected_isolations.iter().enumerate() {
        let seen = actual_isolations.get(i).map(|(u, f)| (u.as_str(), f.as_str()));
        let ok = seen == Some((uid.as_str(), fid.as_str()));
        // Each isolation is the attack fog's wake/sleep round trip.
        let _ = writeln!(
            out,
            "  {fid}.mode during {uid} isolation expected 0,1,0 | actual {} | {}",
            if ok { "0,1,0" } else { "-" },
            mark(ok),
        );
    }
    let _ = writeln!(
        out,
        "  blacklist expected {:?} | actual {:?} | {}",
        expected_isolations
            .iter()
            .map(|(u, _)| u.as_str())
            .collect::<Vec<_>>(),
        actual_isolations
            .iter()
            .map(|(u, _)| u.as_str())
            .collect::<Vec<_>>(),
        mark(isolations_ok),
    );

    let cloud_ok = second.cloud_served == golden.cloud;
    all_ok &= cloud_ok;
    let _ = writeln!(
        out,
        "  cloud expected {} | actual {} | {}",
        golden.cloud,
        second.cloud_served,
        mark(cloud_ok),
    );
    let _ = writeln!(out, "result: {name} {}", if all_ok { "MATCH" } else { "MISMATCH" });
    Ok(all_ok)
}

fn replay_eval(out: &mut String) -> Result<bool, Failure> {
    let scenario = builtin_fixture("eval-fig12").map_err(|e| Failure::Invalid(e.to_string()))?;
    let metrics = run(&scenario).map_err(|e| Failure::Contract(e.to_string()))?;
    let mut all_ok = metrics.len() == EVAL_FOG_TOTALS.len();

    let _ = writeln!(out, "eval-fig12 (f_cap={F_CAP}, two active fogs)");
    let _ = writeln!(out, "  second fog(expected) fog(actual) cloud absorbed mark");
    for (i, m) in metrics.iter().enumerate() {
        let expected_fog = EVAL_FOG_TOTALS.get(i).copied().unwrap_or(0);
        let expected_absorbed = EVAL_ABSORBED.get(i).copied().unwrap_or(0);
        let ok = m.fog_served_total() == expected_fog
            && m.cloud_served == 0
            && m.absorbed == expected_absorbed;
        all_ok &= ok;
        let _ = writeln!(
            out,
            "  {:<6} {:<13} {:<11} {:<5} {:<8} {}",
            m.second,
            expected_fog,
            m.fog_served_total(),
            m.cloud_served,
            m.absorbed,
            mark(ok),
        );
    }
    let isolation_ok = isolation_at(&metrics, 4, "U10", "F2");
    all_ok &= isolation_ok;
    let _ = writeln!(
        out,
        "  isolation expected (U10,F2) at second 4 | {}",
        mark(isolation_ok),
    );
    let _ = writeln!(
        out,
        "result: eval-fig12 {}",
        if all_ok { "MATCH" } else { "MISMATCH" }
    );
    Ok(all_ok)
}

fn isolation_at(metrics: &[TickMetrics], second: usize, uid: &str, fid: &str) -> bool {
    metrics.get(second).is_some_and(|m| {
        m.blacklist_events.len() == 1
            && m.blacklist_events[0].0.to_string() == uid
            && m.blacklist_events[0].1.to_string() == fid
    }) && metrics
        .iter()
        .enumerate()
        .all(|(i, m)| i == second || m.blacklist_events.is_empty())
}
