use std::fs;

use fogsim_engine::Scenario;
use fogsim_scenario_io::{fixture_names, fixture_text, parse_scenario_seeded};

use crate::Failure;

/// Resolve a scenario argument: built-in fixture names win, anything else is
/// read as a file path (use `./case-a` to force a file with a fixture name).
pub fn load_scenario(arg: &str, seed_override: Option<u64>) -> Result<Scenario, Failure> {
    let text = if fixture_names().contains(&arg) {
        fixture_text(arg)
            .expect("name checked against the fixture list")
            .to_string()
    } else {
        fs::read_to_string(arg).map_err(|e| Failure::Invalid(format!("{arg}: {e}")))?
    };
    parse_scenario_seeded(&text, seed_override)
        .map_err(|e| Failure::Invalid(format!("{arg}: {e}")))
}
