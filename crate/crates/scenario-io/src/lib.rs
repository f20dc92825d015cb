//! Scenario files, built-in fixtures and metrics export.
//!
//! The scenario format is a plain-text, line-oriented document so fixtures
//! diff cleanly and can be edited by hand. Every file starts with a
//! `format=1` declaration, then a `[params]` section (rates, user and fog
//! rosters) and exactly one of `[schedule]` (explicit `second uid need`
//! lines) or `[workload]` (a generator spec expanded at parse time). Exported
//! metrics carry the same `format=1` lead line.

mod export;
mod fixtures;
mod parse;
mod render;

pub use export::{export_metrics, ExportFormat};
pub use fixtures::{builtin_fixture, fixture_names, fixture_text, UnknownFixture};
pub use parse::{parse_scenario, parse_scenario_seeded, ParseError};
pub use render::render_scenario;
