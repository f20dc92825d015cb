//! Simulation engine: drives the per-second loop over a scenario, applies the
//! demand schedule through the core state machine, and collects per-second
//! metrics. Also generates reproducible workloads from a seed.

mod error;
mod metrics;
mod scenario;
mod sim;
mod workload;

pub use error::EngineError;
pub use metrics::TickMetrics;
pub use scenario::{Scenario, Tick};
pub use sim::{run, select_fog, tick};
pub use workload::{
    generate_workload, random_scenario, AttackInjection, DemandModel, RandomScenarioBounds,
    WorkloadSpec,
};
