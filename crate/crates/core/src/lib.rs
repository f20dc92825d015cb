//! Core state machine of a cloud-fog request handling simulator.
//!
//! The model is a fog layer of capacity-bounded servers in front of an
//! unbounded cloud sink. Each simulated second, every connected user may send
//! request batches; a per-user quota (requests/second declared at connection
//! time, expressed in megabits) marks anyone exceeding it as an attacker.
//! Detected attackers are migrated to a quarantine "attack fog" — a server
//! kept asleep and woken only long enough to take ownership of the attacker —
//! and are never served again for the rest of the run.
//!
//! Everything here is exact integer arithmetic on one mutable [`SystemState`];
//! there is no clock, no I/O, and no randomness. The per-second driving loop
//! lives in the engine crate.

mod error;
mod event;
mod fog;
mod ids;
mod isolation;
mod outcome;
mod params;
mod routing;
mod select;
mod state;
#[cfg(test)]
pub(crate) mod testutil;
mod user;

pub use error::CoreError;
pub use event::{Event, EventKind};
pub use fog::{local_assign, FogFlag, FogMode, FogServer};
pub use ids::{FogId, ParseIdError, UserId};
pub use isolation::{activate_attack_fog, attacker_isolation};
pub use outcome::{Origin, RoutingOutcome, ServeOutcome, ServerRole};
pub use params::{compute_f_cap, FogSpec, Megabits, Requests, SimParams, UserSpec};
pub use routing::{handle_request, send_request, serve};
pub use select::{FogSelector, LowestFidFirst};
pub use state::{global_assign, SystemState};
pub use user::{compute_score, UserRecord};
