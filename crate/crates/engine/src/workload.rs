//! Reproducible workload generation: a demand model applied to every user in
//! the roster each second, plus explicit attack injections, all derived from
//! a seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fogsim_core::{FogId, FogMode, FogSpec, Requests, SimParams, UserId, UserSpec};

use crate::error::EngineError;
use crate::scenario::{Scenario, Tick};

/// Per-user per-second demand model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DemandModel {
    /// Every user sends exactly this many requests each second.
    Constant(Requests),
    /// Every user's per-second need is drawn uniformly from `lo..=hi`.
    Uniform { lo: Requests, hi: Requests },
}

/// One deliberate quota breach: at `second`, `uid`'s scheduled entry is
/// replaced by a batch of `need` requests. `need` must exceed the user's
/// declared ceiling, otherwise it would not be an attack at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AttackInjection {
    pub uid: UserId,
    pub second: u64,
    pub need: Requests,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkloadSpec {
    pub params: SimParams,
    pub demand: DemandModel,
    pub duration: u64,
    pub attacks: Vec<AttackInjection>,
}

impl WorkloadSpec {
    pub fn validate(&self) -> Result<(), EngineError> {
        self.params.validate()?;
        if self.duration == 0 {
            return Err(EngineError::InvalidWorkload(
                "duration must be at least one second".into(),
            ));
        }
        match self.demand {
            DemandModel::Constant(n) if n == 0 => {
                return Err(EngineError::InvalidWorkload(
                    "constant demand must be at least 1".into(),
                ))
            }
            DemandModel::Uniform { lo, hi } if lo == 0 || lo > hi => {
                return Err(EngineError::InvalidWorkload(format!(
                    "uniform demand range {lo}..={hi} is invalid"
                )))
            }
            _ => {}
        }
        for attack in &self.attacks {
            let Some(max_rps) = self.params.max_rps_of(attack.uid) else {
                return Err(EngineError::InvalidWorkload(format!(
                    "attack injection references unknown user {}",
                    attack.uid
                )));
            };
            if attack.second >= self.duration {
                return Err(EngineError::InvalidWorkload(format!(
                    "attack at second {} is outside the {}-second run",
                    attack.second, self.duration
                )));
            }
            if attack.need <= max_rps {
                return Err(EngineError::InvalidWorkload(format!(
                    "attack need {} for {} does not exceed its ceiling of {} requests/second",
                    attack.need, attack.uid, max_rps
                )));
            }
        }
        Ok(())
    }
}

/// Build the schedule: one entry per user per second in roster order, then
/// the attack injections spliced in verbatim. Reproducible from the seed.
pub fn generate_workload(spec: &WorkloadSpec, seed: u64) -> Result<Scenario, EngineError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut schedule: Vec<Tick> = (0..spec.duration)
        .map(|second| Tick {
            second,
            demands: spec
                .params
                .users
                .iter()
                .map(|user| {
                    let need = match spec.demand {
                        DemandModel::Constant(n) => n,
                        DemandModel::Uniform { lo, hi } => rng.random_range(lo..=hi),
                    };
                    (user.uid, need)
                })
                .collect(),
        })
        .collect();
    for attack in &spec.attacks {
        let entry = &mut schedule[attack.second as usize];
        let slot = entry
            .demands
            .iter_mut()
            .find(|(uid, _)| *uid == attack.uid)
            .expect("validated against the roster");
        slot.1 = attack.need;
    }
    Ok(Scenario {
        params: spec.params.clone(),
        schedule,
        seed,
    })
}

/// Size bounds for randomized scenarios used in cross-checking.
#[derive(Debug, Clone, Copy)]
pub struct RandomScenarioBounds {
    pub max_fogs: u32,
    pub max_users: u32,
    pub max_demands_per_second: usize,
    pub max_seconds: u64,
}

impl Default for RandomScenarioBounds {
    fn default() -> Self {
        Self {
            max_fogs: 3,
            max_users: 6,
            max_demands_per_second: 8,
            max_seconds: 5,
        }
    }
}

/// A small random scenario, deterministic in the seed. Capacities are kept
/// tight so overflow forwarding, cloud fallback and quota breaches all happen
/// often; roughly a fifth of the batches are oversized.
pub fn random_scenario(bounds: &RandomScenarioBounds, seed: u64) -> Scenario {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let req_size = rng.random_range(1u64..=8);
    let f_cap = rng.random_range(3u64..=40);
    let thresh = f_cap * req_size;

    let n_fogs = rng.random_range(2..=bounds.max_fogs.max(2));
    let n_sleeping = rng.random_range(1..n_fogs);
    let mut modes: Vec<FogMode> = (0..n_fogs)
        .map(|i| {
            if i < n_sleeping {
                FogMode::Sleep
            } else {
                FogMode::Active
            }
        })
        .collect();
    // Shuffle mode assignment so attack fogs sit at arbitrary ids.
    for i in (1..modes.len()).rev() {
        let j = rng.random_range(0..=i);
        modes.swap(i, j);
    }
    let fogs = modes
        .into_iter()
        .enumerate()
        .map(|(i, mode)| FogSpec {
            fid: FogId(i as u32 + 1),
            mode,
        })
        .collect();

    let n_users = rng.random_range(1..=bounds.max_users.max(1));
    let users: Vec<UserSpec> = (1..=n_users)
        .map(|n| UserSpec {
            uid: UserId(n),
            max_rps: rng.random_range(1..=f_cap + 10),
        })
        .collect();

    let n_seconds = rng.random_range(1..=bounds.max_seconds.max(1));
    let schedule = (0..n_seconds)
        .map(|second| {
            let n_demands = rng.random_range(0..=bounds.max_demands_per_second);
            let demands = (0..n_demands)
                .map(|_| {
                    let user = &users[rng.random_range(0..users.len())];
                    let need = if rng.random_range(0..5) == 0 {
                        rng.random_range(user.max_rps + 1..=user.max_rps * 2 + 1)
                    } else {
                        rng.random_range(1..=user.max_rps)
                    };
                    (user.uid, need)
                })
                .collect();
            Tick { second, demands }
        })
        .collect();

    Scenario {
        params: SimParams {
            thresh,
            req_size,
            users,
            fogs,
        },
        schedule,
        seed,
    }
}
