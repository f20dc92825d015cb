//! Request routing and serving: dispatch to a free fog, quota enforcement at
//! the fog boundary, and capacity overflow forwarding.

use crate::error::CoreError;
use crate::event::EventKind;
use crate::fog::FogMode;
use crate::ids::{FogId, UserId};
use crate::isolation::activate_attack_fog;
use crate::outcome::{Origin, RoutingOutcome, ServeOutcome, ServerRole};
use crate::params::Requests;
use crate::select::FogSelector;
use crate::state::SystemState;
use crate::user::compute_score;

/// Entry point for every request batch. Picks a fog via the selector; a
/// user-originated batch goes through the quota check in [`handle_request`],
/// while a fog-forwarded remainder is served directly (the quota was already
/// counted on first entry). With no active free fog the cloud takes the whole
/// batch. A forwarding fog is excluded from selection: a fog never forwards
/// its own overflow back to itself.
pub fn send_request(
    state: &mut SystemState,
    selector: &dyn FogSelector,
    origin: Origin,
    uid: UserId,
    need: Requests,
) -> Result<RoutingOutcome, CoreError> {
    if need == 0 {
        return Err(CoreError::ZeroNeed { uid });
    }
    if !state.users.contains_key(&uid) {
        return Err(CoreError::UnknownUser(uid));
    }
    let exclude = match origin {
        Origin::User => None,
        Origin::Fog(fid) => Some(fid),
    };
    let Some(fid) = selector.select(state, exclude) else {
        // The cloud is the fallback of last resort and always accepts.
        state.cloud_served += need;
        state.log(EventKind::CloudForwarded {
            uid,
            requests: need,
            origin,
        });
        return Ok(RoutingOutcome::ForwardedToCloud);
    };
    match origin {
        Origin::User => handle_request(state, selector, fid, uid, need),
        Origin::Fog(_) => {
            let (outcome, downstream) = serve_inner(state, selector, fid, uid, need)?;
            finish_serve(fid, need, outcome, downstream)
        }
    }
}

/// Fog-side handling of a user batch: count it against the user's account,
/// compare the megabit score against the limit, and either isolate the sender
/// (the whole batch is refused; the fog's counters stay untouched) or serve.
/// A blacklisted sender never reaches the quota check — its attack fog host
/// absorbs the batch without consuming any serving capacity.
pub fn handle_request(
    state: &mut SystemState,
    selector: &dyn FogSelector,
    fid: FogId,
    uid: UserId,
    need: Requests,
) -> Result<RoutingOutcome, CoreError> {
    ensure_active_free(state, fid)?;
    let account = state
        .users
        .get(&uid)
        .ok_or(CoreError::UnknownUser(uid))?
        .account;
    let Some(prev) = account else {
        let host = *state.attacker_host.get(&uid).ok_or_else(|| {
            CoreError::ContractViolation(format!("blacklisted user {uid} has no attack fog host"))
        })?;
        *state.attack_absorbed.entry(uid).or_insert(0) += need;
        state.log(EventKind::Absorbed {
            uid,
            fog: host,
            requests: need,
        });
        return Ok(RoutingOutcome::AbsorbedByAttackFog(host));
    };

    let account = prev + need;
    let score = compute_score(account, state.params.req_size);
    let limit = {
        let user = state.users.get_mut(&uid).ok_or(CoreError::UnknownUser(uid))?;
        user.account = Some(account);
        user.score = score;
        user.limit
    };
    if score > limit {
        state.log(EventKind::QuotaExceeded {
            uid,
            need,
            score,
            limit,
        });
        return match activate_attack_fog(state, uid) {
            Ok(host) => Ok(RoutingOutcome::AttackerIsolated(host)),
            Err(CoreError::IsolationUnavailable(_)) => Ok(RoutingOutcome::Dropped),
            Err(other) => Err(other),
        };
    }
    let (outcome, downstream) = serve_inner(state, selector, fid, uid, need)?;
    finish_serve(fid, need, outcome, downstream)
}

/// Serve a batch on one fog. The per-user count takes the whole batch first;
/// the fog total is then recomputed and compared against capacity. An exact
/// fill drops the free bit; past capacity the surplus is backed out of the
/// user's count and forwarded onward while this fog keeps exactly its
/// capacity.
pub fn serve(
    state: &mut SystemState,
    selector: &dyn FogSelector,
    fid: FogId,
    uid: UserId,
    need: Requests,
) -> Result<ServeOutcome, CoreError> {
    serve_inner(state, selector, fid, uid, need).map(|(outcome, _)| outcome)
}

enum Fill {
    Below(Requests),
    Exact,
    Spill(Requests),
}

fn serve_inner(
    state: &mut SystemState,
    selector: &dyn FogSelector,
    fid: FogId,
    uid: UserId,
    need: Requests,
) -> Result<(ServeOutcome, Option<RoutingOutcome>), CoreError> {
    ensure_active_free(state, fid)?;
    let f_cap = state.f_cap;
    let fill = {
        let fog = state.fogs.get_mut(&fid).ok_or(CoreError::UnknownFog(fid))?;
        *fog.served.entry(uid).or_insert(0) += need;
        let total: Requests = fog.served.values().sum();
        if total < f_cap {
            fog.flag.sum = total;
            Fill::Below(total)
        } else if total == f_cap {
            fog.flag.sum = f_cap;
            fog.flag.free = false;
            Fill::Exact
        } else {
            let rem = total - f_cap;
            if rem >= need {
                return Err(CoreError::ContractViolation(format!(
                    "fog {fid} was already at or over capacity before serving"
                )));
            }
            *fog.served.get_mut(&uid).expect("entry updated above") -= rem;
            fog.flag.sum = f_cap;
            fog.flag.free = false;
            Fill::Spill(rem)
        }
    };
    match fill {
        Fill::Below(sum) => {
            state.log(EventKind::Served {
                fid,
                uid,
                requests: need,
                sum,
            });
            Ok((ServeOutcome::Completed, None))
        }
        Fill::Exact => {
            state.log(EventKind::Served {
                fid,
                uid,
                requests: need,
                sum: f_cap,
            });
            state.log(EventKind::Saturated { fid });
            Ok((ServeOutcome::Saturated, None))
        }
        Fill::Spill(rem) => {
            state.log(EventKind::Served {
                fid,
                uid,
                requests: need - rem,
                sum: f_cap,
            });
            state.log(EventKind::Saturated { fid });
            state.log(EventKind::Overflowed {
                fid,
                uid,
                remainder: rem,
            });
            let downstream = send_request(state, selector, Origin::Fog(fid), uid, rem)?;
            Ok((ServeOutcome::Overflow(rem), Some(downstream)))
        }
    }
}

/// Collapse a serve plus its forwarding chain into one routing outcome.
fn finish_serve(
    fid: FogId,
    need: Requests,
    outcome: ServeOutcome,
    downstream: Option<RoutingOutcome>,
) -> Result<RoutingOutcome, CoreError> {
    match (outcome, downstream) {
        (ServeOutcome::Overflow(rem), Some(rest)) => {
            let mut segments = vec![(ServerRole::Fog(fid), need - rem)];
            match rest {
                RoutingOutcome::ServedByFog(next) => segments.push((ServerRole::Fog(next), rem)),
                RoutingOutcome::ForwardedToCloud => segments.push((ServerRole::Cloud, rem)),
                RoutingOutcome::SplitServed(tail) => segments.extend(tail),
                other => {
                    return Err(CoreError::ContractViolation(format!(
                        "overflow forwarding produced {other:?}"
                    )))
                }
            }
            Ok(RoutingOutcome::SplitServed(segments))
        }
        (ServeOutcome::Overflow(_), None) => Err(CoreError::ContractViolation(
            "overflow outcome without a forwarding result".into(),
        )),
        _ => Ok(RoutingOutcome::ServedByFog(fid)),
    }
}

fn ensure_active_free(state: &SystemState, fid: FogId) -> Result<(), CoreError> {
    let fog = state.fogs.get(&fid).ok_or(CoreError::UnknownFog(fid))?;
    if fog.flag.mode != FogMode::Active {
        return Err(CoreError::ContractViolation(format!(
            "fog {fid} is not active"
        )));
    }
    if !fog.flag.free {
        return Err(CoreError::ContractViolation(format!(
            "fog {fid} is fully occupied"
        )));
    }
    Ok(())
}
