//! Attacker isolation: wake a sleeping fog, migrate the attacker onto it,
//! and put it back to sleep. The attacker is blacklisted for the rest of the
//! run and its traffic never again consumes serving capacity.

use crate::error::CoreError;
use crate::event::EventKind;
use crate::fog::FogMode;
use crate::ids::{FogId, UserId};
use crate::state::SystemState;

/// Wake the lowest-id sleeping fog and hand the attacker to it. With no
/// sleeping fog in the roster the breach is logged as unpunishable and the
/// caller drops the batch; the run keeps going.
pub fn activate_attack_fog(state: &mut SystemState, uid: UserId) -> Result<FogId, CoreError> {
    let sleeping = state
        .fogs
        .values()
        .find(|fog| fog.flag.mode == FogMode::Sleep)
        .map(|fog| fog.fid);
    let Some(fid) = sleeping else {
        state.log(EventKind::IsolationUnavailable { uid });
        return Err(CoreError::IsolationUnavailable(uid));
    };
    state
        .fogs
        .get_mut(&fid)
        .expect("fid taken from the fog map")
        .flag
        .mode = FogMode::Active;
    state.log(EventKind::AttackFogActivated { fid });
    attacker_isolation(state, uid, fid)?;
    Ok(fid)
}

/// Blacklist the user, void its account, bind it to the (just activated)
/// attack fog, and put that fog back to sleep. The attack fog's sum and
/// per-user counts stay untouched: quarantined traffic is not served
/// capacity. Isolating an already-blacklisted user is a logged no-op.
pub fn attacker_isolation(
    state: &mut SystemState,
    uid: UserId,
    fid: FogId,
) -> Result<(), CoreError> {
    {
        let fog = state.fogs.get(&fid).ok_or(CoreError::UnknownFog(fid))?;
        if fog.flag.mode != FogMode::Active {
            return Err(CoreError::ContractViolation(format!(
                "isolation target {fid} must be active"
            )));
        }
    }
    if state.blacklist.contains(&uid) {
        state.log(EventKind::DuplicateIsolation { uid });
        return Ok(());
    }
    let user = state.users.get_mut(&uid).ok_or(CoreError::UnknownUser(uid))?;
    user.account = None;
    user.score = 0;
    state.blacklist.insert(uid);
    state.attacker_host.insert(uid, fid);
    state
        .fogs
        .get_mut(&fid)
        .expect("checked above")
        .flag
        .mode = FogMode::Sleep;
    state.log(EventKind::Blacklisted { uid, fog: fid });
    state.log(EventKind::AttackFogSlept { fid });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::event::EventKind;
    use crate::testutil::three_fog_state;

    fn mode_changes_of(state: &SystemState, fid: FogId) -> Vec<u8> {
        state
            .event_log
            .iter()
            .filter_map(|e| match e.kind {
                EventKind::AttackFogActivated { fid: f } if f == fid => Some(1),
                EventKind::AttackFogSlept { fid: f } if f == fid => Some(0),
                _ => None,
            })
            .collect()
    }

    #[test]
    fn activation_toggles_the_sleeping_fog_and_isolates() {
        let mut state = three_fog_state();
        let fid = activate_attack_fog(&mut state, UserId(2)).unwrap();
        assert_eq!(fid, FogId(2));
        assert_eq!(state.fogs[&FogId(2)].flag.mode, FogMode::Sleep);
        assert_eq!(mode_changes_of(&state, FogId(2)), vec![1, 0]);
        assert!(state.blacklist.contains(&UserId(2)));
        assert_eq!(state.attacker_host[&UserId(2)], FogId(2));
        // Quarantined traffic never counts as served capacity.
        assert_eq!(state.fogs[&FogId(2)].flag.sum, 0);
    }

    #[test]
    fn two_attackers_reuse_the_same_attack_fog() {
        let mut state = three_fog_state();
        activate_attack_fog(&mut state, UserId(2)).unwrap();
        activate_attack_fog(&mut state, UserId(5)).unwrap();
        assert_eq!(mode_changes_of(&state, FogId(2)), vec![1, 0, 1, 0]);
        assert_eq!(state.attacker_host[&UserId(2)], FogId(2));
        assert_eq!(state.attacker_host[&UserId(5)], FogId(2));
        assert_eq!(
            state.blacklist.iter().copied().collect::<Vec<_>>(),
            vec![UserId(2), UserId(5)]
        );
    }

    #[test]
    fn no_sleeping_fog_means_isolation_unavailable() {
        // Deliberately under-provisioned: drop the only attack fog after
        // construction. The breach must be logged and the run must go on.
        let mut state = three_fog_state();
        state.fogs.remove(&FogId(2));
        let err = activate_attack_fog(&mut state, UserId(1)).unwrap_err();
        assert_eq!(err, CoreError::IsolationUnavailable(UserId(1)));
        assert!(matches!(
            state.event_log.last().unwrap().kind,
            EventKind::IsolationUnavailable { .. }
        ));
        assert!(state.blacklist.is_empty());
    }

    #[test]
    fn repeat_isolation_is_a_logged_no_op() {
        let mut state = three_fog_state();
        activate_attack_fog(&mut state, UserId(2)).unwrap();
        let before_log = state.event_log.len();
        let before = state.clone();

        state.fogs.get_mut(&FogId(2)).unwrap().flag.mode = FogMode::Active;
        attacker_isolation(&mut state, UserId(2), FogId(2)).unwrap();
        assert_eq!(state.event_log.len(), before_log + 1);
        assert!(matches!(
            state.event_log.last().unwrap().kind,
            EventKind::DuplicateIsolation { uid: UserId(2) }
        ));
        assert_eq!(state.blacklist, before.blacklist);
        assert_eq!(state.attacker_host, before.attacker_host);
    }
}
