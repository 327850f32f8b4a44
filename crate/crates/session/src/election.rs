use sdm_core::{DecisionMaker, DmId, Role};

use crate::{Result, SessionError};

/// Marks the participant with the highest reputation as SDM and returns its
/// id. Ties go to the lexicographically smallest id.
pub fn elect_sdm(participants: &mut [DecisionMaker]) -> Result<DmId> {
    if let Some(bad) = participants
        .iter()
        .find(|p| !(p.reputation >= 0.0 && p.reputation.is_finite()))
    {
        return Err(SessionError::Validation(format!(
            "participant {} has invalid reputation {}",
            bad.id, bad.reputation
        )));
    }
    let winner = participants
        .iter()
        .reduce(|best, p| {
            if p.reputation > best.reputation || (p.reputation == best.reputation && p.id < best.id)
            {
                p
            } else {
                best
            }
        })
        .map(|p| p.id.clone())
        .ok_or_else(|| {
            SessionError::Validation("cannot elect an SDM from no participants".into())
        })?;
    for p in participants.iter_mut() {
        p.role = if p.id == winner { Role::Sdm } else { Role::Dm };
    }
    Ok(winner)
}
