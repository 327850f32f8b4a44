//! Request and response bodies.

use std::collections::BTreeMap;

use sdm_core::{
    Alternative, AlternativeId, ConsensusConfig, Criterion, CriterionId, DecisionMaker, DmId,
    PreferenceProfile, ScoreScale,
};
use sdm_session::{RoundReport, Session, SessionStatus};
use serde::{Deserialize, Serialize};

use crate::ApiError;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CreateSessionRequest {
    pub config: ConsensusConfig,
    pub criteria: Vec<Criterion>,
    pub alternatives: Vec<Alternative>,
    /// Roles in the request are ignored; the SDM is elected by reputation.
    pub participants: Vec<DecisionMaker>,
}

pub fn parse_create_request(bytes: &[u8]) -> Result<CreateSessionRequest, ApiError> {
    serde_json::from_slice(bytes).map_err(|e| ApiError::from_json(&e))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CreateSessionResponse {
    pub session_id: String,
    pub sdm_id: DmId,
    pub max_distance: f64,
    pub participants: Vec<DecisionMaker>,
    /// Bearer tokens, shown only once.
    pub tokens: BTreeMap<DmId, String>,
}

/// Body of a preference submission. `dm_id` is optional and, when present,
/// must match the path.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PreferencesBody {
    #[serde(default)]
    pub dm_id: Option<DmId>,
    pub criterion_weights: BTreeMap<CriterionId, f64>,
    pub score_matrix: BTreeMap<CriterionId, BTreeMap<AlternativeId, f64>>,
}

pub fn parse_preferences(bytes: &[u8], dm: &DmId) -> Result<PreferenceProfile, ApiError> {
    let body: PreferencesBody =
        serde_json::from_slice(bytes).map_err(|e| ApiError::from_json(&e))?;
    if let Some(claimed) = &body.dm_id {
        if claimed != dm {
            return Err(ApiError::validation(format!(
                "body names {claimed} but the path names {dm}"
            )));
        }
    }
    Ok(PreferenceProfile {
        dm_id: dm.clone(),
        criterion_weights: body.criterion_weights,
        score_matrix: body.score_matrix,
    })
}

/// Public view of a session. Raw profiles are withheld; evaluations are
/// visible through the round reports.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SessionView {
    pub session_id: String,
    pub status: SessionStatus,
    pub round: u32,
    pub config: ConsensusConfig,
    pub score_scale: ScoreScale,
    pub criteria: Vec<Criterion>,
    pub alternatives: Vec<Alternative>,
    pub participants: Vec<DecisionMaker>,
    pub sdm_id: DmId,
    pub submitted: Vec<DmId>,
    pub missing: Vec<DmId>,
    pub latest_round: Option<RoundReport>,
}

impl From<&Session> for SessionView {
    fn from(s: &Session) -> Self {
        Self {
            session_id: s.id().to_string(),
            status: s.status(),
            round: s.round(),
            config: s.config().clone(),
            score_scale: ScoreScale::default(),
            criteria: s.criteria().to_vec(),
            alternatives: s.alternatives().to_vec(),
            participants: s.participants().to_vec(),
            sdm_id: s.sdm_id().clone(),
            submitted: s.profiles().keys().cloned().collect(),
            missing: s.missing_submissions(),
            latest_round: s.latest_report().cloned(),
        }
    }
}
