//! The session state machine.
//!
//! ```text
//! create ──> COLLECTING ──compute_round──> ASSESSED ──finalize──> FINALIZED
//!                ^                             │
//!                └──────────revise─────────────┘
//! ```

use std::collections::{BTreeMap, HashSet};

use indexmap::IndexMap;
use sdm_core::{
    aggregate, assess, evaluate, AggregationResult, Alternative, ConsensusAssessment,
    ConsensusConfig, Criterion, DecisionMaker, DmId, EvaluationVector, PreferenceProfile,
    ProfileDiagnostic, Role,
};
use serde::{Deserialize, Serialize};

use crate::audit::{self, AuditAction, AuditEntry, SYSTEM_ACTOR};
use crate::election::elect_sdm;
use crate::{Result, SessionError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SessionStatus {
    Collecting,
    Assessed,
    Finalized,
}

/// Outcome of one assessment round.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoundReport {
    pub round: u32,
    /// Every participant's evaluation, the SDM included, in participant order.
    pub evaluations: IndexMap<DmId, EvaluationVector>,
    /// One entry per non-SDM participant.
    pub assessments: IndexMap<DmId, ConsensusAssessment>,
    /// Non-SDM participants below the majority rule.
    pub must_revise: Vec<DmId>,
    pub all_majority: bool,
}

/// What a submission did, echoed back to the submitter.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubmitOutcome {
    pub dm_id: DmId,
    pub action: AuditAction,
    pub evaluation: EvaluationVector,
    pub diagnostics: Vec<ProfileDiagnostic>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Session {
    pub(crate) session_id: String,
    pub(crate) config: ConsensusConfig,
    pub(crate) criteria: Vec<Criterion>,
    pub(crate) alternatives: Vec<Alternative>,
    pub(crate) participants: Vec<DecisionMaker>,
    pub(crate) sdm_id: DmId,
    pub(crate) round: u32,
    pub(crate) profiles: BTreeMap<DmId, PreferenceProfile>,
    pub(crate) history: Vec<RoundReport>,
    pub(crate) audit: Vec<AuditEntry>,
    pub(crate) status: SessionStatus,
}

#[derive(Serialize)]
struct CreatePayload<'a> {
    session_id: &'a str,
    config: &'a ConsensusConfig,
    criteria: &'a [Criterion],
    alternatives: &'a [Alternative],
    participants: &'a [DecisionMaker],
}

impl Session {
    /// Opens a session under a fresh random id.
    pub fn create(
        config: ConsensusConfig,
        criteria: Vec<Criterion>,
        alternatives: Vec<Alternative>,
        participants: Vec<DecisionMaker>,
    ) -> Result<Self> {
        let id = uuid::Uuid::new_v4().to_string();
        Self::create_with_id(id, config, criteria, alternatives, participants)
    }

    pub fn create_with_id(
        session_id: impl Into<String>,
        config: ConsensusConfig,
        criteria: Vec<Criterion>,
        alternatives: Vec<Alternative>,
        mut participants: Vec<DecisionMaker>,
    ) -> Result<Self> {
        let session_id = session_id.into();
        validate_setup(&session_id, &criteria, &alternatives, &participants)?;
        let sdm_id = elect_sdm(&mut participants)?;
        let digest = audit::digest(&CreatePayload {
            session_id: &session_id,
            config: &config,
            criteria: &criteria,
            alternatives: &alternatives,
            participants: &participants,
        });
        let create = audit::next_entry(&[], SYSTEM_ACTOR, AuditAction::Create, digest, None);
        Ok(Self {
            session_id,
            config,
            criteria,
            alternatives,
            participants,
            sdm_id,
            round: 0,
            profiles: BTreeMap::new(),
            history: Vec::new(),
            audit: vec![create],
            status: SessionStatus::Collecting,
        })
    }

    pub fn id(&self) -> &str {
        &self.session_id
    }

    pub fn config(&self) -> &ConsensusConfig {
        &self.config
    }

    pub fn criteria(&self) -> &[Criterion] {
        &self.criteria
    }

    pub fn alternatives(&self) -> &[Alternative] {
        &self.alternatives
    }

    pub fn participants(&self) -> &[DecisionMaker] {
        &self.participants
    }

    pub fn participant(&self, dm: &DmId) -> Option<&DecisionMaker> {
        self.participants.iter().find(|p| &p.id == dm)
    }

    pub fn sdm_id(&self) -> &DmId {
        &self.sdm_id
    }

    pub fn round(&self) -> u32 {
        self.round
    }

    pub fn status(&self) -> SessionStatus {
        self.status
    }

    pub fn profiles(&self) -> &BTreeMap<DmId, PreferenceProfile> {
        &self.profiles
    }

    pub fn profile(&self, dm: &DmId) -> Option<&PreferenceProfile> {
        self.profiles.get(dm)
    }

    pub fn history(&self) -> &[RoundReport] {
        &self.history
    }

    pub fn latest_report(&self) -> Option<&RoundReport> {
        self.history.last()
    }

    pub fn audit(&self) -> &[AuditEntry] {
        &self.audit
    }

    /// Participants that have not submitted a profile yet, in participant
    /// order.
    pub fn missing_submissions(&self) -> Vec<DmId> {
        self.participants
            .iter()
            .filter(|p| !self.profiles.contains_key(&p.id))
            .map(|p| p.id.clone())
            .collect()
    }

    /// Stores a participant's profile.
    ///
    /// Before the first round this is a plain submission (resubmitting
    /// overwrites). Once a round has been assessed it is treated as a
    /// revision, so the SDM is locked out from then on.
    pub fn submit_preferences(
        &mut self,
        dm: &DmId,
        profile: PreferenceProfile,
    ) -> Result<SubmitOutcome> {
        self.require_participant(dm)?;
        if self.round > 0 {
            return self.revise_preferences(dm, profile);
        }
        self.require_open()?;
        let (evaluation, diagnostics) = self.check_profile(dm, &profile)?;
        self.store(dm, profile, AuditAction::Submit);
        Ok(SubmitOutcome {
            dm_id: dm.clone(),
            action: AuditAction::Submit,
            evaluation,
            diagnostics,
        })
    }

    /// Replaces a non-SDM participant's profile after at least one round.
    ///
    /// Any non-SDM participant may refine, not only those asked to.
    pub fn revise_preferences(
        &mut self,
        dm: &DmId,
        profile: PreferenceProfile,
    ) -> Result<SubmitOutcome> {
        self.require_participant(dm)?;
        if dm == &self.sdm_id {
            return Err(SessionError::SdmImmutable(dm.clone()));
        }
        self.require_open()?;
        if self.round == 0 {
            return Err(SessionError::Premature(
                "no round has been assessed yet; submit preferences instead".into(),
            ));
        }
        if self.round >= self.config.max_rounds() {
            return Err(SessionError::MaxRounds {
                limit: self.config.max_rounds(),
            });
        }
        let (evaluation, diagnostics) = self.check_profile(dm, &profile)?;
        self.store(dm, profile, AuditAction::Revise);
        self.status = SessionStatus::Collecting;
        Ok(SubmitOutcome {
            dm_id: dm.clone(),
            action: AuditAction::Revise,
            evaluation,
            diagnostics,
        })
    }

    /// Evaluates every profile and assesses each non-SDM participant against
    /// the SDM.
    pub fn compute_round(&mut self) -> Result<RoundReport> {
        self.require_open()?;
        if self.round >= self.config.max_rounds() {
            return Err(SessionError::MaxRounds {
                limit: self.config.max_rounds(),
            });
        }
        let missing = self.missing_submissions();
        if !missing.is_empty() {
            return Err(SessionError::IncompleteRound { missing });
        }

        let mut evaluations = IndexMap::with_capacity(self.participants.len());
        for p in &self.participants {
            let evaluation = evaluate(&self.profiles[&p.id], &self.criteria, &self.alternatives)?;
            evaluations.insert(p.id.clone(), evaluation);
        }
        let sdm = &evaluations[&self.sdm_id];
        let mut assessments = IndexMap::with_capacity(evaluations.len().saturating_sub(1));
        for (dm, evaluation) in &evaluations {
            if dm != &self.sdm_id {
                assessments.insert(dm.clone(), assess(evaluation, sdm, &self.config)?);
            }
        }
        let must_revise: Vec<DmId> = assessments
            .values()
            .filter(|a| !a.majority_reached)
            .map(|a| a.dm_id.clone())
            .collect();
        let report = RoundReport {
            round: self.round + 1,
            all_majority: must_revise.is_empty(),
            evaluations,
            assessments,
            must_revise,
        };

        self.round += 1;
        self.history.push(report.clone());
        self.status = SessionStatus::Assessed;
        self.record(
            SYSTEM_ACTOR,
            AuditAction::Assess,
            audit::digest(&report),
            None,
        );
        Ok(report)
    }

    /// Aggregates the latest round into the group ranking and closes the
    /// session.
    ///
    /// Allowed once every participant is consonant, or at the round limit,
    /// in which case the result is flagged `forced`.
    pub fn finalize(&mut self) -> Result<AggregationResult> {
        self.require_open()?;
        let Some(latest) = self.history.last() else {
            return Err(SessionError::Premature(
                "no round has been computed yet".into(),
            ));
        };
        if self.status == SessionStatus::Collecting {
            return Err(SessionError::Premature(
                "revised preferences have not been assessed; compute a round first".into(),
            ));
        }
        if !latest.all_majority && self.round < self.config.max_rounds() {
            let pending: Vec<&str> = latest.must_revise.iter().map(DmId::as_str).collect();
            return Err(SessionError::Premature(format!(
                "consensus not reached; awaiting revision from {}",
                pending.join(", ")
            )));
        }
        let result = self.aggregate_latest()?;
        self.status = SessionStatus::Finalized;
        self.record(
            SYSTEM_ACTOR,
            AuditAction::Finalize,
            audit::digest(&result),
            None,
        );
        Ok(result)
    }

    /// The final aggregation, available once the session is finalized.
    pub fn result(&self) -> Option<AggregationResult> {
        if self.status != SessionStatus::Finalized {
            return None;
        }
        self.aggregate_latest().ok()
    }

    /// Rebuilds the session from its creation parameters by re-applying the
    /// audit log's submissions, rounds and finalization in order.
    pub fn replay(&self) -> Result<Session> {
        let mut fresh = Session::create_with_id(
            self.session_id.clone(),
            self.config.clone(),
            self.criteria.clone(),
            self.alternatives.clone(),
            self.participants.clone(),
        )?;
        for entry in self.audit.iter().skip(1) {
            let actor = DmId::new(entry.actor.clone());
            match entry.action {
                AuditAction::Create => {
                    return Err(SessionError::Validation(format!(
                        "audit entry {} repeats CREATE",
                        entry.seq
                    )))
                }
                AuditAction::Submit | AuditAction::Revise => {
                    let profile = entry.profile.clone().ok_or_else(|| {
                        SessionError::Validation(format!(
                            "audit entry {} has no profile",
                            entry.seq
                        ))
                    })?;
                    if audit::digest(&profile) != entry.digest {
                        return Err(SessionError::Validation(format!(
                            "audit entry {} digest does not match its profile",
                            entry.seq
                        )));
                    }
                    if entry.action == AuditAction::Submit {
                        fresh.submit_preferences(&actor, profile)?;
                    } else {
                        fresh.revise_preferences(&actor, profile)?;
                    }
                }
                AuditAction::Assess => {
                    fresh.compute_round()?;
                }
                AuditAction::Finalize => {
                    fresh.finalize()?;
                }
            }
        }
        Ok(fresh)
    }

    fn aggregate_latest(&self) -> Result<AggregationResult> {
        let latest = self
            .history
            .last()
            .ok_or_else(|| SessionError::Premature("no round has been computed yet".into()))?;
        let evaluations: Vec<EvaluationVector> = latest.evaluations.values().cloned().collect();
        let assessments: Vec<ConsensusAssessment> = latest.assessments.values().cloned().collect();
        let mut result = aggregate(&evaluations, &assessments, &self.sdm_id)?;
        result.forced = !latest.all_majority;
        Ok(result)
    }

    fn require_open(&self) -> Result<()> {
        if self.status == SessionStatus::Finalized {
            Err(SessionError::Finalized)
        } else {
            Ok(())
        }
    }

    fn require_participant(&self, dm: &DmId) -> Result<()> {
        match self.participant(dm) {
            Some(_) => Ok(()),
            None => Err(SessionError::UnknownParticipant(dm.clone())),
        }
    }

    fn check_profile(
        &self,
        dm: &DmId,
        profile: &PreferenceProfile,
    ) -> Result<(EvaluationVector, Vec<ProfileDiagnostic>)> {
        if &profile.dm_id != dm {
            return Err(SessionError::Validation(format!(
                "profile belongs to {} but was submitted for {dm}",
                profile.dm_id
            )));
        }
        let diagnostics = profile.validate(&self.criteria, &self.alternatives)?;
        for d in &diagnostics {
            log::warn!("session {}: {dm}: {d}", self.session_id);
        }
        let evaluation = evaluate(profile, &self.criteria, &self.alternatives)?;
        Ok((evaluation, diagnostics))
    }

    fn store(&mut self, dm: &DmId, profile: PreferenceProfile, action: AuditAction) {
        let digest = audit::digest(&profile);
        self.record(dm.as_str(), action, digest, Some(profile.clone()));
        self.profiles.insert(dm.clone(), profile);
    }

    fn record(
        &mut self,
        actor: &str,
        action: AuditAction,
        digest: String,
        profile: Option<PreferenceProfile>,
    ) {
        let entry = audit::next_entry(&self.audit, actor, action, digest, profile);
        self.audit.push(entry);
    }
}

pub(crate) fn validate_setup(
    session_id: &str,
    criteria: &[Criterion],
    alternatives: &[Alternative],
    participants: &[DecisionMaker],
) -> Result<()> {
    if session_id.trim().is_empty() {
        return Err(SessionError::Validation("session id is empty".into()));
    }
    if participants.len() < 2 {
        return Err(SessionError::Validation(format!(
            "a group needs at least 2 participants, got {}",
            participants.len()
        )));
    }
    if alternatives.is_empty() {
        return Err(SessionError::Validation("no alternatives".into()));
    }
    if criteria.is_empty() {
        return Err(SessionError::Validation("no criteria".into()));
    }
    unique("criterion", criteria.iter().map(|c| c.id.as_str()))?;
    unique("alternative", alternatives.iter().map(|a| a.id.as_str()))?;
    unique("participant", participants.iter().map(|p| p.id.as_str()))?;
    if participants.iter().any(|p| p.id.as_str() == SYSTEM_ACTOR) {
        return Err(SessionError::Validation(format!(
            "participant id {SYSTEM_ACTOR:?} is reserved"
        )));
    }
    Ok(())
}

fn unique<'a>(kind: &str, ids: impl Iterator<Item = &'a str>) -> Result<()> {
    let mut seen = HashSet::new();
    for id in ids {
        if id.trim().is_empty() {
            return Err(SessionError::Validation(format!("empty {kind} id")));
        }
        if !seen.insert(id) {
            return Err(SessionError::Validation(format!(
                "duplicate {kind} id {id}"
            )));
        }
    }
    Ok(())
}

pub(crate) fn sdm_count(participants: &[DecisionMaker]) -> usize {
    participants.iter().filter(|p| p.role == Role::Sdm).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use sdm_core::worked_example as wx;

    fn session() -> Session {
        Session::create_with_id(
            "t",
            wx::config(),
            wx::criteria(),
            wx::alternatives(),
            wx::participants(),
        )
        .unwrap()
    }

    fn submitted() -> Session {
        let mut s = session();
        for p in wx::initial_profiles() {
            let dm = p.dm_id.clone();
            s.submit_preferences(&dm, p).unwrap();
        }
        s
    }

    #[test]
    fn create_elects_and_audits() {
        let s = session();
        assert_eq!(s.sdm_id().as_str(), "DM3");
        assert_eq!(s.status(), SessionStatus::Collecting);
        assert_eq!(s.round(), 0);
        assert!((s.config().max_distance() - 0.1).abs() < 1e-12);
        assert_eq!(s.audit().len(), 1);
        assert_eq!(s.audit()[0].action, AuditAction::Create);
    }

    #[test]
    fn create_validation() {
        let mut alternatives = wx::alternatives();
        alternatives.push(alternatives[0].clone());
        let err = Session::create(
            wx::config(),
            wx::criteria(),
            alternatives,
            wx::participants(),
        )
        .unwrap_err();
        assert!(matches!(err, SessionError::Validation(_)));

        let one = vec![wx::participants().remove(0)];
        assert!(Session::create(wx::config(), wx::criteria(), wx::alternatives(), one).is_err());
        assert!(Session::create(wx::config(), wx::criteria(), vec![], wx::participants()).is_err());
        assert!(
            Session::create(wx::config(), vec![], wx::alternatives(), wx::participants()).is_err()
        );
    }

    #[test]
    fn submission_is_stored_verbatim() {
        let mut s = session();
        let p = wx::initial_profiles().remove(0);
        let outcome = s.submit_preferences(&"DM1".into(), p.clone()).unwrap();
        assert_eq!(outcome.action, AuditAction::Submit);
        assert_eq!(s.profile(&"DM1".into()), Some(&p));
        assert_eq!(s.audit().last().unwrap().action, AuditAction::Submit);
    }

    #[test]
    fn out_of_range_submission_rejected() {
        let mut s = session();
        let mut p = wx::initial_profiles().remove(0);
        *p.score_matrix.get_mut("c1").unwrap().get_mut("a1").unwrap() = 1.2;
        let err = s.submit_preferences(&"DM1".into(), p).unwrap_err();
        assert_eq!(err.class(), crate::ErrorClass::Validation);
        assert!(s.profiles().is_empty());
        assert_eq!(s.audit().len(), 1);
    }

    #[test]
    fn unknown_or_mismatched_submitter() {
        let mut s = session();
        let p = wx::initial_profiles().remove(0);
        assert!(matches!(
            s.submit_preferences(&"DM9".into(), p.clone()),
            Err(SessionError::UnknownParticipant(_))
        ));
        assert!(matches!(
            s.submit_preferences(&"DM2".into(), p),
            Err(SessionError::Validation(_))
        ));
    }

    #[test]
    fn incomplete_round_lists_absentees() {
        let mut s = session();
        s.submit_preferences(&"DM1".into(), wx::initial_profiles().remove(0))
            .unwrap();
        assert_eq!(
            s.compute_round().unwrap_err(),
            SessionError::IncompleteRound {
                missing: vec!["DM2".into(), "DM3".into()]
            }
        );
    }

    #[test]
    fn worked_example_walkthrough() {
        let mut s = submitted();
        let r1 = s.compute_round().unwrap();
        assert_eq!(r1.must_revise, vec![DmId::from("DM2")]);
        assert!(!r1.all_majority);
        assert_eq!(r1.assessments["DM2"].consensus_count, 1);
        assert!(matches!(s.finalize(), Err(SessionError::Premature(_))));

        s.revise_preferences(&"DM2".into(), wx::revised_profile())
            .unwrap();
        assert_eq!(s.status(), SessionStatus::Collecting);
        assert!(matches!(s.finalize(), Err(SessionError::Premature(_))));
        let r2 = s.compute_round().unwrap();
        assert!(r2.must_revise.is_empty());
        assert!(r2.all_majority);
        assert_eq!(s.round(), 2);

        let result = s.finalize().unwrap();
        assert!(!result.forced);
        let ranking: Vec<&str> = result.ranking.iter().map(|a| a.as_str()).collect();
        assert_eq!(ranking, ["a2", "a1", "a3", "a5", "a4"]);
        assert_eq!(s.status(), SessionStatus::Finalized);
        assert_eq!(s.result(), Some(result));
    }

    #[test]
    fn sdm_can_never_revise() {
        let mut s = submitted();
        let sdm = DmId::from("DM3");
        let p = wx::initial_profiles().remove(2);
        assert_eq!(
            s.revise_preferences(&sdm, p.clone()),
            Err(SessionError::SdmImmutable(sdm.clone()))
        );
        s.compute_round().unwrap();
        assert_eq!(
            s.submit_preferences(&sdm, p.clone()),
            Err(SessionError::SdmImmutable(sdm.clone()))
        );
        assert_eq!(
            s.revise_preferences(&sdm, p),
            Err(SessionError::SdmImmutable(sdm))
        );
    }

    #[test]
    fn finalized_session_is_immutable() {
        let mut s = submitted();
        s.compute_round().unwrap();
        s.revise_preferences(&"DM2".into(), wx::revised_profile())
            .unwrap();
        s.compute_round().unwrap();
        s.finalize().unwrap();
        let frozen = s.clone();
        assert_eq!(s.finalize(), Err(SessionError::Finalized));
        assert_eq!(s.compute_round(), Err(SessionError::Finalized));
        assert_eq!(
            s.submit_preferences(&"DM1".into(), wx::initial_profiles().remove(0)),
            Err(SessionError::Finalized)
        );
        assert_eq!(s, frozen);
    }

    #[test]
    fn premature_finalize() {
        let mut s = submitted();
        assert!(matches!(s.finalize(), Err(SessionError::Premature(_))));
    }

    #[test]
    fn round_limit_forces_finalize() {
        let config = wx::config().with_max_rounds(2).unwrap();
        let mut s = Session::create_with_id(
            "t",
            config,
            wx::criteria(),
            wx::alternatives(),
            wx::participants(),
        )
        .unwrap();
        for p in wx::initial_profiles() {
            let dm = p.dm_id.clone();
            s.submit_preferences(&dm, p).unwrap();
        }
        s.compute_round().unwrap();
        // DM2 stubbornly resubmits the same profile.
        s.revise_preferences(&"DM2".into(), wx::initial_profiles().remove(1))
            .unwrap();
        s.compute_round().unwrap();
        assert_eq!(
            s.revise_preferences(&"DM2".into(), wx::revised_profile()),
            Err(SessionError::MaxRounds { limit: 2 })
        );
        assert_eq!(s.compute_round(), Err(SessionError::MaxRounds { limit: 2 }));
        let result = s.finalize().unwrap();
        assert!(result.forced);
    }

    #[test]
    fn copying_the_sdm_guarantees_majority() {
        let mut s = submitted();
        s.compute_round().unwrap();
        let mut copy = wx::initial_profiles().remove(2);
        copy.dm_id = "DM2".into();
        s.revise_preferences(&"DM2".into(), copy).unwrap();
        let report = s.compute_round().unwrap();
        let dm2 = &report.assessments["DM2"];
        assert_eq!(dm2.consensus_count, 5);
        assert!(dm2.alternatives.iter().all(|a| a.weight == 1.0));
    }

    #[test]
    fn replay_reproduces_result() {
        let mut s = submitted();
        s.compute_round().unwrap();
        s.revise_preferences(&"DM2".into(), wx::revised_profile())
            .unwrap();
        s.compute_round().unwrap();
        s.finalize().unwrap();
        let replayed = s.replay().unwrap();
        assert_eq!(replayed.result(), s.result());
        assert_eq!(replayed.history(), s.history());
    }

    #[test]
    fn tampered_audit_fails_replay() {
        let mut s = submitted();
        s.audit[1]
            .profile
            .as_mut()
            .unwrap()
            .criterion_weights
            .insert("c1".into(), 0.0);
        assert!(matches!(s.replay(), Err(SessionError::Validation(_))));
    }
}
