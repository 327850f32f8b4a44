//! Versioned JSON session documents.
//!
//! Floats are written in shortest round-trip form and parsed back exactly,
//! so `load_session(&save_session(s)) == s`.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use sdm_core::{Alternative, ConsensusConfig, Criterion, DecisionMaker, DmId, PreferenceProfile};
use serde::{Deserialize, Serialize};

use crate::audit::{AuditAction, AuditEntry};
use crate::session::{sdm_count, validate_setup, RoundReport, Session, SessionStatus};
use crate::{Result, SessionError};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    version: u32,
    session_id: String,
    config: ConsensusConfig,
    criteria: Vec<Criterion>,
    alternatives: Vec<Alternative>,
    participants: Vec<DecisionMaker>,
    sdm_id: DmId,
    round: u32,
    profiles: BTreeMap<DmId, PreferenceProfile>,
    history: Vec<RoundReport>,
    audit: Vec<AuditEntry>,
    status: SessionStatus,
}

#[derive(Deserialize)]
struct VersionProbe {
    version: Option<serde_json::Value>,
}

pub fn save_session(session: &Session) -> String {
    let doc = Document {
        version: SCHEMA_VERSION,
        session_id: session.session_id.clone(),
        config: session.config.clone(),
        criteria: session.criteria.clone(),
        alternatives: session.alternatives.clone(),
        participants: session.participants.clone(),
        sdm_id: session.sdm_id.clone(),
        round: session.round,
        profiles: session.profiles.clone(),
        history: session.history.clone(),
        audit: session.audit.clone(),
        status: session.status,
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("session serializes");
    text.push('\n');
    text
}

pub fn load_session(document: &str) -> Result<Session> {
    let probe: VersionProbe = serde_json::from_str(document).map_err(parse_error)?;
    match probe.version {
        None => {
            return Err(SessionError::Validation(
                "session document has no version field".into(),
            ))
        }
        Some(v) => match v.as_u64() {
            Some(found) if found == u64::from(SCHEMA_VERSION) => {}
            Some(found) => {
                return Err(SessionError::UnsupportedVersion {
                    found,
                    supported: SCHEMA_VERSION,
                })
            }
            None => {
                return Err(SessionError::Validation(format!(
                    "version {v} is not an integer"
                )))
            }
        },
    }
    let doc: Document = serde_json::from_str(document).map_err(parse_error)?;
    let session = Session {
        session_id: doc.session_id,
        config: doc.config,
        criteria: doc.criteria,
        alternatives: doc.alternatives,
        participants: doc.participants,
        sdm_id: doc.sdm_id,
        round: doc.round,
        profiles: doc.profiles,
        history: doc.history,
        audit: doc.audit,
        status: doc.status,
    };
    check_invariants(&session)?;
    Ok(session)
}

/// Writes `bytes` to a temporary sibling of `path` and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let name = path
        .file_name()
        .and_then(|n| n.to_str())
        .unwrap_or("session");
    let tmp = dir.join(format!(".{name}.{}.tmp", uuid::Uuid::new_v4().simple()));
    let result = (|| {
        let mut file = std::fs::File::create(&tmp)?;
        file.write_all(bytes)?;
        file.sync_all()?;
        std::fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = std::fs::remove_file(&tmp);
    }
    result
}

fn parse_error(e: serde_json::Error) -> SessionError {
    SessionError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

fn invalid(msg: impl Into<String>) -> SessionError {
    SessionError::Validation(msg.into())
}

fn check_invariants(s: &Session) -> Result<()> {
    validate_setup(&s.session_id, &s.criteria, &s.alternatives, &s.participants)?;
    if sdm_count(&s.participants) != 1 {
        return Err(invalid("exactly one participant must hold the SDM role"));
    }
    match s.participant(&s.sdm_id) {
        Some(p) if p.role == sdm_core::Role::Sdm => {}
        _ => {
            return Err(invalid(format!(
                "sdm_id {} is not the SDM participant",
                s.sdm_id
            )))
        }
    }
    for (dm, profile) in &s.profiles {
        if s.participant(dm).is_none() {
            return Err(invalid(format!("profile for unknown participant {dm}")));
        }
        if &profile.dm_id != dm {
            return Err(invalid(format!(
                "profile under {dm} belongs to {}",
                profile.dm_id
            )));
        }
        profile.validate(&s.criteria, &s.alternatives)?;
    }

    if s.round as usize != s.history.len() {
        return Err(invalid(format!(
            "round {} but {} reports",
            s.round,
            s.history.len()
        )));
    }
    if s.round > s.config.max_rounds() {
        return Err(invalid("round exceeds max_rounds"));
    }
    for (i, report) in s.history.iter().enumerate() {
        if report.round as usize != i + 1 {
            return Err(invalid(format!("report {i} is numbered {}", report.round)));
        }
        if report.must_revise.contains(&s.sdm_id) {
            return Err(invalid(format!(
                "round {} asks the SDM to revise",
                report.round
            )));
        }
        if report.all_majority != report.must_revise.is_empty() {
            return Err(invalid(format!(
                "round {} has inconsistent all_majority",
                report.round
            )));
        }
        let expected_revise: Vec<&DmId> = report
            .assessments
            .values()
            .filter(|a| !a.majority_reached)
            .map(|a| &a.dm_id)
            .collect();
        if expected_revise != report.must_revise.iter().collect::<Vec<_>>() {
            return Err(invalid(format!(
                "round {} must_revise disagrees with assessments",
                report.round
            )));
        }
    }
    match (s.status, s.history.last()) {
        (SessionStatus::Collecting, _) => {}
        (_, None) => return Err(invalid(format!("status {:?} without any round", s.status))),
        (SessionStatus::Finalized, Some(latest))
            if !latest.all_majority && s.round < s.config.max_rounds() =>
        {
            return Err(invalid(
                "finalized without consensus before the round limit",
            ));
        }
        _ => {}
    }
    if s.status != SessionStatus::Collecting && s.profiles.len() != s.participants.len() {
        return Err(invalid("assessed session is missing profiles"));
    }

    match s.audit.first() {
        Some(first) if first.action == AuditAction::Create => {}
        _ => return Err(invalid("audit log must start with CREATE")),
    }
    for pair in s.audit.windows(2) {
        if pair[1].seq <= pair[0].seq || pair[1].timestamp_ms < pair[0].timestamp_ms {
            return Err(invalid(format!(
                "audit entry {} is out of order",
                pair[1].seq
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use sdm_core::worked_example as wx;

    fn worked_session() -> Session {
        let mut s = Session::create_with_id(
            "doc",
            wx::config(),
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
        s.revise_preferences(&"DM2".into(), wx::revised_profile())
            .unwrap();
        s.compute_round().unwrap();
        s
    }

    #[test]
    fn round_trip_keeps_reports() {
        let s = worked_session();
        let text = save_session(&s);
        let loaded = load_session(&text).unwrap();
        assert_eq!(loaded, s);
        assert_eq!(loaded.history(), s.history());
        assert_eq!(save_session(&loaded), text);
    }

    #[test]
    fn truncated_document_reports_location() {
        let text = save_session(&worked_session());
        let cut = &text[..text.len() / 2];
        match load_session(cut) {
            Err(SessionError::Parse { line, .. }) => assert!(line > 1),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_version_rejected() {
        let text = save_session(&worked_session()).replacen("\"version\": 1", "\"version\": 7", 1);
        assert_eq!(
            load_session(&text).unwrap_err(),
            SessionError::UnsupportedVersion {
                found: 7,
                supported: SCHEMA_VERSION
            }
        );
        assert!(matches!(
            load_session("{}"),
            Err(SessionError::Validation(_))
        ));
        assert!(matches!(
            load_session("[1,2]"),
            Err(SessionError::Parse { .. })
        ));
    }

    #[test]
    fn inconsistent_round_counter_rejected() {
        let text = save_session(&worked_session()).replacen("\"round\": 2,", "\"round\": 3,", 1);
        assert!(matches!(
            load_session(&text),
            Err(SessionError::Validation(_))
        ));
    }

    #[test]
    fn atomic_write_replaces_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.json");
        write_atomic(&path, b"one").unwrap();
        write_atomic(&path, b"two").unwrap();
        assert_eq!(std::fs::read(&path).unwrap(), b"two");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 1);
    }
}
