//! Append-only audit trail of session mutations.

use std::time::{SystemTime, UNIX_EPOCH};

use sdm_core::PreferenceProfile;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// Actor recorded for entries not attributable to a participant.
pub const SYSTEM_ACTOR: &str = "system";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AuditAction {
    Create,
    Submit,
    Assess,
    Revise,
    Finalize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditEntry {
    /// Strictly increasing from 0.
    pub seq: u64,
    /// Milliseconds since the Unix epoch, never decreasing along the log.
    pub timestamp_ms: u64,
    pub actor: String,
    pub action: AuditAction,
    /// Hex SHA-256 of the JSON payload the entry describes.
    pub digest: String,
    /// The submitted profile, kept on SUBMIT and REVISE entries so the log
    /// can be replayed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub profile: Option<PreferenceProfile>,
}

pub(crate) fn digest<T: Serialize + ?Sized>(payload: &T) -> String {
    let bytes = serde_json::to_vec(payload).expect("payload serializes");
    hex::encode(Sha256::digest(&bytes))
}

pub(crate) fn next_entry(
    log: &[AuditEntry],
    actor: &str,
    action: AuditAction,
    digest: String,
    profile: Option<PreferenceProfile>,
) -> AuditEntry {
    let now = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0);
    let (seq, timestamp_ms) = match log.last() {
        Some(last) => (last.seq + 1, now.max(last.timestamp_ms)),
        None => (0, now),
    };
    AuditEntry {
        seq,
        timestamp_ms,
        actor: actor.to_owned(),
        action,
        digest,
        profile,
    }
}
