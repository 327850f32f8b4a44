//! Consensus-reaching sessions.
//!
//! A [`Session`] walks a group through the revision loop: the participant
//! with the highest reputation is elected SDM, everyone submits a preference
//! profile, each round assesses every other decision maker against the SDM,
//! those below the majority rule are asked to revise, and the session is
//! finalized into a weighted ranking once everyone is consonant (or the round
//! limit is hit).
//!
//! Every mutation is recorded in an append-only audit log, and sessions
//! round-trip through a versioned JSON document.

mod audit;
mod election;
mod error;
mod persistence;
mod session;

pub use audit::{AuditAction, AuditEntry, SYSTEM_ACTOR};
pub use election::elect_sdm;
pub use error::{ErrorClass, SessionError};
pub use persistence::{load_session, save_session, write_atomic, SCHEMA_VERSION};
pub use session::{RoundReport, Session, SessionStatus, SubmitOutcome};

pub type Result<T, E = SessionError> = std::result::Result<T, E>;
