use sdm_core::{CoreError, DmId};

/// Coarse classification used by front ends to pick exit codes and HTTP
/// statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorClass {
    NotFound,
    Validation,
    Forbidden,
    Conflict,
    Premature,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SessionError {
    #[error(transparent)]
    Core(#[from] CoreError),

    #[error("invalid session: {0}")]
    Validation(String),

    #[error("unknown participant {0}")]
    UnknownParticipant(DmId),

    #[error("session is finalized and can no longer change")]
    Finalized,

    #[error("{0} is the SDM and cannot change their preferences")]
    SdmImmutable(DmId),

    #[error("round limit of {limit} reached")]
    MaxRounds { limit: u32 },

    #[error("round cannot be computed: no preferences from {}", join(.missing))]
    IncompleteRound { missing: Vec<DmId> },

    #[error("{0}")]
    Premature(String),

    #[error("malformed session document at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unsupported session document version {found} (expected {supported})")]
    UnsupportedVersion { found: u64, supported: u32 },
}

impl SessionError {
    pub fn class(&self) -> ErrorClass {
        match self {
            Self::Core(CoreError::IncompleteRound { .. }) => ErrorClass::Conflict,
            Self::Core(_)
            | Self::Validation(_)
            | Self::Parse { .. }
            | Self::UnsupportedVersion { .. } => ErrorClass::Validation,
            Self::UnknownParticipant(_) => ErrorClass::NotFound,
            Self::SdmImmutable(_) => ErrorClass::Forbidden,
            Self::Finalized | Self::MaxRounds { .. } | Self::IncompleteRound { .. } => {
                ErrorClass::Conflict
            }
            Self::Premature(_) => ErrorClass::Premature,
        }
    }
}

fn join(ids: &[DmId]) -> String {
    ids.iter().map(DmId::as_str).collect::<Vec<_>>().join(", ")
}
