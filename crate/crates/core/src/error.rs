use crate::model::{AlternativeId, DmId};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CoreError {
    #[error("incomplete profile for {dm}: missing {missing}")]
    IncompleteProfile { dm: DmId, missing: String },

    #[error("profile for {dm} references unknown {key}")]
    UnknownKey { dm: DmId, key: String },

    #[error("value {value} for {key} in profile of {dm} is outside [0, 1]")]
    OutOfRange { dm: DmId, key: String, value: f64 },

    #[error("unknown alternative {0}")]
    UnknownAlternative(AlternativeId),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("duplicate id {0}")]
    DuplicateId(String),

    #[error("incomplete round: no assessment for {}", join(.missing))]
    IncompleteRound { missing: Vec<DmId> },
}

fn join(ids: &[DmId]) -> String {
    ids.iter().map(DmId::as_str).collect::<Vec<_>>().join(", ")
}
