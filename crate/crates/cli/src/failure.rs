//! Failures and the exit codes they map to.

use std::fmt;
use std::path::Path;

#[derive(Debug)]
pub enum Failure {
    /// Computation finished but at least one golden check disagreed.
    Check(usize),
    Io(anyhow::Error),
    Invalid(anyhow::Error),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Check(_) => 1,
            Self::Io(_) => 2,
            Self::Invalid(_) => 3,
        }
    }

    pub fn io(path: &Path, e: impl Into<anyhow::Error>) -> Self {
        Self::Io(e.into().context(path.display().to_string()))
    }

    pub fn invalid(e: impl Into<anyhow::Error>) -> Self {
        Self::Invalid(e.into())
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Check(n) => write!(f, "{n} check(s) failed"),
            Self::Io(e) => write!(f, "i/o error: {e:#}"),
            Self::Invalid(e) => write!(f, "invalid input: {e:#}"),
        }
    }
}

impl From<sdm_session::SessionError> for Failure {
    fn from(e: sdm_session::SessionError) -> Self {
        Self::invalid(e)
    }
}

impl From<sdm_core::CoreError> for Failure {
    fn from(e: sdm_core::CoreError) -> Self {
        Self::invalid(e)
    }
}

pub type Outcome<T = ()> = Result<T, Failure>;
