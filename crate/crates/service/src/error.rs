use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use sdm_session::{ErrorClass, SessionError};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ApiErrorCode {
    NotFound,
    Validation,
    Forbidden,
    Conflict,
    Premature,
    /// Storage failures; not a protocol outcome.
    Internal,
}

impl ApiErrorCode {
    pub fn status(self) -> StatusCode {
        match self {
            Self::NotFound => StatusCode::NOT_FOUND,
            Self::Validation => StatusCode::UNPROCESSABLE_ENTITY,
            Self::Forbidden => StatusCode::FORBIDDEN,
            Self::Conflict | Self::Premature => StatusCode::CONFLICT,
            Self::Internal => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }
}

impl From<ErrorClass> for ApiErrorCode {
    fn from(class: ErrorClass) -> Self {
        match class {
            ErrorClass::NotFound => Self::NotFound,
            ErrorClass::Validation => Self::Validation,
            ErrorClass::Forbidden => Self::Forbidden,
            ErrorClass::Conflict => Self::Conflict,
            ErrorClass::Premature => Self::Premature,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ApiError {
    pub code: ApiErrorCode,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl ApiError {
    pub fn new(code: ApiErrorCode, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn not_found(what: impl Into<String>) -> Self {
        Self::new(ApiErrorCode::NotFound, what)
    }

    pub fn forbidden(why: impl Into<String>) -> Self {
        Self::new(ApiErrorCode::Forbidden, why)
    }

    pub fn validation(why: impl Into<String>) -> Self {
        Self::new(ApiErrorCode::Validation, why)
    }

    pub fn internal(why: impl Into<String>) -> Self {
        Self::new(ApiErrorCode::Internal, why)
    }

    pub(crate) fn from_json(e: &serde_json::Error) -> Self {
        Self::validation(e.to_string()).with_detail(format!(
            "line {}, column {}",
            e.line(),
            e.column()
        ))
    }
}

impl From<SessionError> for ApiError {
    fn from(e: SessionError) -> Self {
        let detail = match &e {
            SessionError::IncompleteRound { missing } => Some(
                missing
                    .iter()
                    .map(|d| d.as_str())
                    .collect::<Vec<_>>()
                    .join(","),
            ),
            SessionError::UnknownParticipant(dm) | SessionError::SdmImmutable(dm) => {
                Some(dm.to_string())
            }
            SessionError::Parse { line, column, .. } => {
                Some(format!("line {line}, column {column}"))
            }
            _ => None,
        };
        ApiError {
            code: e.class().into(),
            message: e.to_string(),
            detail,
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        crate::handlers::json(self.code.status(), &self)
    }
}
