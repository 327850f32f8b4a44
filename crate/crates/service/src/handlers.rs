use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, State};
use axum::http::header::{AUTHORIZATION, CONTENT_TYPE};
use axum::http::{HeaderMap, StatusCode};
use axum::response::{IntoResponse, Response};
use sdm_core::DmId;
use sdm_session::{Session, SessionStatus};
use serde::Serialize;

use crate::dto::{parse_create_request, parse_preferences, CreateSessionResponse, SessionView};
use crate::{ApiError, SessionStore, JSON_CONTENT_TYPE};

type Store = State<Arc<SessionStore>>;

pub(crate) fn json<T: Serialize>(status: StatusCode, body: &T) -> Response {
    match serde_json::to_vec(body) {
        Ok(bytes) => (status, [(CONTENT_TYPE, JSON_CONTENT_TYPE)], bytes).into_response(),
        Err(e) => {
            log::error!("response serialization failed: {e}");
            StatusCode::INTERNAL_SERVER_ERROR.into_response()
        }
    }
}

fn ok<T: Serialize>(body: &T) -> Response {
    json(StatusCode::OK, body)
}

fn bearer(headers: &HeaderMap) -> Option<&str> {
    headers
        .get(AUTHORIZATION)?
        .to_str()
        .ok()?
        .strip_prefix("Bearer ")
        .map(str::trim)
}

/// Checks that the request carries the token of `expected`.
fn authorize(
    store: &SessionStore,
    id: &str,
    headers: &HeaderMap,
    expected: &DmId,
) -> Result<(), ApiError> {
    let token = bearer(headers).ok_or_else(|| ApiError::forbidden("missing bearer token"))?;
    match store.authenticate(id, token)? {
        Some(dm) if &dm == expected => Ok(()),
        Some(dm) => Err(ApiError::forbidden(format!(
            "token belongs to {dm}, not {expected}"
        ))),
        None => Err(ApiError::forbidden("unknown bearer token")),
    }
}

pub(crate) async fn create_session(State(store): Store, body: Bytes) -> Result<Response, ApiError> {
    let req = parse_create_request(&body)?;
    let session = Session::create(req.config, req.criteria, req.alternatives, req.participants)?;
    let _guard = store.lock(session.id()).await;
    let tokens = store.issue_tokens(&session)?;
    store.save(&session)?;
    log::info!(
        "created session {} (SDM {})",
        session.id(),
        session.sdm_id()
    );
    let response = CreateSessionResponse {
        session_id: session.id().to_string(),
        sdm_id: session.sdm_id().clone(),
        max_distance: session.config().max_distance(),
        participants: session.participants().to_vec(),
        tokens,
    };
    Ok(json(StatusCode::CREATED, &response))
}

pub(crate) async fn get_session(
    State(store): Store,
    Path(id): Path<String>,
) -> Result<Response, ApiError> {
    let session = store.load(&id)?;
    Ok(ok(&SessionView::from(&session)))
}

pub(crate) async fn put_preferences(
    State(store): Store,
    Path((id, dm)): Path<(String, String)>,
    headers: HeaderMap,
    body: Bytes,
) -> Result<Response, ApiError> {
    let dm = DmId::new(dm);
    let _guard = store.lock(&id).await;
    let mut session = store.load(&id)?;
    if session.participant(&dm).is_none() {
        return Err(sdm_session::SessionError::UnknownParticipant(dm).into());
    }
    authorize(&store, &id, &headers, &dm)?;
    let profile = parse_preferences(&body, &dm)?;
    let outcome = session.submit_preferences(&dm, profile)?;
    store.save(&session)?;
    Ok(ok(&outcome))
}

pub(crate) async fn compute_round(
    State(store): Store,
    Path(id): Path<String>,
    headers: HeaderMap,
) -> Result<Response, ApiError> {
    let _guard = store.lock(&id).await;
    let mut session = store.load(&id)?;
    authorize(&store, &id, &headers, session.sdm_id())?;
    let report = session.compute_round()?;
    store.save(&session)?;
    Ok(ok(&report))
}

pub(crate) async fn latest_round(
    State(store): Store,
    Path(id): Path<String>,
) -> Result<Response, ApiError> {
    let session = store.load(&id)?;
    match session.latest_report() {
        Some(report) => Ok(ok(report)),
        None => Err(premature("no round has been computed yet")),
    }
}

/// Repeating the call on a finalized session returns the stored result.
pub(crate) async fn finalize(
    State(store): Store,
    Path(id): Path<String>,
    headers: HeaderMap,
) -> Result<Response, ApiError> {
    let _guard = store.lock(&id).await;
    let mut session = store.load(&id)?;
    authorize(&store, &id, &headers, session.sdm_id())?;
    if let Some(result) = session.result() {
        return Ok(ok(&result));
    }
    let result = session.finalize()?;
    store.save(&session)?;
    Ok(ok(&result))
}

pub(crate) async fn result(
    State(store): Store,
    Path(id): Path<String>,
) -> Result<Response, ApiError> {
    let session = store.load(&id)?;
    match session.result() {
        Some(result) => Ok(ok(&result)),
        None => {
            debug_assert_ne!(session.status(), SessionStatus::Finalized);
            Err(premature("session is not finalized"))
        }
    }
}

fn premature(msg: &str) -> ApiError {
    sdm_session::SessionError::Premature(msg.into()).into()
}
