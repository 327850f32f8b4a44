//! HTTP/JSON facade over consensus sessions.
//!
//! Handlers are stateless: every request loads the session document from the
//! on-disk store, applies one protocol operation and writes it back. Writes
//! to one session are serialized by a per-session lock; reads go straight to
//! disk, where documents are replaced atomically.
//!
//! Participants authenticate with the bearer token issued to them when the
//! session is created. Computing rounds and finalizing need the SDM's token.

pub mod dto;
mod error;
mod handlers;
mod store;

use std::sync::Arc;

use axum::routing::{get, post, put};
use axum::Router;

pub use error::{ApiError, ApiErrorCode};
pub use store::SessionStore;

pub const JSON_CONTENT_TYPE: &str = "application/json; charset=utf-8";

pub fn router(store: Arc<SessionStore>) -> Router {
    Router::new()
        .route("/sessions", post(handlers::create_session))
        .route("/sessions/{id}", get(handlers::get_session))
        .route(
            "/sessions/{id}/participants/{dm}/preferences",
            put(handlers::put_preferences),
        )
        .route("/sessions/{id}/rounds", post(handlers::compute_round))
        .route("/sessions/{id}/rounds/latest", get(handlers::latest_round))
        .route("/sessions/{id}/finalize", post(handlers::finalize))
        .route("/sessions/{id}/result", get(handlers::result))
        .with_state(store)
}
