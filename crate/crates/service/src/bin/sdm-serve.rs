//! Serves the session API.
//!
//! `SDM_BIND` (default `127.0.0.1:8080`) and `SDM_STORE_DIR` (default
//! `./sessions`) configure the listener and the document directory.

use std::sync::Arc;

use sdm_service::{router, SessionStore};

#[tokio::main]
async fn main() -> std::io::Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let bind = std::env::var("SDM_BIND").unwrap_or_else(|_| "127.0.0.1:8080".into());
    let dir = std::env::var("SDM_STORE_DIR").unwrap_or_else(|_| "sessions".into());
    let store = Arc::new(SessionStore::open(&dir)?);
    let listener = tokio::net::TcpListener::bind(&bind).await?;
    log::info!("listening on {bind}, sessions in {dir}");
    axum::serve(listener, router(store))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
