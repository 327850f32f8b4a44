//! Directory-backed session store.
//!
//! Each session lives in `<id>.json` next to `<id>.tokens.json`, which holds
//! SHA-256 hashes of the participants' bearer tokens.

use std::collections::{BTreeMap, HashMap};
use std::io::ErrorKind;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use sdm_core::DmId;
use sdm_session::{load_session, save_session, write_atomic, Session};
use sha2::{Digest, Sha256};
use tokio::sync::OwnedMutexGuard;

use crate::ApiError;

#[derive(Debug)]
pub struct SessionStore {
    dir: PathBuf,
    locks: Mutex<HashMap<String, Arc<tokio::sync::Mutex<()>>>>,
}

type TokenHashes = BTreeMap<DmId, String>;

impl SessionStore {
    pub fn open(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        Ok(Self {
            dir,
            locks: Mutex::new(HashMap::new()),
        })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Serializes writers of one session.
    pub async fn lock(&self, id: &str) -> OwnedMutexGuard<()> {
        let lock = {
            let mut locks = self.locks.lock().expect("lock table poisoned");
            locks.entry(id.to_string()).or_default().clone()
        };
        lock.lock_owned().await
    }

    pub fn load(&self, id: &str) -> Result<Session, ApiError> {
        let path = self.session_path(id)?;
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == ErrorKind::NotFound => {
                return Err(ApiError::not_found(format!("no session {id}")))
            }
            Err(e) => return Err(io_error(&path, e)),
        };
        load_session(&text).map_err(|e| {
            log::error!("stored session {id} is unreadable: {e}");
            ApiError::internal(format!("stored session {id} is unreadable"))
        })
    }

    pub fn save(&self, session: &Session) -> Result<(), ApiError> {
        let path = self.session_path(session.id())?;
        write_atomic(&path, save_session(session).as_bytes()).map_err(|e| io_error(&path, e))
    }

    /// Issues one fresh token per participant and stores their hashes.
    pub fn issue_tokens(&self, session: &Session) -> Result<BTreeMap<DmId, String>, ApiError> {
        let tokens: BTreeMap<DmId, String> = session
            .participants()
            .iter()
            .map(|p| {
                let token = format!(
                    "{}{}",
                    uuid::Uuid::new_v4().simple(),
                    uuid::Uuid::new_v4().simple()
                );
                (p.id.clone(), token)
            })
            .collect();
        let hashes: TokenHashes = tokens
            .iter()
            .map(|(dm, t)| (dm.clone(), hash_token(t)))
            .collect();
        let path = self.tokens_path(session.id())?;
        let bytes = serde_json::to_vec_pretty(&hashes).expect("token hashes serialize");
        write_atomic(&path, &bytes).map_err(|e| io_error(&path, e))?;
        Ok(tokens)
    }

    /// Returns the participant a bearer token belongs to, if any.
    pub fn authenticate(&self, id: &str, token: &str) -> Result<Option<DmId>, ApiError> {
        let path = self.tokens_path(id)?;
        let bytes = match std::fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == ErrorKind::NotFound => {
                return Err(ApiError::not_found(format!("no session {id}")))
            }
            Err(e) => return Err(io_error(&path, e)),
        };
        let hashes: TokenHashes = serde_json::from_slice(&bytes)
            .map_err(|_| ApiError::internal(format!("token file for {id} is unreadable")))?;
        let presented = hash_token(token);
        Ok(hashes
            .into_iter()
            .find(|(_, h)| *h == presented)
            .map(|(dm, _)| dm))
    }

    fn session_path(&self, id: &str) -> Result<PathBuf, ApiError> {
        check_id(id)?;
        Ok(self.dir.join(format!("{id}.json")))
    }

    fn tokens_path(&self, id: &str) -> Result<PathBuf, ApiError> {
        check_id(id)?;
        Ok(self.dir.join(format!("{id}.tokens.json")))
    }
}

fn hash_token(token: &str) -> String {
    hex::encode(Sha256::digest(token.as_bytes()))
}

// Ids become file names, so anything outside this alphabet is unknown.
fn check_id(id: &str) -> Result<(), ApiError> {
    let ok = !id.is_empty()
        && id.len() <= 128
        && id
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || b == b'-' || b == b'_');
    if ok {
        Ok(())
    } else {
        Err(ApiError::not_found(format!("no session {id}")))
    }
}

fn io_error(path: &Path, e: std::io::Error) -> ApiError {
    log::error!("{}: {e}", path.display());
    ApiError::internal("session storage failed")
}
