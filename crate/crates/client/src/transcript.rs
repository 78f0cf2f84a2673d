//! Record/replay transcript cache.
//!
//! Responses are stored on disk keyed by a digest of the canonical request
//! JSON, one file per request. A populated cache makes runs reproducible
//! without network access or credentials: hits replay, misses either fall
//! through to an inner backend and get recorded, or fail when no inner
//! backend is configured.

use crate::backend::{BackendError, ChatBackend, ChatRequest, ChatResponse};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::PathBuf;
use std::sync::{Arc, Mutex};

/// Hex SHA-256 of the request's canonical JSON encoding.
pub fn request_digest(request: &ChatRequest) -> String {
    let bytes = serde_json::to_vec(request).expect("requests serialize");
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TranscriptEntry {
    pub request: ChatRequest,
    pub response: ChatResponse,
}

/// One JSON file per request digest. Writes are serialized.
pub struct TranscriptStore {
    dir: PathBuf,
    write_lock: Mutex<()>,
}

impl TranscriptStore {
    pub fn open(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        Ok(Self {
            dir,
            write_lock: Mutex::new(()),
        })
    }

    fn path_for(&self, digest: &str) -> PathBuf {
        self.dir.join(format!("{digest}.json"))
    }

    pub fn load(&self, digest: &str) -> Option<TranscriptEntry> {
        let body = std::fs::read_to_string(self.path_for(digest)).ok()?;
        serde_json::from_str(&body).ok()
    }

    pub fn save(&self, digest: &str, entry: &TranscriptEntry) -> std::io::Result<()> {
        let _guard = self.write_lock.lock().unwrap();
        let body = serde_json::to_string_pretty(entry)?;
        std::fs::write(self.path_for(digest), body)
    }

    /// Digest over the sorted cache contents, for run manifests.
    pub fn digest(&self) -> std::io::Result<String> {
        let mut names: Vec<PathBuf> = std::fs::read_dir(&self.dir)?
            .filter_map(|e| e.ok())
            .map(|e| e.path())
            .filter(|p| p.extension().is_some_and(|e| e == "json"))
            .collect();
        names.sort();
        let mut hasher = Sha256::new();
        for path in names {
            if let Some(name) = path.file_name() {
                hasher.update(name.to_string_lossy().as_bytes());
            }
            hasher.update(std::fs::read(&path)?);
        }
        Ok(hex::encode(hasher.finalize()))
    }
}

/// Cache-backed backend. Hits replay the recorded response; misses call the
/// inner backend and record, or fail with [`BackendError::CacheMiss`] when
/// running replay-only.
pub struct RecordReplayBackend {
    store: TranscriptStore,
    inner: Option<Arc<dyn ChatBackend>>,
}

impl RecordReplayBackend {
    pub fn recording(
        dir: impl Into<PathBuf>,
        inner: Arc<dyn ChatBackend>,
    ) -> std::io::Result<Self> {
        Ok(Self {
            store: TranscriptStore::open(dir)?,
            inner: Some(inner),
        })
    }

    pub fn replay_only(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        Ok(Self {
            store: TranscriptStore::open(dir)?,
            inner: None,
        })
    }

    pub fn store(&self) -> &TranscriptStore {
        &self.store
    }
}

impl ChatBackend for RecordReplayBackend {
    fn complete(&self, request: &ChatRequest) -> Result<ChatResponse, BackendError> {
        let digest = request_digest(request);
        if let Some(entry) = self.store.load(&digest) {
            return Ok(entry.response);
        }
        match &self.inner {
            Some(inner) => {
                let response = inner.complete(request)?;
                self.store
                    .save(
                        &digest,
                        &TranscriptEntry {
                            request: request.clone(),
                            response: response.clone(),
                        },
                    )
                    .map_err(|e| BackendError::Transport(format!("transcript write: {e}")))?;
                Ok(response)
            }
            None => Err(BackendError::CacheMiss(digest)),
        }
    }
}
