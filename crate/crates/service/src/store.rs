//! One JSON file per session under the data directory.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use netlogo_chat_core::orchestrator::Session;
use thiserror::Error;

pub const MAX_ID_LEN: usize = 64;

#[derive(Debug, Error)]
pub enum StorageError {
    #[error("session storage failed at {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("stored session {path} is unreadable: {reason}")]
    Corrupt { path: String, reason: String },
    #[error("invalid session id {0:?}")]
    InvalidId(String),
}

/// Ids are used as file names, so only `[A-Za-z0-9_-]` is accepted.
pub fn valid_session_id(id: &str) -> bool {
    !id.is_empty()
        && id.len() <= MAX_ID_LEN
        && id.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'-' || b == b'_')
}

#[derive(Debug, Clone)]
pub struct SessionStore {
    dir: PathBuf,
}

impl SessionStore {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, StorageError> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|source| StorageError::Io {
            path: dir.display().to_string(),
            source,
        })?;
        Ok(Self { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path_for(&self, id: &str) -> Result<PathBuf, StorageError> {
        if !valid_session_id(id) {
            return Err(StorageError::InvalidId(id.into()));
        }
        Ok(self.dir.join(format!("{id}.json")))
    }

    /// Writes to a temporary file and renames it over the old one, so a
    /// crash leaves either the previous or the new version.
    pub fn save(&self, session: &Session) -> Result<(), StorageError> {
        let path = self.path_for(&session.session_id)?;
        let tmp = self.dir.join(format!(".{}.json.tmp", session.session_id));
        let io = |source| StorageError::Io {
            path: path.display().to_string(),
            source,
        };
        let bytes = serde_json::to_vec_pretty(session).expect("sessions always serialize");
        let mut file = fs::File::create(&tmp).map_err(io)?;
        file.write_all(&bytes).map_err(io)?;
        file.sync_all().map_err(io)?;
        fs::rename(&tmp, &path).map_err(io)
    }

    pub fn load(&self, id: &str) -> Result<Option<Session>, StorageError> {
        let path = self.path_for(id)?;
        let bytes = match fs::read(&path) {
            Ok(b) => b,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(source) => {
                return Err(StorageError::Io {
                    path: path.display().to_string(),
                    source,
                })
            }
        };
        serde_json::from_slice(&bytes).map(Some).map_err(|e| StorageError::Corrupt {
            path: path.display().to_string(),
            reason: e.to_string(),
        })
    }
}
