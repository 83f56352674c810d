//! Append-only JSON-lines log of session mutations.

use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use chrono::{DateTime, Utc};
use pcrank_core::PcMatrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum JournalError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("{path}, line {line}: {message}")]
    Corrupt {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum Event {
    Create {
        id: String,
        at: DateTime<Utc>,
        matrix: PcMatrix,
    },
    Patch {
        id: String,
        at: DateTime<Utc>,
        i: usize,
        j: usize,
        value: f64,
    },
    Undo {
        id: String,
        at: DateTime<Utc>,
    },
}

impl Event {
    pub fn id(&self) -> &str {
        match self {
            Event::Create { id, .. } | Event::Patch { id, .. } | Event::Undo { id, .. } => id,
        }
    }
}

#[derive(Debug)]
pub struct Journal {
    path: PathBuf,
    file: Mutex<File>,
}

impl Journal {
    /// Opens (creating if needed) the log at `path` and returns it with the events already in it.
    pub fn open(path: impl AsRef<Path>) -> Result<(Self, Vec<(usize, Event)>), JournalError> {
        let path = path.as_ref().to_path_buf();
        let io_err = |source| JournalError::Io {
            path: path.clone(),
            source,
        };
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .read(true)
            .open(&path)
            .map_err(io_err)?;

        let mut events = Vec::new();
        for (n, line) in BufReader::new(&file).lines().enumerate() {
            let line = line.map_err(io_err)?;
            if line.trim().is_empty() {
                continue;
            }
            let event = serde_json::from_str(&line).map_err(|e| JournalError::Corrupt {
                path: path.clone(),
                line: n + 1,
                message: e.to_string(),
            })?;
            events.push((n + 1, event));
        }
        let journal = Journal {
            path,
            file: Mutex::new(file),
        };
        Ok((journal, events))
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn append(&self, event: &Event) -> Result<(), JournalError> {
        let mut line = serde_json::to_string(event).expect("events always serialize");
        line.push('\n');
        let mut file = self.file.lock().unwrap_or_else(|p| p.into_inner());
        file.write_all(line.as_bytes())
            .and_then(|()| file.sync_data())
            .map_err(|source| JournalError::Io {
                path: self.path.clone(),
                source,
            })
    }
}
