use std::collections::HashMap;
use std::path::Path;
use std::sync::{Arc, RwLock};

use chrono::{DateTime, Utc};
use pcrank_core::{Method, PcMatrix, RevisionError, RevisionSession, SessionView, SolverOptions};
use serde::{Deserialize, Serialize};
use tokio::sync::Mutex;
use uuid::Uuid;

use crate::error::ApiError;
use crate::journal::{Event, Journal, JournalError};

#[derive(Debug, Clone)]
pub struct SessionRecord {
    pub id: String,
    pub session: RevisionSession,
    pub created: DateTime<Utc>,
    pub updated: DateTime<Utc>,
}

/// Wire form of a [`SessionRecord`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionDocument {
    pub id: String,
    pub created: DateTime<Utc>,
    pub updated: DateTime<Utc>,
    #[serde(flatten)]
    pub view: SessionView,
}

impl SessionRecord {
    pub fn document(&self) -> SessionDocument {
        SessionDocument {
            id: self.id.clone(),
            created: self.created,
            updated: self.updated,
            view: self.session.view(),
        }
    }
}

type Slot = Arc<Mutex<SessionRecord>>;

/// In-memory sessions. Each session sits behind its own lock so mutations
/// on one session are serialized while different sessions proceed in parallel.
#[derive(Debug)]
pub struct Store {
    sessions: RwLock<HashMap<String, Slot>>,
    journal: Option<Journal>,
    options: SolverOptions,
}

impl Store {
    pub fn new(options: SolverOptions) -> Self {
        Store {
            sessions: RwLock::new(HashMap::new()),
            journal: None,
            options,
        }
    }

    /// A store backed by the journal at `path`, rebuilt from the events already recorded there.
    pub fn with_journal(
        path: impl AsRef<Path>,
        options: SolverOptions,
    ) -> Result<Self, JournalError> {
        let (journal, events) = Journal::open(path)?;
        let mut sessions: HashMap<String, SessionRecord> = HashMap::new();
        for (line, event) in events {
            replay(&mut sessions, event, options).map_err(|message| JournalError::Corrupt {
                path: journal.path().to_path_buf(),
                line,
                message,
            })?;
        }
        let sessions = sessions
            .into_iter()
            .map(|(id, rec)| (id, Arc::new(Mutex::new(rec))))
            .collect();
        Ok(Store {
            sessions: RwLock::new(sessions),
            journal: Some(journal),
            options,
        })
    }

    pub fn options(&self) -> &SolverOptions {
        &self.options
    }

    pub fn len(&self) -> usize {
        self.sessions
            .read()
            .unwrap_or_else(|p| p.into_inner())
            .len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn record(&self, event: &Event) -> Result<(), ApiError> {
        if let Some(j) = &self.journal {
            j.append(event)?;
        }
        Ok(())
    }

    pub fn create(&self, matrix: PcMatrix) -> Result<SessionDocument, ApiError> {
        let session =
            RevisionSession::open_with(matrix.clone(), self.options, Method::Eigenvector)?;
        let id = Uuid::new_v4().simple().to_string();
        let at = Utc::now();
        self.record(&Event::Create {
            id: id.clone(),
            at,
            matrix,
        })?;
        let rec = SessionRecord {
            id: id.clone(),
            session,
            created: at,
            updated: at,
        };
        let doc = rec.document();
        self.sessions
            .write()
            .unwrap_or_else(|p| p.into_inner())
            .insert(id, Arc::new(Mutex::new(rec)));
        Ok(doc)
    }

    fn slot(&self, id: &str) -> Result<Slot, ApiError> {
        self.sessions
            .read()
            .unwrap_or_else(|p| p.into_inner())
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::NotFound(id.to_owned()))
    }

    pub async fn get(&self, id: &str) -> Result<SessionDocument, ApiError> {
        Ok(self.slot(id)?.lock().await.document())
    }

    /// Runs `f` with exclusive access to the session.
    pub async fn with_session<T>(
        &self,
        id: &str,
        f: impl FnOnce(&SessionRecord) -> T,
    ) -> Result<T, ApiError> {
        let slot = self.slot(id)?;
        let rec = slot.lock().await;
        Ok(f(&rec))
    }

    pub async fn patch(
        &self,
        id: &str,
        i: usize,
        j: usize,
        value: f64,
    ) -> Result<SessionDocument, ApiError> {
        let slot = self.slot(id)?;
        let mut rec = slot.lock().await;
        let at = Utc::now();
        let mut next = rec.session.clone();
        next.apply_at(i, j, value, at)?;
        self.record(&Event::Patch {
            id: id.to_owned(),
            at,
            i,
            j,
            value,
        })?;
        rec.session = next;
        rec.updated = at;
        Ok(rec.document())
    }

    pub async fn undo(&self, id: &str) -> Result<SessionDocument, ApiError> {
        let slot = self.slot(id)?;
        let mut rec = slot.lock().await;
        let at = Utc::now();
        let mut next = rec.session.clone();
        next.undo()?;
        self.record(&Event::Undo {
            id: id.to_owned(),
            at,
        })?;
        rec.session = next;
        rec.updated = at;
        Ok(rec.document())
    }
}

fn replay(
    sessions: &mut HashMap<String, SessionRecord>,
    event: Event,
    options: SolverOptions,
) -> Result<(), String> {
    let describe = |e: RevisionError| e.to_string();
    match event {
        Event::Create { id, at, matrix } => {
            if sessions.contains_key(&id) {
                return Err(format!("session {id} created twice"));
            }
            let session = RevisionSession::open_with(matrix, options, Method::Eigenvector)
                .map_err(describe)?;
            sessions.insert(
                id.clone(),
                SessionRecord {
                    id,
                    session,
                    created: at,
                    updated: at,
                },
            );
        }
        Event::Patch {
            id,
            at,
            i,
            j,
            value,
        } => {
            let rec = sessions
                .get_mut(&id)
                .ok_or_else(|| format!("unknown session {id}"))?;
            rec.session.apply_at(i, j, value, at).map_err(describe)?;
            rec.updated = at;
        }
        Event::Undo { id, at } => {
            let rec = sessions
                .get_mut(&id)
                .ok_or_else(|| format!("unknown session {id}"))?;
            rec.session.undo().map_err(describe)?;
            rec.updated = at;
        }
    }
    Ok(())
}
