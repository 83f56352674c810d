//! JSON over HTTP access to revision sessions.
//!
//! | method  | path                      | body               | success |
//! |---------|---------------------------|--------------------|---------|
//! | `POST`  | `/sessions`               | matrix document    | 201     |
//! | `GET`   | `/sessions/{id}`          |                    | 200     |
//! | `PATCH` | `/sessions/{id}/entries`  | `{"i","j","value"}`| 200     |
//! | `POST`  | `/sessions/{id}/undo`     |                    | 200     |
//! | `GET`   | `/sessions/{id}/what-if`  | `?delta=`          | 200     |
//! | `GET`   | `/schema`                 |                    | 200     |
//! | `GET`   | `/healthz`                |                    | 200     |
//!
//! Session responses carry the whole recomputed analysis. Failures answer
//! with `{"error": {"kind", "message", "row"?, "col"?}}`.

pub mod api;
pub mod error;
pub mod journal;
pub mod store;

pub use api::{router, EntryPatch, WhatIf};
pub use error::ApiError;
pub use journal::{Event, Journal, JournalError};
pub use store::{SessionDocument, SessionRecord, Store};
