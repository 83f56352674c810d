use std::sync::Arc;

use axum::extract::rejection::{JsonRejection, QueryRejection};
use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::IntoResponse;
use axum::routing::{get, patch, post};
use axum::{Json, Router};
use pcrank_core::schema::INTERCHANGE_SCHEMA;
use pcrank_core::{cop_safety_at, threshold_failures, CopReport, MatrixDoc, PcMatrix};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::ApiError;
use crate::store::{SessionDocument, Store};

pub fn router(store: Arc<Store>) -> Router {
    Router::new()
        .route("/healthz", get(healthz))
        .route("/schema", get(schema))
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/entries", patch(patch_entry))
        .route("/sessions/{id}/undo", post(undo_step))
        .route("/sessions/{id}/what-if", get(what_if))
        .with_state(store)
}

async fn healthz() -> Json<serde_json::Value> {
    Json(json!({ "status": "ok" }))
}

async fn schema() -> impl IntoResponse {
    (
        [(header::CONTENT_TYPE, "application/schema+json")],
        INTERCHANGE_SCHEMA,
    )
}

fn body<T>(payload: Result<Json<T>, JsonRejection>) -> Result<T, ApiError> {
    payload
        .map(|Json(v)| v)
        .map_err(|e| ApiError::Body(e.body_text()))
}

async fn create_session(
    State(store): State<Arc<Store>>,
    payload: Result<Json<MatrixDoc>, JsonRejection>,
) -> Result<(StatusCode, Json<SessionDocument>), ApiError> {
    let matrix = PcMatrix::try_from(body(payload)?)?;
    let doc = store.create(matrix)?;
    tracing::info!(id = %doc.id, n = doc.view.bundle.labels.len(), "session created");
    Ok((StatusCode::CREATED, Json(doc)))
}

async fn get_session(
    State(store): State<Arc<Store>>,
    Path(id): Path<String>,
) -> Result<Json<SessionDocument>, ApiError> {
    store.get(&id).await.map(Json)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryPatch {
    pub i: usize,
    pub j: usize,
    pub value: f64,
}

async fn patch_entry(
    State(store): State<Arc<Store>>,
    Path(id): Path<String>,
    payload: Result<Json<EntryPatch>, JsonRejection>,
) -> Result<Json<SessionDocument>, ApiError> {
    // look the session up first so an unknown id is a 404 even with a bad body
    store.with_session(&id, |_| ()).await?;
    let p = body(payload)?;
    store.patch(&id, p.i, p.j, p.value).await.map(Json)
}

async fn undo_step(
    State(store): State<Arc<Store>>,
    Path(id): Path<String>,
) -> Result<Json<SessionDocument>, ApiError> {
    store.undo(&id).await.map(Json)
}

#[derive(Debug, Deserialize)]
pub struct WhatIfQuery {
    pub delta: f64,
}

/// Safety thresholds for a hypothetical `delta` against the session's current matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WhatIf {
    pub delta: f64,
    pub pop_threshold: f64,
    pub poip_threshold: f64,
    /// Dominant entries `m_ij > 1` not above `delta + 1`.
    pub entries: Vec<(usize, usize)>,
    /// Ordered dominance pairs whose ratio is not above `(delta + 1)^2`.
    pub pairs: Vec<(usize, usize, usize, usize)>,
    pub cop: CopReport,
}

async fn what_if(
    State(store): State<Arc<Store>>,
    Path(id): Path<String>,
    query: Result<Query<WhatIfQuery>, QueryRejection>,
) -> Result<Json<WhatIf>, ApiError> {
    let (m, mu) = store
        .with_session(&id, |rec| {
            (
                rec.session.matrix().clone(),
                rec.session.current().ranking.clone(),
            )
        })
        .await?;
    let Query(q) = query.map_err(|e| ApiError::Body(e.body_text()))?;
    let failures = threshold_failures(&m, q.delta)?;
    let cop = cop_safety_at(&m, &mu, q.delta)?;
    Ok(Json(WhatIf {
        delta: q.delta,
        pop_threshold: cop.pop_threshold,
        poip_threshold: cop.poip_threshold,
        entries: failures.entries,
        pairs: failures.pairs,
        cop,
    }))
}
