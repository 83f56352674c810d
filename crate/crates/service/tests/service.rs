use std::sync::Arc;

use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use pcrank_core::schema::INTERCHANGE_SCHEMA;
use pcrank_core::{Analysis, Method as Ranking, PcMatrix, SolverOptions};
use pcrank_service::{router, Store};
use serde_json::{json, Value};

fn judgment() -> Value {
    json!({
        "labels": ["c1", "c2", "c3", "c4"],
        "matrix": [
            [1.0, 2.5, 4.0, 9.5],
            [0.4, 1.0, 3.0, 6.5],
            [0.25, 1.0 / 3.0, 1.0, 5.0],
            [1.0 / 9.5, 1.0 / 6.5, 0.2, 1.0]
        ]
    })
}

fn app() -> Router {
    router(Arc::new(Store::new(SolverOptions::default())))
}

async fn call(app: &Router, method: Method, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    use tower::ServiceExt;
    let mut req = Request::builder().method(method).uri(uri);
    let body = match body {
        Some(v) => {
            req = req.header("content-type", "application/json");
            Body::from(v.to_string())
        }
        None => Body::empty(),
    };
    let resp = app.clone().oneshot(req.body(body).unwrap()).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    let value = if bytes.is_empty() {
        Value::Null
    } else {
        serde_json::from_slice(&bytes)
            .unwrap_or_else(|_| Value::String(String::from_utf8_lossy(&bytes).into()))
    };
    (status, value)
}

async fn create(app: &Router, doc: Value) -> (String, Value) {
    let (status, body) = call(app, Method::POST, "/sessions", Some(doc)).await;
    assert_eq!(status, StatusCode::CREATED, "{body}");
    (body["id"].as_str().unwrap().to_owned(), body)
}

async fn patch(app: &Router, id: &str, i: usize, j: usize, value: f64) -> (StatusCode, Value) {
    let uri = format!("/sessions/{id}/entries");
    call(
        app,
        Method::PATCH,
        &uri,
        Some(json!({ "i": i, "j": j, "value": value })),
    )
    .await
}

fn schema_errors(doc: &Value, kind: &str) -> Vec<String> {
    let mut schema: Value = serde_json::from_str(INTERCHANGE_SCHEMA).unwrap();
    schema["anyOf"] = json!([{ "$ref": format!("#/$defs/{kind}") }]);
    let validator = jsonschema::draft202012::options()
        .should_validate_formats(true)
        .build(&schema)
        .unwrap();
    validator.iter_errors(doc).map(|e| e.to_string()).collect()
}

fn global(doc: &Value) -> f64 {
    doc["bundle"]["discrepancy"]["global"].as_f64().unwrap()
}

#[tokio::test]
async fn healthz() {
    let (status, body) = call(&app(), Method::GET, "/healthz", None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(body["status"], "ok");
}

#[tokio::test]
async fn create_reports_full_bundle() {
    let app = app();
    let (id, body) = create(&app, judgment()).await;
    assert!(!id.is_empty());
    assert!((global(&body) - 0.475).abs() <= 0.001);
    assert!(!body["bundle"]["cop"]["poip_violations"]
        .as_array()
        .unwrap()
        .is_empty());
    assert_eq!(body["history_len"], 1);
    assert_eq!(body["created"], body["updated"]);
    assert_eq!(schema_errors(&body, "session_record"), Vec::<String>::new());

    let (_, two) = create(&app, json!({ "matrix": [[1, 1], [1, 1]] })).await;
    assert_eq!(global(&two), 0.0);
}

#[tokio::test]
async fn bundle_matches_core_exactly() {
    let app = app();
    let (_, body) = create(&app, judgment()).await;
    let m: PcMatrix = serde_json::from_value(judgment()).unwrap();
    let core = Analysis::compute(&m, &SolverOptions::default(), Ranking::Eigenvector).unwrap();
    let served: Analysis = serde_json::from_value(body["bundle"].clone()).unwrap();
    assert_eq!(served, core);
}

#[tokio::test]
async fn create_rejects_invalid_matrices() {
    let app = app();
    let (status, body) = call(
        &app,
        Method::POST,
        "/sessions",
        Some(json!({ "matrix": [[1, 2, 3], [0.5, 1, 2], [0.3, 0.5, 1]] })),
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["error"]["kind"], "reciprocity");
    assert_eq!(body["error"]["row"], 3);
    assert_eq!(body["error"]["col"], 1);
    assert_eq!(schema_errors(&body, "error_body"), Vec::<String>::new());

    let (status, body) = call(
        &app,
        Method::POST,
        "/sessions",
        Some(json!({ "matrix": [[1, -2], [-0.5, 1]] })),
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["error"]["kind"], "non_positive");

    let (status, body) = call(&app, Method::POST, "/sessions", Some(json!({ "rows": [] }))).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["error"]["kind"], "invalid_body");
    assert_eq!(schema_errors(&body, "error_body"), Vec::<String>::new());
}

#[tokio::test]
async fn solver_failure_is_unprocessable() {
    let store = Store::new(SolverOptions {
        tol: 1e-12,
        max_iter: 1,
    });
    let app = router(Arc::new(store));
    let (status, body) = call(&app, Method::POST, "/sessions", Some(judgment())).await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert_eq!(body["error"]["kind"], "solver");
}

#[tokio::test]
async fn guided_revision_over_http() {
    let app = app();
    let (id, original) = create(&app, judgment()).await;

    let (status, one) = patch(&app, &id, 3, 4, 3.0).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(one["step_log"].as_array().unwrap().len(), 1);
    let (_, fetched) = call(&app, Method::GET, &format!("/sessions/{id}"), None).await;
    assert_eq!(fetched["step_log"].as_array().unwrap().len(), 1);
    assert_eq!(fetched, one);

    let (status, two) = patch(&app, &id, 1, 2, 1.5).await;
    assert_eq!(status, StatusCode::OK);
    assert!((global(&two) - 0.149).abs() <= 0.001);
    assert_eq!(two["bundle"]["cop"]["pop_safe"], true);
    assert_eq!(two["bundle"]["cop"]["poip_safe"], true);
    assert_eq!(schema_errors(&two, "session_record"), Vec::<String>::new());

    let undo = format!("/sessions/{id}/undo");
    call(&app, Method::POST, &undo, None).await;
    let (status, back) = call(&app, Method::POST, &undo, None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(back["bundle"], original["bundle"]);
    assert_eq!(back["history_len"], 1);

    let (status, body) = call(&app, Method::POST, &undo, None).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(body["error"]["kind"], "nothing_to_undo");
}

#[tokio::test]
async fn patch_errors() {
    let app = app();
    let (id, original) = create(&app, judgment()).await;

    let (status, body) = patch(&app, &id, 1, 1, 5.0).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["error"]["kind"], "diagonal_immutable");
    assert_eq!(
        (body["error"]["row"].clone(), body["error"]["col"].clone()),
        (json!(1), json!(1))
    );

    let (status, _) = patch(&app, &id, 1, 5, 2.0).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = patch(&app, &id, 1, 2, 0.0).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = call(
        &app,
        Method::PATCH,
        &format!("/sessions/{id}/entries"),
        Some(json!({ "i": 1 })),
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);

    let (_, after) = call(&app, Method::GET, &format!("/sessions/{id}"), None).await;
    assert_eq!(after, original);

    let (status, body) = patch(&app, "no-such-session", 3, 4, 3.0).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    assert_eq!(body["error"]["kind"], "not_found");
    let (status, _) = call(&app, Method::GET, "/sessions/nope", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, _) = call(&app, Method::POST, "/sessions/nope/undo", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn what_if_thresholds() {
    let app = app();
    let (id, _) = create(&app, judgment()).await;
    patch(&app, &id, 3, 4, 3.0).await;
    patch(&app, &id, 1, 2, 1.5).await;

    let (status, body) = call(
        &app,
        Method::GET,
        &format!("/sessions/{id}/what-if?delta=0.149"),
        None,
    )
    .await;
    assert_eq!(status, StatusCode::OK);
    assert!(body["entries"].as_array().unwrap().is_empty());
    assert!(body["pairs"].as_array().unwrap().is_empty());
    assert_eq!(schema_errors(&body, "what_if"), Vec::<String>::new());

    let (_, body) = call(
        &app,
        Method::GET,
        &format!("/sessions/{id}/what-if?delta=0"),
        None,
    )
    .await;
    assert_eq!(body["pop_threshold"], 1.0);
    assert_eq!(body["poip_threshold"], 1.0);
    assert!(body["entries"].as_array().unwrap().is_empty());

    let (_, body) = call(
        &app,
        Method::GET,
        &format!("/sessions/{id}/what-if?delta=1"),
        None,
    )
    .await;
    assert_eq!(body["entries"], json!([[1, 2]]));
    assert_eq!(body["cop"]["pop_safe"], false);

    let (status, body) = call(
        &app,
        Method::GET,
        &format!("/sessions/{id}/what-if?delta=-0.5"),
        None,
    )
    .await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    assert_eq!(body["error"]["kind"], "invalid_delta");
    let (status, _) = call(&app, Method::GET, &format!("/sessions/{id}/what-if"), None).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = call(&app, Method::GET, "/sessions/nope/what-if?delta=0", None).await;
    assert_eq!(status, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn serves_schema() {
    let (status, body) = call(&app(), Method::GET, "/schema", None).await;
    assert_eq!(status, StatusCode::OK);
    assert!(body["$defs"]["session_record"].is_object());
}

#[tokio::test(flavor = "multi_thread", worker_threads = 4)]
async fn concurrent_mutations_serialize() {
    let app = app();
    let (id, _) = create(&app, judgment()).await;
    let (other, other_before) = create(&app, judgment()).await;

    let mut tasks = Vec::new();
    for k in 0..40 {
        let app = app.clone();
        let id = id.clone();
        tasks.push(tokio::spawn(async move {
            if k % 4 == 3 {
                let (status, _) =
                    call(&app, Method::POST, &format!("/sessions/{id}/undo"), None).await;
                assert!(status == StatusCode::OK || status == StatusCode::CONFLICT);
            } else {
                let (status, _) = patch(&app, &id, 1, 2, 1.0 + k as f64 / 10.0).await;
                assert_eq!(status, StatusCode::OK);
            }
        }));
    }
    for t in tasks {
        t.await.unwrap();
    }

    let (_, doc) = call(&app, Method::GET, &format!("/sessions/{id}"), None).await;
    let log = doc["step_log"].as_array().unwrap();
    assert_eq!(doc["history_len"].as_u64().unwrap() as usize, log.len() + 1);
    // every surviving step must pick up exactly where the previous one left off
    let mut current = 2.5;
    for step in log {
        assert_eq!(step["old_value"].as_f64().unwrap(), current);
        current = step["new_value"].as_f64().unwrap();
    }
    assert_eq!(doc["bundle"]["matrix"][0][1].as_f64().unwrap(), current);

    let m: PcMatrix = serde_json::from_value(json!({ "matrix": doc["bundle"]["matrix"] })).unwrap();
    let core = Analysis::compute(&m, &SolverOptions::default(), Ranking::Eigenvector).unwrap();
    assert_eq!(serde_json::to_value(core).unwrap(), doc["bundle"]);

    let (_, other_after) = call(&app, Method::GET, &format!("/sessions/{other}"), None).await;
    assert_eq!(other_after, other_before);
}

#[tokio::test]
async fn journal_replay_restores_sessions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sessions.jsonl");

    let (id, expected, untouched) = {
        let app = router(Arc::new(
            Store::with_journal(&path, SolverOptions::default()).unwrap(),
        ));
        let (id, _) = create(&app, judgment()).await;
        patch(&app, &id, 3, 4, 3.0).await;
        patch(&app, &id, 2, 3, 2.0).await;
        call(&app, Method::POST, &format!("/sessions/{id}/undo"), None).await;
        patch(&app, &id, 1, 2, 1.5).await;
        patch(&app, &id, 1, 1, 4.0).await;
        let (_, expected) = call(&app, Method::GET, &format!("/sessions/{id}"), None).await;
        let (_, untouched) = create(
            &app,
            json!({ "labels": ["a", "b"], "matrix": [[1, 3], [1.0 / 3.0, 1]] }),
        )
        .await;
        (id, expected, untouched)
    };
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 6);

    let store = Store::with_journal(&path, SolverOptions::default()).unwrap();
    assert_eq!(store.len(), 2);
    let app = router(Arc::new(store));
    let (_, replayed) = call(&app, Method::GET, &format!("/sessions/{id}"), None).await;
    assert_eq!(replayed, expected);
    let (_, other) = call(
        &app,
        Method::GET,
        &format!("/sessions/{}", untouched["id"].as_str().unwrap()),
        None,
    )
    .await;
    assert_eq!(other, untouched);

    let (status, _) = call(&app, Method::POST, &format!("/sessions/{id}/undo"), None).await;
    assert_eq!(status, StatusCode::OK);
    drop(app);
    let store = Store::with_journal(&path, SolverOptions::default()).unwrap();
    let doc = store.get(&id).await.unwrap();
    assert_eq!(doc.view.history_len, 2);
}

#[tokio::test]
async fn corrupt_journal_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.jsonl");
    std::fs::write(
        &path,
        "{\"event\":\"undo\",\"id\":\"x\",\"at\":\"2024-01-01T00:00:00Z\"}\n",
    )
    .unwrap();
    let err = Store::with_journal(&path, SolverOptions::default()).unwrap_err();
    assert!(err.to_string().contains("line 1"), "{err}");

    std::fs::write(&path, "not json\n").unwrap();
    assert!(Store::with_journal(&path, SolverOptions::default()).is_err());
}
