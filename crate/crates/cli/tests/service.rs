use std::sync::Arc;
use std::time::Duration;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use serde_json::{json, Value};
use tower::ServiceExt;

use coxmut::exchange::{dynkin, ExchangeMatrix};
use coxmut::Caps;
use coxmut_cli::server::{router, AppState};

const A3_PATH: &str = r#"{"n":3,"b":[[0,1,0],[-1,0,1],[0,-1,0]]}"#;
const B3: &str = r#"{"n":3,"b":[[0,1,0],[-1,0,1],[0,-2,0]],"d":[1,1,2]}"#;
const MARKOV: &str = r#"{"n":3,"b":[[0,2,-2],[-2,0,2],[2,-2,0]]}"#;

fn app() -> Router {
    router(Arc::new(AppState::new(Caps::default(), None)))
}

async fn send(app: &Router, method: &str, uri: &str, body: &str) -> (StatusCode, Vec<u8>, Option<String>) {
    let request = Request::builder().method(method).uri(uri).body(Body::from(body.to_string())).unwrap();
    let response = app.clone().oneshot(request).await.unwrap();
    let status = response.status();
    let key = response.headers().get("x-canonical-key").map(|v| v.to_str().unwrap().to_string());
    let bytes = response.into_body().collect().await.unwrap().to_bytes().to_vec();
    (status, bytes, key)
}

async fn call(app: &Router, method: &str, uri: &str, body: &str) -> (StatusCode, Value) {
    let (status, bytes, _) = send(app, method, uri, body).await;
    (status, serde_json::from_slice(&bytes).unwrap_or(Value::Null))
}

async fn session(app: &Router, diagram: &str) -> u64 {
    let (status, state) = call(app, "POST", "/api/sessions", diagram).await;
    assert_eq!(status, StatusCode::CREATED);
    assert!(state["canonical_key"].is_string());
    state["id"].as_u64().unwrap()
}

#[tokio::test]
async fn triangle_analysis_is_euclidean() {
    let app = app();
    let id = session(&app, A3_PATH).await;
    let (status, state) = call(&app, "POST", &format!("/api/sessions/{id}/mutate"), r#"{"k":2}"#).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(state["history"]["sequence"], json!([2]));
    let (status, report) = call(&app, "GET", &format!("/api/sessions/{id}/analysis"), "").await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(report["geometry"]["kind"], "Euclidean", "{report}");
    assert_eq!(report["group_order"], 24);
    assert_eq!(report["canonical_key"], state["canonical_key"]);
}

#[tokio::test]
async fn surface_analysis() {
    let app = app();
    let id = session(&app, B3).await;
    call(&app, "POST", &format!("/api/sessions/{id}/mutate"), r#"{"k":2}"#).await;
    let (status, report) = call(&app, "GET", &format!("/api/sessions/{id}/analysis"), "").await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(report["chi_X"], -4);
    assert_eq!(report["volume"], json!({"coeff_num": 8, "coeff_den": 1, "pi_power": 1}));
}

#[tokio::test]
async fn error_statuses() {
    let app = app();
    let id = session(&app, A3_PATH).await;
    let (status, body) = call(&app, "POST", &format!("/api/sessions/{id}/mutate"), r#"{"k":7}"#).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert!(body["canonical_key"].is_string());
    let (status, _) = call(&app, "POST", &format!("/api/sessions/{id}/mutate"), "not json").await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = call(&app, "POST", "/api/sessions", r#"{"n":2,"b":[[0,1],[1,0]]}"#).await;
    assert_eq!(status, StatusCode::BAD_REQUEST);
    let (status, _) = call(&app, "GET", "/api/sessions/999", "").await;
    assert_eq!(status, StatusCode::NOT_FOUND);
    let (status, _) = call(&app, "POST", &format!("/api/sessions/{id}/undo"), "").await;
    assert_eq!(status, StatusCode::CONFLICT);
}

#[tokio::test]
async fn unavailable_analysis_is_422() {
    let app = app();
    let id = session(&app, MARKOV).await;
    let (status, body) = call(&app, "GET", &format!("/api/sessions/{id}/analysis"), "").await;
    assert_eq!(status, StatusCode::UNPROCESSABLE_ENTITY);
    assert!(body["error"].as_str().unwrap().contains("analysis unavailable"));
    assert!(body["canonical_key"].is_string());
}

#[tokio::test]
async fn presentation_text_carries_key() {
    let app = app();
    let id = session(&app, B3).await;
    call(&app, "POST", &format!("/api/sessions/{id}/mutate"), r#"{"k":2}"#).await;
    let (status, bytes, key) = send(&app, "GET", &format!("/api/sessions/{id}/presentation"), "").await;
    assert_eq!(status, StatusCode::OK);
    let text = String::from_utf8(bytes).unwrap();
    assert!(text.starts_with("gens 3\n"));
    assert!(text.lines().any(|l| l.starts_with("cyc ")));
    let (_, state) = call(&app, "GET", &format!("/api/sessions/{id}"), "").await;
    assert_eq!(key.as_deref(), state["canonical_key"].as_str());
}

#[tokio::test]
async fn undo_restores_state() {
    let app = app();
    let id = session(&app, A3_PATH).await;
    let (_, before) = call(&app, "GET", &format!("/api/sessions/{id}"), "").await;
    call(&app, "POST", &format!("/api/sessions/{id}/mutate"), r#"{"k":2}"#).await;
    let (status, after) = call(&app, "POST", &format!("/api/sessions/{id}/undo"), "").await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(after["matrix"], before["matrix"]);
    assert_eq!(after["history"]["sequence"], json!([]));
    assert_eq!(after["history"]["nodes"].as_array().unwrap().len(), 2);
}

#[tokio::test]
async fn replay_matches_library() {
    let app = app();
    let start = dynkin::d(5);
    let id = session(&app, &start.to_json()).await;
    let mut state = 0x2545f4914f6cdd1du64;
    for _ in 0..40 {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        if state.is_multiple_of(4) {
            call(&app, "POST", &format!("/api/sessions/{id}/undo"), "").await;
        } else {
            let k = state % 5 + 1;
            call(&app, "POST", &format!("/api/sessions/{id}/mutate"), &format!(r#"{{"k":{k}}}"#)).await;
        }
        let (_, current) = call(&app, "GET", &format!("/api/sessions/{id}"), "").await;
        let seq: Vec<usize> =
            current["history"]["sequence"].as_array().unwrap().iter().map(|v| v.as_u64().unwrap() as usize - 1).collect();
        let expected: Value = serde_json::from_str(&start.mutate_along(&seq).unwrap().to_json()).unwrap();
        assert_eq!(current["matrix"], expected);
    }
}

#[tokio::test]
async fn slow_analysis_answers_202_then_result() {
    let app = router(Arc::new(AppState::with_wait(Caps::default(), None, Duration::ZERO)));
    let m: ExchangeMatrix = dynkin::e(7).mutate(3).unwrap();
    let id = session(&app, &m.to_json()).await;
    let uri = format!("/api/sessions/{id}/analysis");
    let (status, first) = call(&app, "GET", &uri, "").await;
    if status == StatusCode::ACCEPTED {
        assert_eq!(first["status"], "pending");
        assert_eq!(first["poll"], uri.as_str());
        assert!(first["canonical_key"].is_string());
    } else {
        assert_eq!(status, StatusCode::OK);
    }
    for _ in 0..600 {
        let (status, body) = call(&app, "GET", &uri, "").await;
        if status == StatusCode::OK {
            assert_eq!(body["group_order"], 2903040);
            return;
        }
        tokio::time::sleep(Duration::from_millis(100)).await;
    }
    panic!("analysis did not finish");
}

#[tokio::test]
async fn dump_writes_sessions() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sessions.json");
    let app = router(Arc::new(AppState::new(Caps::default(), Some(path.clone()))));
    let id = session(&app, A3_PATH).await;
    call(&app, "POST", &format!("/api/sessions/{id}/mutate"), r#"{"k":2}"#).await;
    let dumped: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(dumped[0]["sequence"], json!([2]));
    assert_eq!(dumped[0]["root"], serde_json::from_str::<Value>(A3_PATH).unwrap());
}
