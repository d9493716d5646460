//! JSON HTTP service over in-memory mutation sessions.

use std::collections::HashMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, RwLock};
use std::time::Duration;

use axum::extract::{Path, State};
use axum::http::{header, HeaderValue, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tokio::sync::watch;

use coxmut::exchange::{canonical_form, Diagram, ExchangeMatrix};
use coxmut::presentation::{build_presentation, emit_presentation};
use coxmut::Caps;

use crate::commands::report;
use crate::input::{CustomRealization, Input};
use crate::CliError;

#[derive(Clone, Debug, Serialize)]
struct HistoryNode {
    parent: Option<usize>,
    /// 1-based vertex mutated to reach this node from its parent.
    vertex: Option<usize>,
    children: Vec<usize>,
}

/// A root diagram and a tree of mutation sequences from it.
#[derive(Clone, Debug)]
pub struct Session {
    root: ExchangeMatrix,
    realization: Option<CustomRealization>,
    nodes: Vec<HistoryNode>,
    node: usize,
    current: ExchangeMatrix,
}

impl Session {
    fn new(input: Input) -> Self {
        Session {
            current: input.matrix.clone(),
            root: input.matrix,
            realization: input.realization,
            nodes: vec![HistoryNode { parent: None, vertex: None, children: Vec::new() }],
            node: 0,
        }
    }

    /// 0-based mutation sequence from the root to the current node.
    pub fn sequence(&self) -> Vec<usize> {
        let mut seq = Vec::new();
        let mut at = self.node;
        while let (Some(parent), Some(v)) = (self.nodes[at].parent, self.nodes[at].vertex) {
            seq.push(v - 1);
            at = parent;
        }
        seq.reverse();
        seq
    }

    fn mutate(&mut self, k: usize) -> Result<(), CliError> {
        let rank = self.current.rank();
        if k == 0 || k > rank {
            return Err(CliError::Conflict(format!("vertex {k} is not in 1..={rank}")));
        }
        self.current = self.current.mutate(k - 1).map_err(|e| CliError::Conflict(e.to_string()))?;
        let existing = self.nodes[self.node].children.iter().copied().find(|&c| self.nodes[c].vertex == Some(k));
        self.node = existing.unwrap_or_else(|| {
            self.nodes.push(HistoryNode { parent: Some(self.node), vertex: Some(k), children: Vec::new() });
            let id = self.nodes.len() - 1;
            self.nodes[self.node].children.push(id);
            id
        });
        Ok(())
    }

    fn undo(&mut self) -> Result<(), CliError> {
        let node = &self.nodes[self.node];
        let (Some(parent), Some(k)) = (node.parent, node.vertex) else {
            return Err(CliError::Conflict("nothing to undo".into()));
        };
        self.current = self.current.mutate(k - 1).expect("history vertices are valid");
        self.node = parent;
        Ok(())
    }

    fn key(&self) -> String {
        canonical_form(&Diagram::from_matrix(&self.current)).to_hex()
    }

    /// Custom realizations describe the root diagram only.
    fn input(&self) -> Input {
        Input {
            matrix: self.current.clone(),
            realization: if self.node == 0 { self.realization.clone() } else { None },
        }
    }

    fn state(&self, id: u64) -> Value {
        json!({
            "id": id,
            "canonical_key": self.key(),
            "matrix": self.current,
            "diagram": Diagram::from_matrix(&self.current),
            "history": {
                "sequence": self.sequence().iter().map(|k| k + 1).collect::<Vec<_>>(),
                "node": self.node,
                "nodes": self.nodes,
            },
        })
    }

    fn dump(&self, id: u64) -> Value {
        json!({
            "id": id,
            "root": self.root,
            "realization": self.realization,
            "sequence": self.sequence().iter().map(|k| k + 1).collect::<Vec<_>>(),
            "canonical_key": self.key(),
            "matrix": self.current,
        })
    }
}

type Outcome = Result<Value, (StatusCode, String)>;

/// Analyses in progress or finished, by canonical key and matrix.
type Cache = Mutex<HashMap<(String, String), watch::Receiver<Option<Outcome>>>>;

pub struct AppState {
    sessions: RwLock<HashMap<u64, Arc<Mutex<Session>>>>,
    next_id: AtomicU64,
    cache: Cache,
    caps: Caps,
    wait: Duration,
    dump: Option<PathBuf>,
}

impl AppState {
    pub fn new(caps: Caps, dump: Option<PathBuf>) -> Self {
        Self::with_wait(caps, dump, Duration::from_secs(2))
    }

    /// `wait` is how long a request blocks on an analysis before answering
    /// 202.
    pub fn with_wait(caps: Caps, dump: Option<PathBuf>, wait: Duration) -> Self {
        AppState {
            sessions: RwLock::new(HashMap::new()),
            next_id: AtomicU64::new(1),
            cache: Mutex::new(HashMap::new()),
            caps,
            wait,
            dump,
        }
    }

    fn session(&self, id: u64) -> Result<Arc<Mutex<Session>>, ApiError> {
        self.sessions.read().unwrap().get(&id).cloned().ok_or(ApiError {
            status: StatusCode::NOT_FOUND,
            message: format!("no session {id}"),
            key: None,
        })
    }

    fn write_dump(&self) {
        let Some(path) = &self.dump else { return };
        let sessions = self.sessions.read().unwrap();
        let mut ids: Vec<u64> = sessions.keys().copied().collect();
        ids.sort_unstable();
        let all: Vec<Value> = ids.iter().map(|id| sessions[id].lock().unwrap().dump(*id)).collect();
        if let Err(e) = std::fs::write(path, serde_json::to_string_pretty(&all).unwrap()) {
            eprintln!("cannot write {}: {e}", path.display());
        }
    }
}

struct ApiError {
    status: StatusCode,
    message: String,
    key: Option<String>,
}

impl ApiError {
    fn from_cli(e: CliError, key: Option<String>) -> Self {
        let status = match e {
            CliError::Invalid(_) => StatusCode::BAD_REQUEST,
            CliError::Conflict(_) => StatusCode::CONFLICT,
            _ => StatusCode::UNPROCESSABLE_ENTITY,
        };
        ApiError { status, message: e.to_string(), key }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(json!({ "error": self.message, "canonical_key": self.key }))).into_response()
    }
}

#[derive(Deserialize)]
struct MutateBody {
    k: usize,
}

async fn create(State(state): State<Arc<AppState>>, body: String) -> Result<Response, ApiError> {
    let input = Input::parse(&body).map_err(|e| ApiError::from_cli(e, None))?;
    let session = Session::new(input);
    let id = state.next_id.fetch_add(1, Ordering::Relaxed);
    let value = session.state(id);
    state.sessions.write().unwrap().insert(id, Arc::new(Mutex::new(session)));
    state.write_dump();
    Ok((StatusCode::CREATED, Json(value)).into_response())
}

async fn show(State(state): State<Arc<AppState>>, Path(id): Path<u64>) -> Result<Json<Value>, ApiError> {
    let session = state.session(id)?;
    let value = session.lock().unwrap().state(id);
    Ok(Json(value))
}

async fn mutate(
    State(state): State<Arc<AppState>>,
    Path(id): Path<u64>,
    body: String,
) -> Result<Json<Value>, ApiError> {
    let session = state.session(id)?;
    let value = {
        let mut s = session.lock().unwrap();
        let key = Some(s.key());
        let MutateBody { k } = serde_json::from_str(&body).map_err(|e| ApiError {
            status: StatusCode::BAD_REQUEST,
            message: format!("expected {{\"k\": <vertex>}}: {e}"),
            key: key.clone(),
        })?;
        s.mutate(k).map_err(|e| ApiError::from_cli(e, key))?;
        s.state(id)
    };
    state.write_dump();
    Ok(Json(value))
}

async fn undo(State(state): State<Arc<AppState>>, Path(id): Path<u64>) -> Result<Json<Value>, ApiError> {
    let session = state.session(id)?;
    let value = {
        let mut s = session.lock().unwrap();
        let key = Some(s.key());
        s.undo().map_err(|e| ApiError::from_cli(e, key))?;
        s.state(id)
    };
    state.write_dump();
    Ok(Json(value))
}

async fn presentation(State(state): State<Arc<AppState>>, Path(id): Path<u64>) -> Result<Response, ApiError> {
    let session = state.session(id)?;
    let (key, input) = {
        let s = session.lock().unwrap();
        (s.key(), s.input())
    };
    let extra = match &input.realization {
        Some(custom) => crate::input::parse_extra(input.matrix.rank(), &custom.extra.join("\n"))
            .map_err(|e| ApiError::from_cli(e, Some(key.clone())))?,
        None => Vec::new(),
    };
    let p = build_presentation(&Diagram::from_matrix(&input.matrix), extra)
        .map_err(|e| ApiError::from_cli(CliError::Unavailable(e.to_string()), Some(key.clone())))?;
    let mut response = emit_presentation(&p).into_response();
    let headers = response.headers_mut();
    headers.insert(header::CONTENT_TYPE, HeaderValue::from_static("text/plain; charset=utf-8"));
    headers.insert("x-canonical-key", HeaderValue::from_str(&key).expect("hex is a valid header"));
    Ok(response)
}

fn start_analysis(state: &Arc<AppState>, input: Input, key: String) -> watch::Receiver<Option<Outcome>> {
    let (tx, rx) = watch::channel(None);
    // custom realizations bypass the cache
    if input.realization.is_none() {
        let mut cache = state.cache.lock().unwrap();
        let cache_key = (key, input.matrix.to_json());
        if let Some(rx) = cache.get(&cache_key) {
            return rx.clone();
        }
        cache.insert(cache_key, rx.clone());
    }
    let caps = state.caps;
    tokio::task::spawn_blocking(move || {
        let outcome = report(&input, &caps)
            .map(|r| serde_json::to_value(&r).expect("reports serialize"))
            .map_err(|e| (ApiError::from_cli(e.clone(), None).status, format!("analysis unavailable: {e}")));
        tx.send_replace(Some(outcome));
    });
    rx
}

async fn analysis(State(state): State<Arc<AppState>>, Path(id): Path<u64>) -> Result<Response, ApiError> {
    let session = state.session(id)?;
    let (key, input) = {
        let s = session.lock().unwrap();
        (s.key(), s.input())
    };
    let mut rx = start_analysis(&state, input, key.clone());
    let finished = tokio::time::timeout(state.wait, rx.wait_for(Option::is_some)).await;
    match finished {
        Ok(Ok(outcome)) => match outcome.clone().expect("waited for a value") {
            Ok(report) => Ok(Json(report).into_response()),
            Err((status, message)) => Err(ApiError { status, message, key: Some(key) }),
        },
        Ok(Err(_)) => Err(ApiError {
            status: StatusCode::INTERNAL_SERVER_ERROR,
            message: "analysis task stopped".into(),
            key: Some(key),
        }),
        Err(_) => {
            let poll = format!("/api/sessions/{id}/analysis");
            let mut response =
                (StatusCode::ACCEPTED, Json(json!({ "status": "pending", "canonical_key": key, "poll": poll })))
                    .into_response();
            response.headers_mut().insert(header::LOCATION, HeaderValue::from_str(&poll).unwrap());
            Ok(response)
        }
    }
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/api/sessions", post(create))
        .route("/api/sessions/{id}", get(show))
        .route("/api/sessions/{id}/mutate", post(mutate))
        .route("/api/sessions/{id}/undo", post(undo))
        .route("/api/sessions/{id}/analysis", get(analysis))
        .route("/api/sessions/{id}/presentation", get(presentation))
        .with_state(state)
}

pub async fn serve(port: u16, caps: Caps, dump: Option<PathBuf>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(("127.0.0.1", port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(Arc::new(AppState::new(caps, dump)))).await
}
