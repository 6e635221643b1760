//! JSON session service driving the interactive explorer.
//!
//! Each session holds a history of seeds (X mode) or Y-seeds (Y mode).
//! Requests to one session are serialized by a per-session lock; distinct
//! sessions proceed concurrently. Vertex numbers on the wire are 1-based.

use std::collections::HashMap;
use std::path::{Path as FsPath, PathBuf};
use std::sync::{Arc, RwLock};

use amas::seeds::{denominator_vector, SeedError};
use amas::{IceQuiver, Seed, YSeed};
use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use tokio::sync::Mutex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    X,
    Y,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum AnySeed {
    X(Seed),
    Y(YSeed),
}

impl AnySeed {
    fn initial(quiver: IceQuiver, mode: Mode) -> Result<Self, SeedError> {
        Ok(match mode {
            Mode::X => AnySeed::X(Seed::initial(quiver)),
            Mode::Y => AnySeed::Y(YSeed::initial(quiver)?),
        })
    }

    fn quiver(&self) -> &IceQuiver {
        match self {
            AnySeed::X(s) => s.quiver(),
            AnySeed::Y(s) => s.quiver(),
        }
    }

    fn mutate(&self, k: usize) -> Result<Self, SeedError> {
        Ok(match self {
            AnySeed::X(s) => AnySeed::X(s.mutate(k)?),
            AnySeed::Y(s) => AnySeed::Y(s.mutate(k)?),
        })
    }

    fn to_json(&self) -> Value {
        match self {
            AnySeed::X(s) => s.to_json(),
            AnySeed::Y(s) => s.to_json(),
        }
    }
}

#[derive(Debug)]
struct Session {
    id: String,
    mode: Mode,
    /// `(vertex that produced the entry, seed)`; the first entry has no vertex.
    history: Vec<(Option<usize>, AnySeed)>,
}

/// On-disk snapshot: the initial quiver and the mutations replayed from it.
#[derive(Serialize, Deserialize)]
struct Snapshot {
    v: u32,
    id: String,
    mode: Mode,
    quiver: IceQuiver,
    mutations: Vec<usize>,
    seed: Value,
}

impl Session {
    fn current(&self) -> &AnySeed {
        &self.history.last().expect("history is never empty").1
    }

    fn mutations(&self) -> Vec<usize> {
        self.history.iter().filter_map(|(v, _)| v.map(|k| k + 1)).collect()
    }

    fn snapshot(&self) -> Snapshot {
        Snapshot {
            v: 1,
            id: self.id.clone(),
            mode: self.mode,
            quiver: self.history[0].1.quiver().clone(),
            mutations: self.mutations(),
            seed: self.current().to_json(),
        }
    }

    fn replay(snap: Snapshot) -> Result<Self, SeedError> {
        let mut history = vec![(None, AnySeed::initial(snap.quiver, snap.mode)?)];
        for v in snap.mutations {
            let k = v.checked_sub(1).ok_or_else(|| SeedError::Sequence("vertex 0".into()))?;
            let next = history.last().expect("nonempty").1.mutate(k)?;
            history.push((Some(k), next));
        }
        Ok(Session { id: snap.id, mode: snap.mode, history })
    }
}

#[derive(Clone, Default)]
pub struct AppState {
    sessions: Arc<RwLock<HashMap<String, Arc<Mutex<Session>>>>>,
    persist: Option<PathBuf>,
}

impl AppState {
    pub fn new() -> Self {
        Self::default()
    }

    /// Keeps one JSON snapshot per session in `dir`, loading any already there.
    pub fn with_persistence(dir: impl Into<PathBuf>) -> std::io::Result<Self> {
        let dir = dir.into();
        std::fs::create_dir_all(&dir)?;
        let mut sessions = HashMap::new();
        for entry in std::fs::read_dir(&dir)? {
            let path = entry?.path();
            if path.extension().is_some_and(|e| e == "json") {
                match load_snapshot(&path) {
                    Ok(s) => {
                        sessions.insert(s.id.clone(), Arc::new(Mutex::new(s)));
                    }
                    Err(e) => tracing::warn!("skipping {}: {e}", path.display()),
                }
            }
        }
        tracing::info!("loaded {} sessions from {}", sessions.len(), dir.display());
        Ok(AppState { sessions: Arc::new(RwLock::new(sessions)), persist: Some(dir) })
    }

    fn get(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        self.sessions
            .read()
            .expect("session table lock")
            .get(id)
            .cloned()
            .ok_or_else(|| ApiError::new(StatusCode::NOT_FOUND, "unknown_session", format!("no session {id}")))
    }

    async fn save(&self, s: &Session) -> Result<(), ApiError> {
        let Some(dir) = &self.persist else { return Ok(()) };
        let text = serde_json::to_string_pretty(&s.snapshot()).expect("snapshot serializes");
        tokio::fs::write(dir.join(format!("{}.json", s.id)), text)
            .await
            .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "persist_failed", e.to_string()))
    }
}

fn load_snapshot(path: &FsPath) -> Result<Session, String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let snap: Snapshot = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    Session::replay(snap).map_err(|e| e.to_string())
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    code: &'static str,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        ApiError { status, code, message: message.into() }
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        ApiError::new(StatusCode::BAD_REQUEST, "invalid_body", e.body_text())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = json!({"v": 1, "error": {"code": self.code, "message": self.message}});
        (self.status, Json(body)).into_response()
    }
}

#[derive(Deserialize)]
pub struct CreateBody {
    pub quiver: IceQuiver,
    #[serde(default)]
    pub mode: Mode,
}

#[derive(Deserialize)]
pub struct MutateBody {
    pub vertex: usize,
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/session", post(create))
        .route("/session/{id}", get(show))
        .route("/session/{id}/mutate", post(mutate))
        .route("/session/{id}/undo", post(undo))
        .route("/session/{id}/neighbors", get(neighbors))
        .with_state(state)
}

async fn create(
    State(state): State<AppState>,
    body: Result<Json<CreateBody>, JsonRejection>,
) -> Result<Response, ApiError> {
    let Json(body) = body?;
    let seed = AnySeed::initial(body.quiver, body.mode)
        .map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, "invalid_quiver", e.to_string()))?;
    let id = uuid::Uuid::new_v4().simple().to_string();
    let session = Session { id: id.clone(), mode: body.mode, history: vec![(None, seed)] };
    state.save(&session).await?;
    let reply = json!({"v": 1, "id": id, "mode": body.mode, "seed": session.current().to_json()});
    state.sessions.write().expect("session table lock").insert(id.clone(), Arc::new(Mutex::new(session)));
    tracing::info!(%id, "session created");
    Ok((StatusCode::CREATED, Json(reply)).into_response())
}

async fn show(State(state): State<AppState>, Path(id): Path<String>) -> Result<Json<Value>, ApiError> {
    let session = state.get(&id)?;
    let s = session.lock().await;
    let history: Vec<Value> =
        s.history.iter().map(|(v, seed)| json!({"vertex": v.map(|k| k + 1), "seed": seed.to_json()})).collect();
    Ok(Json(json!({
        "v": 1,
        "id": s.id,
        "mode": s.mode,
        "seed": s.current().to_json(),
        "mutations": s.mutations(),
        "history": history,
    })))
}

fn check_vertex(q: &IceQuiver, vertex: usize) -> Result<usize, ApiError> {
    if vertex == 0 || vertex > q.m() {
        return Err(ApiError::new(
            StatusCode::BAD_REQUEST,
            "invalid_vertex",
            format!("vertex {vertex} out of range 1..={}", q.m()),
        ));
    }
    if q.is_frozen(vertex - 1) {
        return Err(ApiError::new(StatusCode::BAD_REQUEST, "frozen_vertex", format!("vertex {vertex} is frozen")));
    }
    Ok(vertex - 1)
}

async fn mutate(
    State(state): State<AppState>,
    Path(id): Path<String>,
    body: Result<Json<MutateBody>, JsonRejection>,
) -> Result<Json<Value>, ApiError> {
    let Json(body) = body?;
    let session = state.get(&id)?;
    let mut s = session.lock().await;
    let current = s.current().clone();
    let k = check_vertex(current.quiver(), body.vertex)?;
    let exchange = match &current {
        AnySeed::X(seed) => {
            let (out, inc) = seed
                .exchange_products(k)
                .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "exchange_failed", e.to_string()))?;
            json!({"out": out.to_string(), "in": inc.to_string()})
        }
        AnySeed::Y(_) => Value::Null,
    };
    let next = current
        .mutate(k)
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "mutation_failed", e.to_string()))?;
    s.history.push((Some(k), next));
    state.save(&s).await?;
    Ok(Json(json!({"v": 1, "seed": s.current().to_json(), "exchange": exchange})))
}

async fn undo(State(state): State<AppState>, Path(id): Path<String>) -> Result<Json<Value>, ApiError> {
    let session = state.get(&id)?;
    let mut s = session.lock().await;
    if s.history.len() == 1 {
        return Err(ApiError::new(StatusCode::CONFLICT, "nothing_to_undo", "history has a single entry"));
    }
    s.history.pop();
    state.save(&s).await?;
    Ok(Json(json!({"v": 1, "seed": s.current().to_json()})))
}

async fn neighbors(State(state): State<AppState>, Path(id): Path<String>) -> Result<Json<Value>, ApiError> {
    let session = state.get(&id)?;
    let s = session.lock().await;
    let current = s.current();
    let n = current.quiver().n();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let next = current
            .mutate(k)
            .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "mutation_failed", e.to_string()))?;
        out.push(match next {
            AnySeed::X(seed) => {
                let var = &seed.vars()[k];
                json!({"vertex": k + 1, "denominator_vector": denominator_vector(var, n), "variable": var.to_string()})
            }
            AnySeed::Y(seed) => json!({"vertex": k + 1, "preview": seed.vars()[k].render("y")}),
        });
    }
    Ok(Json(json!({"v": 1, "neighbors": out})))
}
