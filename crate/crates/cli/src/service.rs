//! Local JSON-over-HTTP service holding weighted-quiver mutation sessions.
//!
//! Vertex indices in request and response bodies are 0-based.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};

use axum::body::Bytes;
use axum::extract::{Path as UrlPath, RawQuery, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;

use whskit::cartan::CartanType;
use whskit::cluster;
use whskit::rootsys::RootSystem;
use whskit::symlaurent::MultiRational;
use whskit::wquiver::{self, WeightedQuiver};

use crate::json;

/// Largest neighbourhood radius served by the graph endpoint.
pub const MAX_GRAPH_DEPTH: usize = 6;
/// Largest number of seeds in one graph response.
pub const MAX_GRAPH_NODES: usize = 500;

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("unknown session {0}")]
    NotFound(String),
    #[error("vertex {0} is frozen")]
    Frozen(usize),
    #[error("nothing to undo")]
    EmptyHistory,
    #[error("{0}")]
    Unprocessable(String),
    #[error("persistence failed: {0}")]
    Io(#[from] std::io::Error),
}

impl ServiceError {
    fn status(&self) -> StatusCode {
        match self {
            ServiceError::NotFound(_) => StatusCode::NOT_FOUND,
            ServiceError::Frozen(_) | ServiceError::EmptyHistory => StatusCode::CONFLICT,
            ServiceError::Unprocessable(_) => StatusCode::UNPROCESSABLE_ENTITY,
            ServiceError::Io(_) => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }
}

impl IntoResponse for ServiceError {
    fn into_response(self) -> Response {
        (self.status(), Json(json!({ "error": self.to_string() }))).into_response()
    }
}

fn unprocessable(e: impl std::fmt::Display) -> ServiceError {
    ServiceError::Unprocessable(e.to_string())
}

#[derive(Clone, Debug)]
struct Step {
    quiver: WeightedQuiver,
    vars: Vec<MultiRational>,
}

impl Step {
    fn initial(quiver: WeightedQuiver) -> Self {
        let vars = (0..quiver.len()).map(MultiRational::var).collect();
        Step { quiver, vars }
    }

    fn mutate(&self, k: usize) -> Result<Step, ServiceError> {
        if k >= self.quiver.len() {
            return Err(unprocessable(format!(
                "vertex {k} out of range for {} vertices",
                self.quiver.len()
            )));
        }
        if !self.quiver.is_mutable(k) {
            return Err(ServiceError::Frozen(k));
        }
        let quiver = self.quiver.mutate(k).map_err(unprocessable)?;
        let mut vars = self.vars.clone();
        vars[k] = cluster::exchange(&self.vars, &self.quiver.column(k), k);
        Ok(Step { quiver, vars })
    }

    fn mutable(&self) -> Vec<usize> {
        (0..self.quiver.len())
            .filter(|&k| self.quiver.is_mutable(k))
            .collect()
    }

    /// Sorted rendering of the mutable variables; equal keys mean equal clusters.
    fn key(&self) -> Vec<String> {
        let mut k: Vec<String> = self
            .mutable()
            .iter()
            .map(|&i| self.vars[i].to_string())
            .collect();
        k.sort();
        k
    }
}

/// One mutation session: the initial state and a stack of visited states.
#[derive(Debug)]
pub struct Session {
    initial: WeightedQuiver,
    stack: Vec<Step>,
    history: Vec<usize>,
}

impl Session {
    pub fn new(initial: WeightedQuiver) -> Self {
        Session {
            stack: vec![Step::initial(initial.clone())],
            initial,
            history: Vec::new(),
        }
    }

    fn current(&self) -> &Step {
        self.stack.last().expect("stack holds the initial state")
    }

    pub fn mutate(&mut self, k: usize) -> Result<(), ServiceError> {
        let next = self.current().mutate(k)?;
        self.stack.push(next);
        self.history.push(k);
        Ok(())
    }

    pub fn undo(&mut self) -> Result<(), ServiceError> {
        if self.history.is_empty() {
            return Err(ServiceError::EmptyHistory);
        }
        self.stack.pop();
        self.history.pop();
        Ok(())
    }

    pub fn history(&self) -> &[usize] {
        &self.history
    }

    pub fn initial(&self) -> &WeightedQuiver {
        &self.initial
    }

    pub fn state(&self) -> Value {
        let s = self.current();
        json!({
            "quiver": json::quiver(&s.quiver),
            "weights": s.quiver.weights(),
            "variables": json::rendered(&s.vars),
            "mutable": s.mutable(),
            "history": self.history,
            "step": self.history.len(),
        })
    }

    /// Breadth-first neighbourhood of the current seed, identified by cluster.
    pub fn graph(&self, depth: usize) -> Value {
        let start = self.current().clone();
        let mut index: HashMap<Vec<String>, usize> = HashMap::new();
        let mut nodes = vec![(start.clone(), 0usize)];
        index.insert(start.key(), 0);
        // seeds are compared up to relabelling, so the vertex is the one seen first
        let mut edges: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut queue = VecDeque::from([0usize]);
        let mut truncated = false;
        while let Some(i) = queue.pop_front() {
            let (step, d) = nodes[i].clone();
            if d == depth {
                continue;
            }
            for k in step.mutable() {
                let next = step.mutate(k).expect("mutable vertex");
                let key = next.key();
                let j = match index.get(&key) {
                    Some(&j) => j,
                    None if nodes.len() >= MAX_GRAPH_NODES => {
                        truncated = true;
                        continue;
                    }
                    None => {
                        nodes.push((next, d + 1));
                        index.insert(key, nodes.len() - 1);
                        queue.push_back(nodes.len() - 1);
                        nodes.len() - 1
                    }
                };
                edges.entry((i.min(j), i.max(j))).or_insert(k);
            }
        }
        let nodes: Vec<Value> = nodes
            .iter()
            .enumerate()
            .map(|(i, (s, d))| json!({ "id": i, "distance": d, "cluster": s.key() }))
            .collect();
        let edges: Vec<Value> = edges
            .iter()
            .map(|(&(a, b), &k)| json!({ "from": a, "to": b, "vertex": k }))
            .collect();
        json!({ "depth": depth, "nodes": nodes, "edges": edges, "truncated": truncated })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DynkinRequest {
    #[serde(rename = "type")]
    cartan_type: String,
    psi: Option<Vec<i64>>,
}

/// Parse a session-creation body: a quiver document or `{"type", "psi"}`.
pub fn parse_initial(body: &[u8]) -> Result<WeightedQuiver, ServiceError> {
    let raw: Value = serde_json::from_slice(body).map_err(unprocessable)?;
    if raw.get("type").is_some() {
        let req: DynkinRequest = serde_json::from_value(raw).map_err(unprocessable)?;
        let t: CartanType = req.cartan_type.parse().map_err(unprocessable)?;
        let rs = RootSystem::new(t);
        let psi = req.psi.unwrap_or_else(|| vec![1; rs.rank()]);
        let wd = wquiver::weighted_dynkin_cluster(&rs, &[], &psi).map_err(unprocessable)?;
        return Ok(wd.quiver);
    }
    serde_json::from_value(raw).map_err(unprocessable)
}

/// Shared service state.
#[derive(Default)]
pub struct AppState {
    sessions: RwLock<BTreeMap<String, Arc<Mutex<Session>>>>,
    next_id: Mutex<u64>,
    persist: Option<PathBuf>,
}

impl AppState {
    pub fn new(persist: Option<PathBuf>) -> Result<Self, ServiceError> {
        let state = AppState {
            persist,
            ..AppState::default()
        };
        if let Some(dir) = &state.persist {
            fs::create_dir_all(dir)?;
            state.restore(dir)?;
        }
        Ok(state)
    }

    fn restore(&self, dir: &Path) -> Result<(), ServiceError> {
        let mut files: Vec<PathBuf> = fs::read_dir(dir)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|e| e == "jsonl"))
            .collect();
        files.sort();
        let mut sessions = self.sessions.write().expect("session table");
        let mut next = self.next_id.lock().expect("id counter");
        for path in files {
            let id = path
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or_default()
                .to_string();
            let Some(n) = id.strip_prefix('s').and_then(|n| n.parse::<u64>().ok()) else {
                continue;
            };
            let session = replay(&fs::read_to_string(&path)?)?;
            *next = (*next).max(n + 1);
            sessions.insert(id, Arc::new(Mutex::new(session)));
        }
        Ok(())
    }

    fn log(&self, id: &str, event: &Value) -> Result<(), ServiceError> {
        if let Some(dir) = &self.persist {
            let mut f = OpenOptions::new()
                .create(true)
                .append(true)
                .open(dir.join(format!("{id}.jsonl")))?;
            writeln!(f, "{event}")?;
        }
        Ok(())
    }

    pub fn create(&self, initial: WeightedQuiver) -> Result<String, ServiceError> {
        let id = {
            let mut n = self.next_id.lock().expect("id counter");
            *n += 1;
            format!("s{}", *n - 1)
        };
        self.log(
            &id,
            &json!({ "event": "create", "quiver": json::quiver(&initial) }),
        )?;
        self.sessions
            .write()
            .expect("session table")
            .insert(id.clone(), Arc::new(Mutex::new(Session::new(initial))));
        Ok(id)
    }

    pub fn session(&self, id: &str) -> Result<Arc<Mutex<Session>>, ServiceError> {
        self.sessions
            .read()
            .expect("session table")
            .get(id)
            .cloned()
            .ok_or_else(|| ServiceError::NotFound(id.to_string()))
    }

    pub fn mutate(&self, id: &str, k: usize) -> Result<Value, ServiceError> {
        let s = self.session(id)?;
        let mut s = s.lock().expect("session lock");
        s.mutate(k)?;
        self.log(id, &json!({ "event": "mutate", "vertex": k }))?;
        Ok(s.state())
    }

    pub fn undo(&self, id: &str) -> Result<Value, ServiceError> {
        let s = self.session(id)?;
        let mut s = s.lock().expect("session lock");
        s.undo()?;
        self.log(id, &json!({ "event": "undo" }))?;
        Ok(s.state())
    }
}

/// Rebuild a session from its JSON-lines event log.
pub fn replay(log: &str) -> Result<Session, ServiceError> {
    let mut session: Option<Session> = None;
    for line in log.lines().filter(|l| !l.trim().is_empty()) {
        let ev: Value = serde_json::from_str(line).map_err(unprocessable)?;
        match (ev["event"].as_str(), session.as_mut()) {
            (Some("create"), None) => {
                let q: WeightedQuiver =
                    serde_json::from_value(ev["quiver"].clone()).map_err(unprocessable)?;
                session = Some(Session::new(q));
            }
            (Some("mutate"), Some(s)) => {
                let k = ev["vertex"]
                    .as_u64()
                    .ok_or_else(|| unprocessable("bad vertex"))?;
                s.mutate(k as usize)?;
            }
            (Some("undo"), Some(s)) => s.undo()?,
            _ => return Err(unprocessable(format!("unexpected log line {line}"))),
        }
    }
    session.ok_or_else(|| unprocessable("empty session log"))
}

type Shared = Arc<AppState>;

async fn create(State(app): State<Shared>, body: Bytes) -> Result<Response, ServiceError> {
    let q = parse_initial(&body)?;
    let id = app.create(q)?;
    Ok((StatusCode::CREATED, Json(json!({ "id": id }))).into_response())
}

async fn show(
    State(app): State<Shared>,
    UrlPath(id): UrlPath<String>,
) -> Result<Json<Value>, ServiceError> {
    let s = app.session(&id)?;
    let s = s.lock().expect("session lock");
    Ok(Json(s.state()))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MutateRequest {
    vertex: usize,
}

async fn mutate(
    State(app): State<Shared>,
    UrlPath(id): UrlPath<String>,
    body: Bytes,
) -> Result<Json<Value>, ServiceError> {
    app.session(&id)?;
    let req: MutateRequest = serde_json::from_slice(&body).map_err(unprocessable)?;
    Ok(Json(app.mutate(&id, req.vertex)?))
}

async fn undo(
    State(app): State<Shared>,
    UrlPath(id): UrlPath<String>,
) -> Result<Json<Value>, ServiceError> {
    Ok(Json(app.undo(&id)?))
}

fn parse_depth(query: Option<&str>) -> Result<usize, ServiceError> {
    let mut depth = 1;
    for pair in query
        .unwrap_or_default()
        .split('&')
        .filter(|p| !p.is_empty())
    {
        match pair.split_once('=') {
            Some(("depth", v)) => {
                depth = v
                    .parse()
                    .map_err(|_| unprocessable(format!("bad depth {v:?}")))?;
            }
            _ => return Err(unprocessable(format!("unknown query parameter {pair:?}"))),
        }
    }
    if depth > MAX_GRAPH_DEPTH {
        return Err(unprocessable(format!(
            "depth {depth} exceeds {MAX_GRAPH_DEPTH}"
        )));
    }
    Ok(depth)
}

async fn graph(
    State(app): State<Shared>,
    UrlPath(id): UrlPath<String>,
    RawQuery(query): RawQuery,
) -> Result<Json<Value>, ServiceError> {
    let s = app.session(&id)?;
    let depth = parse_depth(query.as_deref())?;
    let s = s.lock().expect("session lock");
    Ok(Json(s.graph(depth)))
}

pub fn router(app: Shared) -> Router {
    Router::new()
        .route("/api/session", post(create))
        .route("/api/session/{id}", get(show))
        .route("/api/session/{id}/mutate", post(mutate))
        .route("/api/session/{id}/undo", post(undo))
        .route("/api/session/{id}/graph", get(graph))
        .with_state(app)
}

/// Bind and serve until interrupted.
pub async fn serve(host: &str, port: u16, persist: Option<PathBuf>) -> std::io::Result<()> {
    let app = AppState::new(persist).map_err(std::io::Error::other)?;
    let listener = tokio::net::TcpListener::bind((host, port)).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(Arc::new(app)))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
