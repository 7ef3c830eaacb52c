//! HTTP and WebSocket front end over the orchestrator.
//!
//! Exchanges run in background tasks; the POST that starts one returns 202
//! and the events arrive over the stream or the polling endpoint. At most
//! one exchange or chunk edit runs per session at a time (409 otherwise).
//! The session is persisted at the end of every exchange.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, Mutex, RwLock};
use std::time::Duration;

use axum::extract::rejection::JsonRejection;
use axum::extract::ws::{CloseFrame, Message, WebSocket, WebSocketUpgrade};
use axum::extract::{Path, Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post, put};
use axum::{Json, Router};
use netlogo_chat_core::docs::{cited_search, Corpus, DocError, DocIndex};
use netlogo_chat_core::lint::{ClarificationTable, Dictionary, LintError, Linter};
use netlogo_chat_core::llm::{Gateway, HttpBackend, LlmBackend, LlmError, ScriptedBackend};
use netlogo_chat_core::orchestrator::{
    AgentEvent, DebugMode, LoopConfig, Orchestrator, OrchestratorError, Session, SystemClock,
};
use netlogo_chat_core::prompt::{Phase, PromptError, TemplateSet};
use serde::Deserialize;
use serde_json::{json, Value};
use thiserror::Error;
use tokio::sync::broadcast;
use tower_http::services::ServeDir;
use tower_http::timeout::TimeoutLayer;

use crate::config::{BackendConfig, ConfigError, ServiceConfig};
use crate::store::{valid_session_id, SessionStore, StorageError};

/// Close code sent on the stream socket for an unknown session.
pub const CLOSE_UNKNOWN_SESSION: u16 = 4404;
pub const DEFAULT_SEARCH_K: usize = 5;
const BROADCAST_CAPACITY: usize = 256;
/// Slack added to the LLM deadline for every synchronous endpoint.
const HANDLER_SLACK: Duration = Duration::from_secs(2);

#[derive(Debug, Error)]
pub enum StartupError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Docs(#[from] DocError),
    #[error(transparent)]
    Lint(#[from] LintError),
    #[error(transparent)]
    Prompt(#[from] PromptError),
    #[error("backend setup failed: {0}")]
    Backend(#[from] LlmError),
    #[error(transparent)]
    Storage(#[from] StorageError),
}

fn load_corpus(config: &ServiceConfig) -> Result<Arc<Corpus>, DocError> {
    Ok(Arc::new(match &config.corpus {
        Some(path) => Corpus::ingest(path)?,
        None => Corpus::bundled(),
    }))
}

fn build_backend(id: &str, config: &BackendConfig) -> Result<Arc<dyn LlmBackend>, LlmError> {
    Ok(match config {
        BackendConfig::Scripted { scenario } => {
            Arc::new(ScriptedBackend::new(netlogo_chat_core::llm::load_scenario(scenario)?))
        }
        BackendConfig::Http(http) => {
            if let Some(var) = &http.api_key_env {
                if !std::env::var(var).is_ok_and(|v| !v.is_empty()) {
                    tracing::warn!(backend = id, env = %var, "API key variable is not set");
                }
            }
            Arc::new(HttpBackend::new(http.clone())?)
        }
    })
}

/// Builds the orchestrator described by a validated config.
pub fn build_orchestrator(config: &ServiceConfig) -> Result<Orchestrator, StartupError> {
    let corpus = load_corpus(config)?;
    let index = DocIndex::build(corpus.clone())?;
    let table = match &config.clarifications {
        Some(path) => ClarificationTable::load(path)?,
        None => ClarificationTable::bundled(),
    };
    let linter = Linter::new(Arc::new(Dictionary::from_corpus(&corpus)?), table);
    let templates = match &config.templates_dir {
        Some(dir) => TemplateSet::load_dir(dir)?,
        None => TemplateSet::bundled(),
    };

    let default_id = config.default_backend()?.to_string();
    let mut gateway = Gateway::new(
        default_id.clone(),
        build_backend(&default_id, &config.backends[&default_id])?,
    );
    for (id, backend) in &config.backends {
        if *id != default_id {
            gateway.register(id.clone(), build_backend(id, backend)?);
        }
    }
    for phase in Phase::ALL {
        if let Some(id) = config.routing.for_phase(phase) {
            gateway.route(phase, id)?;
        }
    }

    Ok(Orchestrator::new(
        Arc::new(gateway),
        Arc::new(index),
        Arc::new(linter),
        Arc::new(templates),
        Arc::new(SystemClock),
    )
    .with_config(LoopConfig {
        max_iterations: config.max_iterations,
        ..LoopConfig::default()
    }))
}

/// Per-session state. `session` is held for the whole of an exchange;
/// readers use `snapshot` and `events`, which never wait on the LLM.
struct SessionSlot {
    session: tokio::sync::Mutex<Session>,
    snapshot: RwLock<Session>,
    events: RwLock<Vec<AgentEvent>>,
    tx: broadcast::Sender<AgentEvent>,
    busy: AtomicBool,
}

impl SessionSlot {
    fn new(session: Session) -> Self {
        Self {
            events: RwLock::new(session.events.clone()),
            snapshot: RwLock::new(session.clone()),
            session: tokio::sync::Mutex::new(session),
            tx: broadcast::channel(BROADCAST_CAPACITY).0,
            busy: AtomicBool::new(false),
        }
    }

    fn publish(&self, event: &AgentEvent) {
        self.events.write().unwrap().push(event.clone());
        // No subscribers is fine: the log above serves late readers.
        let _ = self.tx.send(event.clone());
    }

    fn events_after(&self, after: u64) -> Vec<AgentEvent> {
        self.events.read().unwrap().iter().filter(|e| e.seq > after).cloned().collect()
    }

    fn snapshot(&self) -> Session {
        self.snapshot.read().unwrap().clone()
    }

    fn claim(self: &Arc<Self>) -> Result<BusyGuard, ApiError> {
        self.busy
            .compare_exchange(false, true, Ordering::AcqRel, Ordering::Acquire)
            .map(|_| BusyGuard(self.clone()))
            .map_err(|_| ApiError::new(StatusCode::CONFLICT, "an exchange is already running for this session"))
    }
}

struct BusyGuard(Arc<SessionSlot>);

impl Drop for BusyGuard {
    fn drop(&mut self) {
        self.0.busy.store(false, Ordering::Release);
    }
}

pub struct AppState {
    orchestrator: Arc<Orchestrator>,
    store: SessionStore,
    sessions: Mutex<HashMap<String, Arc<SessionSlot>>>,
}

impl AppState {
    pub fn new(orchestrator: Orchestrator, store: SessionStore) -> Self {
        Self {
            orchestrator: Arc::new(orchestrator),
            store,
            sessions: Mutex::new(HashMap::new()),
        }
    }

    pub fn orchestrator(&self) -> &Orchestrator {
        &self.orchestrator
    }

    pub fn store(&self) -> &SessionStore {
        &self.store
    }

    /// Finds a session in memory or loads it from disk.
    fn slot(&self, id: &str) -> Result<Arc<SessionSlot>, ApiError> {
        if !valid_session_id(id) {
            return Err(ApiError::session_not_found(id));
        }
        let mut sessions = self.sessions.lock().unwrap();
        if let Some(slot) = sessions.get(id) {
            return Ok(slot.clone());
        }
        let session = self.store.load(id)?.ok_or_else(|| ApiError::session_not_found(id))?;
        let slot = Arc::new(SessionSlot::new(session));
        sessions.insert(id.to_string(), slot.clone());
        Ok(slot)
    }

    fn create(&self) -> Result<String, ApiError> {
        let id = uuid::Uuid::new_v4().to_string();
        let session = self.orchestrator.new_session(&id);
        self.store.save(&session)?;
        self.sessions
            .lock()
            .unwrap()
            .insert(id.clone(), Arc::new(SessionSlot::new(session)));
        Ok(id)
    }

    fn persist(&self, slot: &SessionSlot, session: &Session) {
        if let Err(e) = self.store.save(session) {
            tracing::error!(session = %session.session_id, error = %e, "failed to persist session");
        }
        *slot.snapshot.write().unwrap() = session.clone();
    }
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, message: impl Into<String>) -> Self {
        Self {
            status,
            message: message.into(),
        }
    }

    fn bad_request(message: impl Into<String>) -> Self {
        Self::new(StatusCode::BAD_REQUEST, message)
    }

    fn session_not_found(id: &str) -> Self {
        Self::new(StatusCode::NOT_FOUND, format!("no session {id:?}"))
    }
}

impl From<StorageError> for ApiError {
    fn from(e: StorageError) -> Self {
        tracing::error!(error = %e, "storage error");
        Self::new(StatusCode::INTERNAL_SERVER_ERROR, e.to_string())
    }
}

impl From<JsonRejection> for ApiError {
    fn from(e: JsonRejection) -> Self {
        Self::bad_request(e.body_text())
    }
}

impl From<OrchestratorError> for ApiError {
    fn from(e: OrchestratorError) -> Self {
        let status = match e {
            OrchestratorError::EmptyMessage => StatusCode::BAD_REQUEST,
            OrchestratorError::ChunkNotFound(_) => StatusCode::NOT_FOUND,
            OrchestratorError::NothingToFix(_) => StatusCode::CONFLICT,
            OrchestratorError::BackendUnavailable(_) => StatusCode::BAD_GATEWAY,
            OrchestratorError::Prompt(_) => StatusCode::INTERNAL_SERVER_ERROR,
        };
        Self::new(status, e.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(json!({ "error": self.message }))).into_response()
    }
}

type Shared = State<Arc<AppState>>;
type ApiResult<T> = Result<T, ApiError>;

/// The API router. Every route except the stream answers within
/// `llm_deadline + 2s`.
pub fn router(state: Arc<AppState>, llm_deadline: Duration, static_ui: Option<&std::path::Path>) -> Router {
    let api = Router::new()
        .route("/api/health", get(|| async { Json(json!({ "status": "ok" })) }))
        .route("/api/sessions", post(create_session))
        .route("/api/sessions/{id}", get(get_session))
        .route("/api/sessions/{id}/messages", post(post_message))
        .route("/api/sessions/{id}/events", get(poll_events))
        .route("/api/sessions/{id}/chunks/{cid}", put(update_chunk))
        .route("/api/sessions/{id}/chunks/{cid}/debug", post(debug_chunk))
        .route("/api/sessions/{id}/chunks/{cid}/run", post(run_chunk))
        .route("/api/lint", post(lint))
        .route("/api/docs/search", get(search))
        .layer(TimeoutLayer::with_status_code(
            StatusCode::REQUEST_TIMEOUT,
            llm_deadline + HANDLER_SLACK,
        ));
    let app = api
        .route("/api/sessions/{id}/stream", get(stream))
        .with_state(state);
    match static_ui {
        Some(dir) => app.fallback_service(ServeDir::new(dir)),
        None => app,
    }
}

async fn create_session(State(state): Shared) -> ApiResult<(StatusCode, Json<Value>)> {
    let id = state.create()?;
    Ok((StatusCode::CREATED, Json(json!({ "session_id": id }))))
}

async fn get_session(State(state): Shared, Path(id): Path<String>) -> ApiResult<Json<Value>> {
    let slot = state.slot(&id)?;
    let mut body = serde_json::to_value(slot.snapshot()).expect("sessions always serialize");
    body["busy"] = json!(slot.busy.load(Ordering::Acquire));
    Ok(Json(body))
}

#[derive(Deserialize)]
struct MessageBody {
    text: String,
}

async fn post_message(
    State(state): Shared,
    Path(id): Path<String>,
    body: Result<Json<MessageBody>, JsonRejection>,
) -> ApiResult<(StatusCode, Json<Value>)> {
    let slot = state.slot(&id)?;
    let Json(MessageBody { text }) = body?;
    if text.trim().is_empty() {
        return Err(OrchestratorError::EmptyMessage.into());
    }
    let guard = slot.claim()?;
    let after = slot.snapshot().last_seq();
    let task_state = state.clone();
    tokio::spawn(async move {
        let slot = guard.0.clone();
        let mut session = slot.session.lock().await;
        let sink = |e: &AgentEvent| slot.publish(e);
        if let Err(e) = task_state.orchestrator.handle_user_message(&mut session, &text, &sink).await {
            tracing::warn!(session = %session.session_id, error = %e, "exchange ended with an error");
        }
        task_state.persist(&slot, &session);
        drop(session);
        drop(guard);
    });
    Ok((StatusCode::ACCEPTED, Json(json!({ "accepted": true, "after": after }))))
}

#[derive(Deserialize)]
struct AfterQuery {
    #[serde(default)]
    after: u64,
}

async fn poll_events(
    State(state): Shared,
    Path(id): Path<String>,
    Query(q): Query<AfterQuery>,
) -> ApiResult<Json<Value>> {
    let slot = state.slot(&id)?;
    Ok(Json(json!({
        "events": slot.events_after(q.after),
        "busy": slot.busy.load(Ordering::Acquire),
    })))
}

#[derive(Deserialize)]
struct ChunkEdit {
    source: String,
}

async fn update_chunk(
    State(state): Shared,
    Path((id, cid)): Path<(String, String)>,
    body: Result<Json<ChunkEdit>, JsonRejection>,
) -> ApiResult<Json<Value>> {
    let slot = state.slot(&id)?;
    let Json(ChunkEdit { source }) = body?;
    let _guard = slot.claim()?;
    let mut session = slot.session.lock().await;
    let sink = |e: &AgentEvent| slot.publish(e);
    let diagnostics = state.orchestrator.update_chunk(&mut session, &cid, &source, &sink)?;
    state.persist(&slot, &session);
    Ok(Json(json!({
        "chunk": session.code_chunks[&cid],
        "diagnostics": diagnostics,
    })))
}

#[derive(Deserialize)]
struct DebugBody {
    mode: String,
    #[serde(default)]
    ideas: Option<String>,
}

async fn debug_chunk(
    State(state): Shared,
    Path((id, cid)): Path<(String, String)>,
    body: Result<Json<DebugBody>, JsonRejection>,
) -> ApiResult<(StatusCode, Json<Value>)> {
    let slot = state.slot(&id)?;
    let Json(DebugBody { mode, ideas }) = body?;
    let mode = DebugMode::parse(&mode)
        .ok_or_else(|| ApiError::bad_request(format!("unknown mode {mode:?}; expected explain, auto-fix or fix-with-ideas")))?;
    if mode == DebugMode::FixWithIdeas && ideas.as_deref().is_none_or(|i| i.trim().is_empty()) {
        return Err(ApiError::bad_request("fix-with-ideas needs non-empty ideas"));
    }
    let guard = slot.claim()?;
    // The snapshot is current while the guard is held.
    let snapshot = slot.snapshot();
    let chunk = snapshot
        .code_chunks
        .get(&cid)
        .ok_or_else(|| OrchestratorError::ChunkNotFound(cid.clone()))?;
    if mode != DebugMode::Explain && chunk.diagnostics.is_empty() {
        return Err(OrchestratorError::NothingToFix(cid).into());
    }
    let after = snapshot.last_seq();
    let task_state = state.clone();
    tokio::spawn(async move {
        let slot = guard.0.clone();
        let mut session = slot.session.lock().await;
        let sink = |e: &AgentEvent| slot.publish(e);
        let result = task_state
            .orchestrator
            .debug_action(&mut session, &cid, mode, ideas.as_deref(), &sink)
            .await;
        if let Err(e) = result {
            tracing::warn!(session = %session.session_id, error = %e, "debug exchange ended with an error");
        }
        task_state.persist(&slot, &session);
        drop(session);
        drop(guard);
    });
    Ok((StatusCode::ACCEPTED, Json(json!({ "accepted": true, "after": after }))))
}

async fn run_chunk(State(state): Shared, Path((id, cid)): Path<(String, String)>) -> ApiResult<Json<Value>> {
    let slot = state.slot(&id)?;
    let outcome = state.orchestrator.run_chunk(&slot.snapshot(), &cid).await?;
    Ok(Json(serde_json::to_value(outcome).expect("outcomes always serialize")))
}

#[derive(Deserialize)]
struct LintBody {
    code: String,
}

async fn lint(State(state): Shared, body: Result<Json<LintBody>, JsonRejection>) -> ApiResult<Json<Value>> {
    let Json(LintBody { code }) = body?;
    Ok(Json(json!({ "diagnostics": state.orchestrator.linter().check(&code) })))
}

#[derive(Deserialize)]
struct SearchQuery {
    q: Option<String>,
    k: Option<usize>,
}

async fn search(State(state): Shared, Query(q): Query<SearchQuery>) -> ApiResult<Json<Value>> {
    let query = q.q.filter(|q| !q.trim().is_empty()).ok_or_else(|| ApiError::bad_request("q is required"))?;
    let k = q.k.unwrap_or(DEFAULT_SEARCH_K);
    if k == 0 {
        return Err(ApiError::bad_request("k must be at least 1"));
    }
    Ok(Json(json!({ "hits": cited_search(state.orchestrator.retriever(), &query, k) })))
}

async fn stream(
    ws: WebSocketUpgrade,
    State(state): Shared,
    Path(id): Path<String>,
    Query(q): Query<AfterQuery>,
) -> Response {
    match state.slot(&id) {
        Ok(slot) => ws.on_upgrade(move |socket| forward_events(socket, slot, q.after)),
        Err(_) => ws.on_upgrade(|mut socket| async move {
            let frame = CloseFrame {
                code: CLOSE_UNKNOWN_SESSION,
                reason: "unknown session".into(),
            };
            let _ = socket.send(Message::Close(Some(frame))).await;
        }),
    }
}

async fn send_event(socket: &mut WebSocket, event: &AgentEvent) -> bool {
    let text = serde_json::to_string(event).expect("events always serialize");
    socket.send(Message::Text(text.into())).await.is_ok()
}

/// Sends the backlog after `after`, then live events. Subscribing before
/// reading the backlog, and skipping anything at or below the last sent
/// seq, makes resumption lossless and duplicate-free.
async fn forward_events(mut socket: WebSocket, slot: Arc<SessionSlot>, after: u64) {
    let mut rx = slot.tx.subscribe();
    let mut last = after;
    for event in slot.events_after(last) {
        if !send_event(&mut socket, &event).await {
            return;
        }
        last = event.seq;
    }
    loop {
        tokio::select! {
            received = rx.recv() => match received {
                Ok(event) if event.seq > last => {
                    if !send_event(&mut socket, &event).await {
                        return;
                    }
                    last = event.seq;
                }
                Ok(_) => {}
                Err(broadcast::error::RecvError::Lagged(_)) => {
                    for event in slot.events_after(last) {
                        if !send_event(&mut socket, &event).await {
                            return;
                        }
                        last = event.seq;
                    }
                }
                Err(broadcast::error::RecvError::Closed) => return,
            },
            incoming = socket.recv() => match incoming {
                None | Some(Err(_)) | Some(Ok(Message::Close(_))) => return,
                Some(Ok(_)) => {}
            },
        }
    }
}
