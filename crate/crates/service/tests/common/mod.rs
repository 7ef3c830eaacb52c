#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::sync::{Arc, OnceLock};
use std::time::{Duration, Instant};

use chrono::{DateTime, TimeZone, Utc};
use netlogo_chat::app::{build_orchestrator, router, AppState};
use netlogo_chat::config::{BackendConfig, ServiceConfig};
use netlogo_chat::store::SessionStore;
use netlogo_chat_core::docs::{CitedHit, DocKind};
use netlogo_chat_core::lint::{ChunkOrigin, CodeChunk, Linter};
use netlogo_chat_core::orchestrator::{
    DebugMode, EventBody, RetrievalRecord, Session, SystemRecord, Turn, TurnBody,
};
use netlogo_chat_core::prompt::{Action, ActionKind, Question, StructuredStep};
use proptest::prelude::*;
use serde_json::Value;

pub fn scenario_path(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data/scenarios").join(name)
}

pub fn scripted_config(scenario: &Path, data_dir: &Path) -> ServiceConfig {
    let mut config = ServiceConfig {
        data_dir: data_dir.to_path_buf(),
        ..ServiceConfig::default()
    };
    config.backends.insert(
        "scripted".into(),
        BackendConfig::Scripted {
            scenario: scenario.to_path_buf(),
        },
    );
    config
}

pub struct TestServer {
    pub base: String,
    pub state: Arc<AppState>,
    task: tokio::task::JoinHandle<()>,
}

impl TestServer {
    pub async fn start(config: ServiceConfig) -> Self {
        config.validate().unwrap();
        let orchestrator = build_orchestrator(&config).unwrap();
        let state = Arc::new(AppState::new(orchestrator, SessionStore::open(&config.data_dir).unwrap()));
        let app = router(
            state.clone(),
            Duration::from_secs_f64(config.llm_deadline_secs),
            config.static_ui.as_deref(),
        );
        let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
        let addr = listener.local_addr().unwrap();
        let task = tokio::spawn(async move { axum::serve(listener, app).await.unwrap() });
        Self {
            base: format!("http://{addr}"),
            state,
            task,
        }
    }

    pub fn url(&self, path: &str) -> String {
        format!("{}{path}", self.base)
    }

    pub fn ws_url(&self, path: &str) -> String {
        format!("{}{path}", self.base.replacen("http", "ws", 1))
    }

    pub async fn create_session(&self, client: &reqwest::Client) -> String {
        let resp = client.post(self.url("/api/sessions")).send().await.unwrap();
        assert_eq!(resp.status(), 201);
        resp.json::<Value>().await.unwrap()["session_id"].as_str().unwrap().to_string()
    }

    /// Posts a message and waits for the exchange to finish.
    pub async fn exchange(&self, client: &reqwest::Client, id: &str, text: &str) -> Vec<Value> {
        let resp = client
            .post(self.url(&format!("/api/sessions/{id}/messages")))
            .json(&serde_json::json!({ "text": text }))
            .send()
            .await
            .unwrap();
        assert_eq!(resp.status(), 202);
        let after = resp.json::<Value>().await.unwrap()["after"].as_u64().unwrap();
        self.wait_idle(client, id).await;
        self.events(client, id, after).await
    }

    pub async fn wait_idle(&self, client: &reqwest::Client, id: &str) {
        let started = Instant::now();
        loop {
            let body: Value = client
                .get(self.url(&format!("/api/sessions/{id}/events?after=0")))
                .send()
                .await
                .unwrap()
                .json()
                .await
                .unwrap();
            if body["busy"] == false {
                return;
            }
            assert!(started.elapsed() < Duration::from_secs(10), "exchange never finished");
            tokio::time::sleep(Duration::from_millis(5)).await;
        }
    }

    pub async fn events(&self, client: &reqwest::Client, id: &str, after: u64) -> Vec<Value> {
        let body: Value = client
            .get(self.url(&format!("/api/sessions/{id}/events?after={after}")))
            .send()
            .await
            .unwrap()
            .json()
            .await
            .unwrap();
        body["events"].as_array().unwrap().clone()
    }

    pub fn stop(self) {
        self.task.abort();
    }
}

pub fn types(events: &[Value]) -> Vec<String> {
    events.iter().map(|e| e["type"].as_str().unwrap().to_string()).collect()
}

// Session generators for persistence properties.

fn linter() -> &'static Linter {
    static LINTER: OnceLock<Linter> = OnceLock::new();
    LINTER.get_or_init(Linter::bundled)
}

fn text() -> impl Strategy<Value = String> {
    "\\PC{0,24}"
}

fn timestamp() -> impl Strategy<Value = DateTime<Utc>> {
    (0i64..4_000_000_000, 0u32..1_000_000_000).prop_map(|(s, n)| Utc.timestamp_opt(s, n).unwrap())
}

fn question() -> impl Strategy<Value = Question> {
    (text(), proptest::collection::vec(text(), 0..4)).prop_map(|(text, suggestions)| Question { text, suggestions })
}

fn action() -> impl Strategy<Value = Action> {
    prop_oneof![
        proptest::collection::vec(question(), 1..4).prop_map(|questions| Action::Clarify { questions }),
        text().prop_map(|query| Action::Search { query }),
        text().prop_map(|text| Action::Respond { text }),
        text().prop_map(|reason| Action::Apologize { reason }),
    ]
}

fn hit() -> impl Strategy<Value = CitedHit> {
    (text(), text(), text(), 1e-6f64..1e6, text(), any::<bool>()).prop_map(|(doc_id, name, url, score, snippet, model)| {
        CitedHit {
            doc_id,
            name,
            kind: if model { DocKind::ExampleModel } else { DocKind::Primitive },
            url,
            score,
            snippet,
        }
    })
}

fn mode() -> impl Strategy<Value = DebugMode> {
    prop_oneof![Just(DebugMode::Explain), Just(DebugMode::AutoFix), Just(DebugMode::FixWithIdeas)]
}

fn record() -> impl Strategy<Value = SystemRecord> {
    prop_oneof![
        (text(), proptest::collection::vec(hit(), 0..3)).prop_map(|(query, hits)| SystemRecord::SearchResults { query, hits }),
        (text(), any::<u64>()).prop_map(|(chunk_id, revision)| SystemRecord::ChunkEdited { chunk_id, revision }),
        (text(), mode()).prop_map(|(chunk_id, mode)| SystemRecord::DebugRequested { chunk_id, mode }),
        text().prop_map(|message| SystemRecord::Error { message }),
    ]
}

fn turn() -> impl Strategy<Value = Turn> {
    let body = prop_oneof![
        text().prop_map(|text| TurnBody::User { text }),
        (text(), action()).prop_map(|(plan, action)| TurnBody::Agent {
            step: StructuredStep { plan, action }
        }),
        record().prop_map(TurnBody::System),
    ];
    (body, timestamp()).prop_map(|(body, ts)| Turn { body, ts })
}

const SOURCES: &[&str] = &["to go fd 1 end", "to go fdd 1 end", "to go [", "ask turtles [ rt 90 ]", ""];

fn chunk(id: String) -> impl Strategy<Value = CodeChunk> {
    (proptest::sample::select(SOURCES), any::<bool>(), 1u64..5).prop_map(move |(src, edited, revision)| {
        let origin = if edited { ChunkOrigin::UserEdited } else { ChunkOrigin::LlmGenerated };
        let mut chunk = CodeChunk::new(id.clone(), src, "netlogo", origin, linter());
        chunk.revision = revision;
        chunk
    })
}

fn event_body() -> impl Strategy<Value = EventBody> {
    let kind = prop_oneof![
        Just(ActionKind::Clarify),
        Just(ActionKind::Search),
        Just(ActionKind::Respond),
        Just(ActionKind::Apologize)
    ];
    prop_oneof![
        (text(), kind, 1u32..7).prop_map(|(plan, action, iteration)| EventBody::Plan { plan, action, iteration }),
        text().prop_map(|query| EventBody::Searching { query }),
        (text(), proptest::collection::vec(hit(), 0..3)).prop_map(|(query, hits)| EventBody::SearchResults { query, hits }),
        proptest::collection::vec(question(), 1..4).prop_map(|questions| EventBody::Clarification { questions }),
        (any::<u32>(), text(), any::<bool>()).prop_map(|(index, text, last)| EventBody::AnswerFragment { index, text, last }),
        chunk("chunk-1".into()).prop_map(|chunk| EventBody::CodeChunk { chunk }),
        chunk("chunk-2".into()).prop_map(|c| EventBody::Diagnostics {
            chunk_id: c.chunk_id,
            revision: c.revision,
            diagnostics: c.diagnostics
        }),
        text().prop_map(|reason| EventBody::Apology { reason }),
        (text(), text()).prop_map(|(code, message)| EventBody::Error { code, message }),
    ]
}

pub fn session() -> impl Strategy<Value = Session> {
    (
        "[a-z0-9-]{1,20}",
        proptest::collection::vec(turn(), 0..8),
        proptest::collection::vec(0usize..SOURCES.len(), 0..4),
        proptest::option::of(proptest::collection::vec(question(), 1..4)),
        proptest::collection::vec((text(), proptest::collection::vec(text(), 0..3)), 0..3),
        proptest::collection::vec((event_body(), timestamp()), 0..10),
        timestamp(),
    )
        .prop_flat_map(|(id, turns, chunk_count, pending, history, events, created)| {
            let chunks: Vec<_> = (1..=chunk_count.len()).map(|i| chunk(format!("chunk-{i}"))).collect();
            (Just((id, turns, pending, history, events, created)), chunks)
        })
        .prop_map(|((id, turns, pending, history, events, created), chunks)| {
            let mut session = Session::new(id, created);
            session.turns = turns;
            session.next_chunk = chunks.len() as u64 + 1;
            session.code_chunks = chunks.into_iter().map(|c| (c.chunk_id.clone(), c)).collect();
            session.pending_clarification = pending;
            session.retrieval_history = history
                .into_iter()
                .map(|(query, hit_ids)| RetrievalRecord { query, hit_ids })
                .collect();
            for (body, ts) in events {
                session.record_event(body, ts);
            }
            session
        })
}
