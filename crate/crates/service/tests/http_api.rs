mod common;

use std::time::Duration;

use common::{scenario_path, scripted_config, types, TestServer};
use futures_util::StreamExt;
use serde_json::{json, Value};
use tokio_tungstenite::tungstenite::protocol::frame::coding::CloseCode;
use tokio_tungstenite::tungstenite::Message;

async fn predation_server() -> (TestServer, tempfile::TempDir) {
    let dir = tempfile::tempdir().unwrap();
    let server = TestServer::start(scripted_config(&scenario_path("predation.json"), dir.path())).await;
    (server, dir)
}

/// A scenario that answers with one chunk, then explains it.
fn debug_scenario(dir: &std::path::Path, code: &str, second: &str) -> std::path::PathBuf {
    let path = dir.join("debug.json");
    let steps = json!({
        "scenario_id": "debug",
        "steps": [
            {"reply": format!("Plan: answer\nAction: respond\nParameter: Here.\n```netlogo\n{code}\n```")},
            {"reply": second},
        ]
    });
    std::fs::write(&path, steps.to_string()).unwrap();
    path
}

#[tokio::test]
async fn create_gives_distinct_ids() {
    let (server, _dir) = predation_server().await;
    let client = reqwest::Client::new();
    let a = server.create_session(&client).await;
    let b = server.create_session(&client).await;
    assert_ne!(a, b);
    let body: Value = client.get(server.url(&format!("/api/sessions/{a}"))).send().await.unwrap().json().await.unwrap();
    assert_eq!(body["session_id"], a.as_str());
    assert_eq!(body["busy"], false);
    assert!(server.state.store().dir().join(format!("{a}.json")).exists());
}

#[tokio::test]
async fn unwritable_data_dir_is_500() {
    let (server, dir) = predation_server().await;
    std::fs::remove_dir_all(dir.path()).unwrap();
    std::fs::write(dir.path(), "not a directory").unwrap();
    let resp = reqwest::Client::new().post(server.url("/api/sessions")).send().await.unwrap();
    assert_eq!(resp.status(), 500);
    std::fs::remove_file(dir.path()).unwrap();
}

#[tokio::test]
async fn message_flow_and_polling() {
    let (server, _dir) = predation_server().await;
    let client = reqwest::Client::new();
    let id = server.create_session(&client).await;
    let first = server.exchange(&client, &id, "create a predation model").await;
    assert_eq!(types(&first), ["plan", "clarification"]);
    assert_eq!(first[1]["payload"]["questions"][0]["suggestions"], json!(["Wolf", "Sheep"]));
    let second = server.exchange(&client, &id, "Wolf and sheep").await;
    assert_eq!(second[0]["seq"], 3);
    let t = types(&second);
    assert!(t.iter().position(|x| x == "search-results") < t.iter().position(|x| x == "answer-fragment"));
    let session: Value = client.get(server.url(&format!("/api/sessions/{id}"))).send().await.unwrap().json().await.unwrap();
    assert_eq!(session["turns"].as_array().unwrap().len(), 6);
    assert!(session["code_chunks"]["chunk-1"].is_object());
}

#[tokio::test]
async fn message_errors() {
    let (server, _dir) = predation_server().await;
    let client = reqwest::Client::new();
    let missing = client
        .post(server.url("/api/sessions/nope/messages"))
        .json(&json!({"text": "hi"}))
        .send()
        .await
        .unwrap();
    assert_eq!(missing.status(), 404);
    assert_eq!(client.get(server.url("/api/sessions/..%2Fetc")).send().await.unwrap().status(), 404);

    let id = server.create_session(&client).await;
    let url = server.url(&format!("/api/sessions/{id}/messages"));
    assert_eq!(client.post(&url).json(&json!({"text": "  "})).send().await.unwrap().status(), 400);
    assert_eq!(client.post(&url).json(&json!({"txt": "x"})).send().await.unwrap().status(), 400);
    assert_eq!(
        client.post(&url).header("content-type", "application/json").body("{").send().await.unwrap().status(),
        400
    );
}

#[tokio::test]
async fn concurrent_message_is_409() {
    let dir = tempfile::tempdir().unwrap();
    // A listener that never answers keeps the exchange in flight until the 1s deadline.
    let silent = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
    let mut config = scripted_config(&scenario_path("predation.json"), dir.path());
    config.backends.clear();
    config.backends.insert(
        "slow".into(),
        netlogo_chat::config::BackendConfig::Http(netlogo_chat_core::llm::HttpBackendConfig {
            base_url: format!("http://{}/v1", silent.local_addr().unwrap()),
            model: "m".into(),
            api_key_env: None,
            timeout_secs: 1.0,
        }),
    );
    let server = TestServer::start(config).await;
    let client = reqwest::Client::new();
    let id = server.create_session(&client).await;
    let url = server.url(&format!("/api/sessions/{id}/messages"));
    assert_eq!(client.post(&url).json(&json!({"text": "one"})).send().await.unwrap().status(), 202);
    assert_eq!(client.post(&url).json(&json!({"text": "two"})).send().await.unwrap().status(), 409);
    let started = std::time::Instant::now();
    server.wait_idle(&client, &id).await;
    assert!(started.elapsed() >= Duration::from_millis(500));
    let events = server.events(&client, &id, 0).await;
    assert_eq!(types(&events), ["error"]);
    assert_eq!(events[0]["payload"]["code"], "backend-unavailable");
}

#[tokio::test]
async fn lint_and_search_endpoints() {
    let (server, _dir) = predation_server().await;
    let client = reqwest::Client::new();
    let ok: Value = client
        .post(server.url("/api/lint"))
        .json(&json!({"code": "to go fd 1 end"}))
        .send()
        .await
        .unwrap()
        .json()
        .await
        .unwrap();
    assert_eq!(ok, json!({"diagnostics": []}));
    let bad: Value = client
        .post(server.url("/api/lint"))
        .json(&json!({"code": "to go fdd 1 end"}))
        .send()
        .await
        .unwrap()
        .json()
        .await
        .unwrap();
    assert_eq!(bad["diagnostics"][0]["code"], "UNKNOWN-PRIMITIVE");
    assert_eq!(client.post(server.url("/api/lint")).json(&json!({"src": 1})).send().await.unwrap().status(), 400);

    let hits: Value = client
        .get(server.url("/api/docs/search?q=flocking&k=3"))
        .send()
        .await
        .unwrap()
        .json()
        .await
        .unwrap();
    let hits = hits["hits"].as_array().unwrap();
    assert!(hits.len() <= 3);
    assert!(hits.iter().any(|h| h["name"] == "Flocking" && h["kind"] == "example-model"));
    assert_eq!(client.get(server.url("/api/docs/search?k=3")).send().await.unwrap().status(), 400);
    assert_eq!(client.get(server.url("/api/docs/search?q=x&k=0")).send().await.unwrap().status(), 400);
    assert_eq!(client.get(server.url("/api/health")).send().await.unwrap().status(), 200);
}

#[tokio::test]
async fn explain_clean_chunk_adds_no_chunk() {
    let dir = tempfile::tempdir().unwrap();
    let scenario = debug_scenario(dir.path(), "to go fd 1 end", "Plan: explain\nAction: respond\nParameter: It moves turtles forward.");
    let server = TestServer::start(scripted_config(&scenario, &dir.path().join("data"))).await;
    let client = reqwest::Client::new();
    let id = server.create_session(&client).await;
    server.exchange(&client, &id, "write go").await;
    let url = server.url(&format!("/api/sessions/{id}/chunks/chunk-1/debug"));
    assert_eq!(client.post(&url).json(&json!({"mode": "auto-fix"})).send().await.unwrap().status(), 409);
    assert_eq!(client.post(&url).json(&json!({"mode": "dance"})).send().await.unwrap().status(), 400);
    assert_eq!(client.post(&url).json(&json!({"mode": "fix-with-ideas"})).send().await.unwrap().status(), 400);
    let missing = server.url(&format!("/api/sessions/{id}/chunks/chunk-9/debug"));
    assert_eq!(client.post(&missing).json(&json!({"mode": "explain"})).send().await.unwrap().status(), 404);

    let resp = client.post(&url).json(&json!({"mode": "explain"})).send().await.unwrap();
    assert_eq!(resp.status(), 202);
    let after = resp.json::<Value>().await.unwrap()["after"].as_u64().unwrap();
    server.wait_idle(&client, &id).await;
    let t = types(&server.events(&client, &id, after).await);
    assert!(t.contains(&"answer-fragment".to_string()));
    assert!(!t.contains(&"code-chunk".to_string()));
}

#[tokio::test]
async fn chunk_edit_fix_and_run() {
    let dir = tempfile::tempdir().unwrap();
    let fix = "Plan: fix\nAction: respond\nParameter: Use fd.\n```netlogo\nto go fd 1 end\n```";
    let scenario = debug_scenario(dir.path(), "to go fd 1 end", fix);
    let server = TestServer::start(scripted_config(&scenario, &dir.path().join("data"))).await;
    let client = reqwest::Client::new();
    let id = server.create_session(&client).await;
    server.exchange(&client, &id, "write go").await;

    let chunk_url = server.url(&format!("/api/sessions/{id}/chunks/chunk-1"));
    let edited: Value = client
        .put(&chunk_url)
        .json(&json!({"source": "to go fdd 1 end"}))
        .send()
        .await
        .unwrap()
        .json()
        .await
        .unwrap();
    assert_eq!(edited["chunk"]["revision"], 2);
    assert_eq!(edited["diagnostics"][0]["code"], "UNKNOWN-PRIMITIVE");
    let missing = server.url(&format!("/api/sessions/{id}/chunks/chunk-7"));
    assert_eq!(client.put(&missing).json(&json!({"source": "x"})).send().await.unwrap().status(), 404);
    assert_eq!(client.put(&chunk_url).json(&json!({})).send().await.unwrap().status(), 400);

    let resp = client
        .post(format!("{chunk_url}/debug"))
        .json(&json!({"mode": "auto-fix"}))
        .send()
        .await
        .unwrap();
    assert_eq!(resp.status(), 202);
    server.wait_idle(&client, &id).await;
    let session: Value = client.get(server.url(&format!("/api/sessions/{id}"))).send().await.unwrap().json().await.unwrap();
    assert_eq!(session["code_chunks"]["chunk-1"]["revision"], 3);
    assert_eq!(session["code_chunks"]["chunk-1"]["diagnostics"], json!([]));

    let run: Value = client.post(format!("{chunk_url}/run")).send().await.unwrap().json().await.unwrap();
    assert_eq!(run["status"], "not-configured");
}

#[tokio::test]
async fn websocket_streams_and_resumes() {
    let (server, _dir) = predation_server().await;
    let client = reqwest::Client::new();
    let id = server.create_session(&client).await;
    let (mut ws, _) = tokio_tungstenite::connect_async(server.ws_url(&format!("/api/sessions/{id}/stream")))
        .await
        .unwrap();
    server.exchange(&client, &id, "create a predation model").await;
    server.exchange(&client, &id, "Wolf and sheep").await;
    let total = server.events(&client, &id, 0).await.len();
    let mut seqs = Vec::new();
    while seqs.len() < total {
        let msg = tokio::time::timeout(Duration::from_secs(5), ws.next()).await.unwrap().unwrap().unwrap();
        let event: Value = serde_json::from_str(msg.to_text().unwrap()).unwrap();
        seqs.push(event["seq"].as_u64().unwrap());
    }
    assert_eq!(seqs, (1..=total as u64).collect::<Vec<_>>());

    let (mut resumed, _) = tokio_tungstenite::connect_async(server.ws_url(&format!("/api/sessions/{id}/stream?after=3")))
        .await
        .unwrap();
    let msg = tokio::time::timeout(Duration::from_secs(5), resumed.next()).await.unwrap().unwrap().unwrap();
    assert_eq!(serde_json::from_str::<Value>(msg.to_text().unwrap()).unwrap()["seq"], 4);
}

#[tokio::test]
async fn websocket_unknown_session_closes() {
    let (server, _dir) = predation_server().await;
    let (mut ws, _) = tokio_tungstenite::connect_async(server.ws_url("/api/sessions/missing/stream"))
        .await
        .unwrap();
    let msg = tokio::time::timeout(Duration::from_secs(5), ws.next()).await.unwrap().unwrap().unwrap();
    let Message::Close(Some(frame)) = msg else { panic!("{msg:?}") };
    assert_eq!(frame.code, CloseCode::from(4404));
}

#[tokio::test]
async fn serves_static_ui_when_configured() {
    let dir = tempfile::tempdir().unwrap();
    let ui = dir.path().join("ui");
    std::fs::create_dir_all(&ui).unwrap();
    std::fs::write(ui.join("index.html"), "<html>chat</html>").unwrap();
    let mut config = scripted_config(&scenario_path("predation.json"), &dir.path().join("data"));
    config.static_ui = Some(ui);
    let server = TestServer::start(config).await;
    let body = reqwest::get(server.url("/index.html")).await.unwrap().text().await.unwrap();
    assert_eq!(body, "<html>chat</html>");
}
