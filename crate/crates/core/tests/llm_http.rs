use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use axum::extract::State;
use axum::http::{HeaderMap, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::post;
use axum::{Json, Router};
use netlogo_chat_core::llm::{Gateway, HttpBackend, HttpBackendConfig, LlmError, Secret};
use netlogo_chat_core::prompt::{Phase, RenderedPrompt};
use serde_json::{json, Value};

const KEY: &str = "sk-test-4f1d9c";

/// Authorization header and body of each request.
type Request = (Option<String>, Value);

#[derive(Clone, Default)]
struct Seen(Arc<Mutex<Vec<Request>>>);

// Behaviour is chosen by the requested model name.
async fn completions(State(seen): State<Seen>, headers: HeaderMap, Json(body): Json<Value>) -> Response {
    let auth = headers.get("authorization").map(|v| v.to_str().unwrap().to_string());
    seen.0.lock().unwrap().push((auth.clone(), body.clone()));
    match body["model"].as_str().unwrap() {
        "ok" => Json(json!({"choices": [{"message": {"role": "assistant", "content": "Plan: p Action: search Parameter: ants"}}]}))
            .into_response(),
        "echo-key" => (StatusCode::UNAUTHORIZED, format!("bad credential: {}", auth.unwrap_or_default())).into_response(),
        "slow" => {
            tokio::time::sleep(Duration::from_secs(3)).await;
            Json(json!({"choices": []})).into_response()
        }
        "echo-ok" => Json(json!({"choices": [{"message": {"content": format!("got {}", auth.unwrap_or_default())}}]}))
            .into_response(),
        "garbage" => "not json".into_response(),
        _ => Json(json!({"choices": []})).into_response(),
    }
}

async fn mock() -> (String, Seen) {
    let seen = Seen::default();
    let app = Router::new().route("/v1/chat/completions", post(completions)).with_state(seen.clone());
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    tokio::spawn(async move { axum::serve(listener, app).await.unwrap() });
    (format!("http://{addr}/v1/"), seen)
}

fn backend(base_url: &str, model: &str, timeout_secs: f64) -> HttpBackend {
    let config = HttpBackendConfig {
        base_url: base_url.into(),
        model: model.into(),
        api_key_env: None,
        timeout_secs,
    };
    HttpBackend::with_key(config, Secret::new(KEY)).unwrap()
}

fn prompt() -> RenderedPrompt {
    RenderedPrompt {
        system: "be brief".into(),
        live: "### Current request\n## User request\nants".into(),
    }
}

async fn call(b: HttpBackend) -> Result<String, LlmError> {
    Gateway::new("http", Arc::new(b)).complete_phase(Phase::Planning, &prompt()).await
}

#[tokio::test]
async fn success_sends_wire_request_with_bearer() {
    let (url, seen) = mock().await;
    let b = backend(&url, "ok", 5.0);
    assert!(b.endpoint().ends_with("/v1/chat/completions"));
    assert_eq!(call(b).await.unwrap(), "Plan: p Action: search Parameter: ants");
    let seen = seen.0.lock().unwrap();
    let (auth, body) = &seen[0];
    assert_eq!(auth.as_deref(), Some(format!("Bearer {KEY}").as_str()));
    assert_eq!(body["model"], "ok");
    assert_eq!(body["temperature"], 0.2);
    assert_eq!(body["messages"][0]["role"], "system");
    assert_eq!(body["messages"][1]["role"], "user");
    assert_eq!(body["messages"][1]["content"], prompt().live);
}

#[tokio::test]
async fn error_status_is_scrubbed() {
    let (url, _) = mock().await;
    let err = call(backend(&url, "echo-key", 5.0)).await.unwrap_err();
    let LlmError::RemoteError { status, body_excerpt } = &err else { panic!("{err:?}") };
    assert_eq!(*status, 401);
    assert!(body_excerpt.contains("[redacted]"));
    assert!(!err.to_string().contains(KEY));
    assert!(!format!("{err:?}").contains(KEY));
}

#[tokio::test]
async fn echoed_key_in_reply_is_scrubbed() {
    let (url, _) = mock().await;
    assert_eq!(call(backend(&url, "echo-ok", 5.0)).await.unwrap(), "got Bearer [redacted]");
}

#[tokio::test]
async fn slow_backend_times_out() {
    let (url, _) = mock().await;
    let started = Instant::now();
    let err = call(backend(&url, "slow", 0.5)).await.unwrap_err();
    assert!(matches!(err, LlmError::BackendUnavailable(_)), "{err:?}");
    assert!(started.elapsed() < Duration::from_secs(2));
}

#[tokio::test]
async fn malformed_and_empty_replies_are_unavailable() {
    let (url, _) = mock().await;
    for model in ["garbage", "empty"] {
        let err = call(backend(&url, model, 5.0)).await.unwrap_err();
        assert!(matches!(err, LlmError::BackendUnavailable(_)), "{model}: {err:?}");
    }
}

#[tokio::test]
async fn unreachable_host_is_unavailable() {
    let listener = std::net::TcpListener::bind("127.0.0.1:0").unwrap();
    let url = format!("http://{}/v1", listener.local_addr().unwrap());
    drop(listener);
    let err = call(backend(&url, "ok", 2.0)).await.unwrap_err();
    assert!(matches!(err, LlmError::BackendUnavailable(_)));
    assert!(!err.to_string().contains(KEY));
}

#[test]
fn key_comes_from_named_env_var() {
    std::env::set_var("NLC_TEST_KEY_VAR", KEY);
    let config = HttpBackendConfig {
        base_url: "http://127.0.0.1:9".into(),
        model: "m".into(),
        api_key_env: Some("NLC_TEST_KEY_VAR".into()),
        timeout_secs: 1.0,
    };
    let b = HttpBackend::new(config).unwrap();
    assert!(!format!("{b:?}").contains(KEY));
}
