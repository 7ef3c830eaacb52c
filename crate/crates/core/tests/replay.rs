use std::sync::Arc;

use netlogo_chat_core::docs::Corpus;
use netlogo_chat_core::llm::parse_scenario;
use netlogo_chat_core::orchestrator::{replay, EventBody, LoopConfig};

const PREDATION: &str = include_str!("../data/scenarios/predation.json");

async fn transcript() -> String {
    let scenario = parse_scenario(PREDATION).unwrap();
    let messages = ["create a predation model".to_string(), "Wolf and sheep".to_string()];
    let session = replay(scenario, Arc::new(Corpus::bundled()), &messages, LoopConfig::default())
        .await
        .unwrap();
    session.check_invariants().unwrap();
    session
        .events
        .iter()
        .map(|e| serde_json::to_string(e).unwrap() + "\n")
        .collect()
}

#[tokio::test]
async fn replay_is_byte_identical_across_runs() {
    let first = transcript().await;
    assert_eq!(first, transcript().await);
    assert_eq!(first, transcript().await);
}

#[tokio::test]
async fn predation_transcript_shape() {
    let text = transcript().await;
    let types: Vec<String> = text
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["type"].as_str().unwrap().to_string())
        .collect();
    let clar = types.iter().position(|t| t == "clarification").unwrap();
    let results = types.iter().position(|t| t == "search-results").unwrap();
    let answer = types.iter().position(|t| t == "answer-fragment").unwrap();
    let chunk = types.iter().position(|t| t == "code-chunk").unwrap();
    assert!(clar < results && results < answer && answer < chunk);
    assert_eq!(types.last().unwrap(), "diagnostics");
}

#[tokio::test]
async fn exhausted_scenario_stays_in_transcript() {
    let scenario = parse_scenario(r#"{"scenario_id": "short", "steps": []}"#).unwrap();
    let messages = ["hello".to_string(), "again".to_string()];
    let session = replay(scenario, Arc::new(Corpus::bundled()), &messages, LoopConfig::default())
        .await
        .unwrap();
    let errors = session
        .events
        .iter()
        .filter(|e| matches!(e.body, EventBody::Error { .. }))
        .count();
    assert_eq!(errors, 2);
    assert_eq!(session.turns.len(), 4);
}
