mod common;

use common::{scenario_path, scripted_config, session, TestServer};
use netlogo_chat::store::SessionStore;
use netlogo_chat_core::orchestrator::Session;
use proptest::prelude::*;
use serde_json::Value;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn sessions_survive_json_and_disk(s in session()) {
        let text = serde_json::to_string(&s).unwrap();
        prop_assert_eq!(&serde_json::from_str::<Session>(&text).unwrap(), &s);

        let dir = tempfile::tempdir().unwrap();
        let store = SessionStore::open(dir.path()).unwrap();
        store.save(&s).unwrap();
        prop_assert_eq!(store.load(&s.session_id).unwrap(), Some(s));
    }
}

#[tokio::test]
async fn restart_keeps_turns_chunks_and_sequence() {
    let dir = tempfile::tempdir().unwrap();
    let config = scripted_config(&scenario_path("predation.json"), dir.path());
    let client = reqwest::Client::new();

    let first = TestServer::start(config.clone()).await;
    let id = first.create_session(&client).await;
    first.exchange(&client, &id, "create a predation model").await;
    let before: Value = client.get(first.url(&format!("/api/sessions/{id}"))).send().await.unwrap().json().await.unwrap();
    first.stop();

    // A fresh process on the same data dir. Its scenario drops the step the
    // first process already consumed.
    let rest = dir.path().join("rest.json");
    let mut scenario: Value = serde_json::from_str(&std::fs::read_to_string(scenario_path("predation.json")).unwrap()).unwrap();
    scenario["steps"].as_array_mut().unwrap().remove(0);
    std::fs::write(&rest, scenario.to_string()).unwrap();
    let second = TestServer::start(scripted_config(&rest, dir.path())).await;

    let after: Value = client.get(second.url(&format!("/api/sessions/{id}"))).send().await.unwrap().json().await.unwrap();
    assert_eq!(after["turns"], before["turns"]);
    assert_eq!(after["events"], before["events"]);
    assert!(after["pending_clarification"].is_array());

    let events = second.exchange(&client, &id, "Wolf and sheep").await;
    let last_before = before["events"].as_array().unwrap().last().unwrap()["seq"].as_u64().unwrap();
    let seqs: Vec<u64> = events.iter().map(|e| e["seq"].as_u64().unwrap()).collect();
    assert_eq!(seqs[0], last_before + 1);
    assert!(seqs.windows(2).all(|w| w[1] == w[0] + 1));

    let stored = SessionStore::open(dir.path()).unwrap().load(&id).unwrap().unwrap();
    stored.check_invariants().unwrap();
    assert!(stored.code_chunks.contains_key("chunk-1"));
}
