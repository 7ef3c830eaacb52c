use netlogo_chat_core::prompt::{slots, Bindings, Phase, PromptError, PromptTemplate, TemplateSet};
use proptest::prelude::*;

fn bind(pairs: &[(&str, &str)]) -> Bindings {
    pairs.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

#[test]
fn load_dir_reads_every_phase() {
    let dir = std::env::temp_dir().join(format!("nlc-templates-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for phase in ["planning", "clarify", "respond"] {
        let t = format!(r#"{{"template_id": "{phase}", "preamble": "p", "slots": [{{"name": "user-request"}}]}}"#);
        std::fs::write(dir.join(format!("{phase}.json")), t).unwrap();
    }
    std::fs::write(dir.join("notes.txt"), "ignored").unwrap();
    assert_eq!(TemplateSet::load_dir(&dir).unwrap_err(), PromptError::MissingTemplate("fix".into()));

    std::fs::write(
        dir.join("fix.json"),
        r#"{"template_id": "fix", "preamble": "Fix it.", "slots": [{"name": "user-request"}]}"#,
    )
    .unwrap();
    let set = TemplateSet::load_dir(&dir).unwrap();
    let text = set.get(Phase::Fix).render(&bind(&[(slots::USER_REQUEST, "x")])).unwrap();
    assert!(text.starts_with("Fix it."));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn malformed_template_is_rejected() {
    assert!(matches!(PromptTemplate::from_json("{"), Err(PromptError::Template(_))));
}

proptest! {
    #[test]
    fn render_is_injective_in_user_request(a in "\\PC{1,60}", b in "\\PC{1,60}", summary in "\\PC{0,40}") {
        prop_assume!(a != b);
        let set = TemplateSet::bundled();
        for phase in [Phase::Planning, Phase::Clarify, Phase::Respond] {
            let t = set.get(phase);
            let ra = t.render(&bind(&[(slots::USER_REQUEST, &a), (slots::CONVERSATION_SUMMARY, &summary)])).unwrap();
            let rb = t.render(&bind(&[(slots::USER_REQUEST, &b), (slots::CONVERSATION_SUMMARY, &summary)])).unwrap();
            prop_assert_ne!(ra, rb);
        }
    }
}
