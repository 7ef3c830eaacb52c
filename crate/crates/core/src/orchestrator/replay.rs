use std::sync::Arc;

use chrono::{Duration, TimeZone, Utc};

use super::{LoopConfig, NoopSink, Orchestrator, OrchestratorError, Session, SteppingClock};
use crate::docs::{Corpus, DocIndex, DocError};
use crate::lint::Linter;
use crate::llm::{Gateway, ScriptedBackend, ScriptedScenario};
use crate::prompt::TemplateSet;

pub const REPLAY_SESSION_ID: &str = "replay";

/// Starts at 2024-01-01T00:00:00Z and advances one second per reading.
pub fn replay_clock() -> SteppingClock {
    SteppingClock::new(Utc.with_ymd_and_hms(2024, 1, 1, 0, 0, 0).unwrap(), Duration::seconds(1))
}

/// Runs `messages` through a fresh session against `scenario`, using the
/// bundled templates and linter and a deterministic clock. Backend failures
/// stay in the transcript as error events; the next message still runs.
pub async fn replay(
    scenario: ScriptedScenario,
    corpus: Arc<Corpus>,
    messages: &[String],
    config: LoopConfig,
) -> Result<Session, ReplayError> {
    let index = DocIndex::build(corpus)?;
    let gateway = Gateway::new("scripted", Arc::new(ScriptedBackend::new(scenario)));
    let orchestrator = Orchestrator::new(
        Arc::new(gateway),
        Arc::new(index),
        Arc::new(Linter::bundled()),
        Arc::new(TemplateSet::bundled()),
        Arc::new(replay_clock()),
    )
    .with_config(config);
    let mut session = orchestrator.new_session(REPLAY_SESSION_ID);
    for message in messages {
        match orchestrator.handle_user_message(&mut session, message, &NoopSink).await {
            Ok(()) | Err(OrchestratorError::BackendUnavailable(_)) => {}
            Err(e) => return Err(e.into()),
        }
    }
    Ok(session)
}

#[derive(Debug, thiserror::Error)]
pub enum ReplayError {
    #[error(transparent)]
    Docs(#[from] DocError),
    #[error(transparent)]
    Orchestrator(#[from] OrchestratorError),
}
