use std::fs;
use std::path::Path;
use std::sync::Mutex;

use async_trait::async_trait;
use serde::{Deserialize, Serialize};

use super::{CompletionRequest, LlmBackend, LlmError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScriptStep {
    /// Substring of the live prompt that selects this step. Steps without
    /// one are ordinal and fire in file order.
    #[serde(rename = "match", default, skip_serializing_if = "Option::is_none")]
    pub match_text: Option<String>,
    pub reply: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScriptedScenario {
    pub scenario_id: String,
    pub steps: Vec<ScriptStep>,
}

pub fn parse_scenario(text: &str) -> Result<ScriptedScenario, LlmError> {
    let scenario: ScriptedScenario = serde_json::from_str(text).map_err(|e| LlmError::ScenarioParse {
        line: e.line(),
        reason: e.to_string(),
    })?;
    if scenario.scenario_id.trim().is_empty() {
        return Err(LlmError::ScenarioParse {
            line: 1,
            reason: "scenario_id is empty".into(),
        });
    }
    Ok(scenario)
}

pub fn load_scenario(path: impl AsRef<Path>) -> Result<ScriptedScenario, LlmError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| LlmError::ScenarioParse {
        line: 0,
        reason: format!("{}: {e}", path.display()),
    })?;
    parse_scenario(&text)
}

#[derive(Debug)]
struct State {
    consumed: Vec<bool>,
    requests: Vec<CompletionRequest>,
}

/// Deterministic stand-in for a model. A request takes the first unused
/// step whose `match` occurs in the live prompt (case-insensitive),
/// otherwise the next unused ordinal step.
#[derive(Debug)]
pub struct ScriptedBackend {
    scenario: ScriptedScenario,
    state: Mutex<State>,
}

impl ScriptedBackend {
    pub fn new(scenario: ScriptedScenario) -> Self {
        let consumed = vec![false; scenario.steps.len()];
        Self {
            scenario,
            state: Mutex::new(State {
                consumed,
                requests: Vec::new(),
            }),
        }
    }

    pub fn scenario(&self) -> &ScriptedScenario {
        &self.scenario
    }

    /// Every request received so far, in order.
    pub fn requests(&self) -> Vec<CompletionRequest> {
        self.state.lock().expect("scripted state").requests.clone()
    }

    pub fn remaining(&self) -> usize {
        self.state.lock().expect("scripted state").consumed.iter().filter(|c| !**c).count()
    }
}

#[async_trait]
impl LlmBackend for ScriptedBackend {
    async fn complete(&self, request: &CompletionRequest) -> Result<String, LlmError> {
        let mut state = self.state.lock().expect("scripted state");
        state.requests.push(request.clone());
        let live = request.live_text().to_lowercase();
        let steps = &self.scenario.steps;
        let pick = (0..steps.len())
            .find(|&i| {
                !state.consumed[i]
                    && steps[i]
                        .match_text
                        .as_ref()
                        .is_some_and(|m| live.contains(&m.to_lowercase()))
            })
            .or_else(|| (0..steps.len()).find(|&i| !state.consumed[i] && steps[i].match_text.is_none()));
        match pick {
            Some(i) => {
                state.consumed[i] = true;
                Ok(steps[i].reply.clone())
            }
            None => Err(LlmError::ScenarioExhausted(self.scenario.scenario_id.clone())),
        }
    }
}
