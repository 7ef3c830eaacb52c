//! One completion contract over several LLM backends, with per-phase
//! routing.

mod http;
mod scripted;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use async_trait::async_trait;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::prompt::{Phase, RenderedPrompt};

pub use http::{HttpBackend, HttpBackendConfig, Secret};
pub use scripted::{load_scenario, parse_scenario, ScriptStep, ScriptedBackend, ScriptedScenario};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LlmError {
    #[error("backend unavailable: {0}")]
    BackendUnavailable(String),
    #[error("scenario {0:?} has no step left for this request")]
    ScenarioExhausted(String),
    #[error("remote returned {status}: {body_excerpt}")]
    RemoteError { status: u16, body_excerpt: String },
    #[error("scenario line {line}: {reason}")]
    ScenarioParse { line: usize, reason: String },
    #[error("no backend registered as {0:?}")]
    UnknownBackend(String),
    #[error("invalid completion request: {0}")]
    InvalidRequest(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    System,
    User,
    Assistant,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChatMessage {
    pub role: Role,
    pub content: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompletionRequest {
    pub backend_id: String,
    pub messages: Vec<ChatMessage>,
    pub temperature: f64,
    pub max_tokens: u32,
    pub phase: Phase,
}

impl CompletionRequest {
    pub fn validate(&self) -> Result<(), LlmError> {
        match self.messages.first() {
            None => return Err(LlmError::InvalidRequest("no messages".into())),
            Some(m) if m.role != Role::System => {
                return Err(LlmError::InvalidRequest("first message must be the system prompt".into()))
            }
            _ => {}
        }
        if !(self.temperature.is_finite() && self.temperature >= 0.0) {
            return Err(LlmError::InvalidRequest(format!("temperature {}", self.temperature)));
        }
        Ok(())
    }

    /// Content of the last user message; the live part of the prompt.
    pub fn live_text(&self) -> &str {
        self.messages
            .iter()
            .rev()
            .find(|m| m.role == Role::User)
            .map_or("", |m| m.content.as_str())
    }
}

#[async_trait]
pub trait LlmBackend: Send + Sync {
    async fn complete(&self, request: &CompletionRequest) -> Result<String, LlmError>;
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseSettings {
    pub temperature: f64,
    pub max_tokens: u32,
}

impl PhaseSettings {
    pub fn default_for(phase: Phase) -> Self {
        let temperature = match phase {
            Phase::Respond => 0.7,
            Phase::Planning | Phase::Clarify | Phase::Fix => 0.2,
        };
        Self {
            temperature,
            max_tokens: 1024,
        }
    }
}

/// Registered backends plus a phase → backend-id routing table.
pub struct Gateway {
    backends: HashMap<String, Arc<dyn LlmBackend>>,
    routes: BTreeMap<Phase, String>,
    default_backend: String,
    settings: BTreeMap<Phase, PhaseSettings>,
}

impl std::fmt::Debug for Gateway {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut ids: Vec<_> = self.backends.keys().collect();
        ids.sort();
        f.debug_struct("Gateway")
            .field("backends", &ids)
            .field("routes", &self.routes)
            .field("default_backend", &self.default_backend)
            .finish()
    }
}

impl Gateway {
    /// Every phase goes to `backend` until routed elsewhere.
    pub fn new(default_id: impl Into<String>, backend: Arc<dyn LlmBackend>) -> Self {
        let default_backend = default_id.into();
        let mut backends = HashMap::new();
        backends.insert(default_backend.clone(), backend);
        Self {
            backends,
            routes: BTreeMap::new(),
            default_backend,
            settings: Phase::ALL.into_iter().map(|p| (p, PhaseSettings::default_for(p))).collect(),
        }
    }

    pub fn register(&mut self, id: impl Into<String>, backend: Arc<dyn LlmBackend>) {
        self.backends.insert(id.into(), backend);
    }

    pub fn route(&mut self, phase: Phase, backend_id: impl Into<String>) -> Result<(), LlmError> {
        let id = backend_id.into();
        if !self.backends.contains_key(&id) {
            return Err(LlmError::UnknownBackend(id));
        }
        self.routes.insert(phase, id);
        Ok(())
    }

    pub fn set_phase_settings(&mut self, phase: Phase, settings: PhaseSettings) {
        self.settings.insert(phase, settings);
    }

    pub fn backend_for(&self, phase: Phase) -> &str {
        self.routes.get(&phase).unwrap_or(&self.default_backend)
    }

    pub fn request(&self, phase: Phase, prompt: &RenderedPrompt) -> CompletionRequest {
        let settings = self.settings[&phase];
        let mut messages = vec![ChatMessage {
            role: Role::System,
            content: prompt.system.clone(),
        }];
        if !prompt.live.is_empty() {
            messages.push(ChatMessage {
                role: Role::User,
                content: prompt.live.clone(),
            });
        }
        CompletionRequest {
            backend_id: self.backend_for(phase).to_string(),
            messages,
            temperature: settings.temperature,
            max_tokens: settings.max_tokens,
            phase,
        }
    }

    pub async fn complete(&self, request: &CompletionRequest) -> Result<String, LlmError> {
        request.validate()?;
        let backend = self
            .backends
            .get(&request.backend_id)
            .ok_or_else(|| LlmError::UnknownBackend(request.backend_id.clone()))?;
        tracing::debug!(backend = %request.backend_id, phase = request.phase.as_str(), "completion request");
        let reply = backend.complete(request).await;
        match &reply {
            Ok(text) => tracing::debug!(backend = %request.backend_id, chars = text.len(), "completion reply"),
            Err(e) => tracing::warn!(backend = %request.backend_id, error = %e, "completion failed"),
        }
        reply
    }

    pub async fn complete_phase(&self, phase: Phase, prompt: &RenderedPrompt) -> Result<String, LlmError> {
        self.complete(&self.request(phase, prompt)).await
    }
}
