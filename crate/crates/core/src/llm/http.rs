use std::time::Duration;

use async_trait::async_trait;
use serde::{Deserialize, Serialize};

use super::{ChatMessage, CompletionRequest, LlmBackend, LlmError};

const EXCERPT_CHARS: usize = 300;
const REDACTED: &str = "[redacted]";

/// A credential held only in memory. Formatting never reveals it.
#[derive(Clone, Default)]
pub struct Secret(Option<String>);

impl Secret {
    pub fn new(value: impl Into<String>) -> Self {
        let value = value.into();
        Self((!value.is_empty()).then_some(value))
    }

    pub fn from_env(var: &str) -> Self {
        std::env::var(var).map(Self::new).unwrap_or_default()
    }

    pub fn expose(&self) -> Option<&str> {
        self.0.as_deref()
    }

    /// Removes every occurrence of the secret from `text`.
    pub fn scrub(&self, text: &str) -> String {
        match &self.0 {
            Some(s) => text.replace(s.as_str(), REDACTED),
            None => text.to_string(),
        }
    }
}

impl std::fmt::Debug for Secret {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(if self.0.is_some() { "Secret(***)" } else { "Secret(none)" })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HttpBackendConfig {
    /// Base of an OpenAI-compatible API, e.g. `https://api.openai.com/v1`.
    pub base_url: String,
    pub model: String,
    /// Name of the environment variable that holds the API key.
    #[serde(default)]
    pub api_key_env: Option<String>,
    #[serde(default = "default_timeout_secs")]
    pub timeout_secs: f64,
}

fn default_timeout_secs() -> f64 {
    30.0
}

#[derive(Serialize)]
struct WireRequest<'a> {
    model: &'a str,
    messages: &'a [ChatMessage],
    temperature: f64,
    max_tokens: u32,
}

#[derive(Deserialize)]
struct WireResponse {
    choices: Vec<WireChoice>,
}

#[derive(Deserialize)]
struct WireChoice {
    message: WireMessage,
}

#[derive(Deserialize)]
struct WireMessage {
    content: Option<String>,
}

/// Chat-completions client. The request deadline covers connect, send and
/// reading the body.
#[derive(Debug)]
pub struct HttpBackend {
    config: HttpBackendConfig,
    key: Secret,
    timeout: Duration,
    client: reqwest::Client,
}

impl HttpBackend {
    pub fn new(config: HttpBackendConfig) -> Result<Self, LlmError> {
        let key = config.api_key_env.as_deref().map(Secret::from_env).unwrap_or_default();
        Self::with_key(config, key)
    }

    pub fn with_key(config: HttpBackendConfig, key: Secret) -> Result<Self, LlmError> {
        if !(config.timeout_secs.is_finite() && config.timeout_secs > 0.0) {
            return Err(LlmError::InvalidRequest(format!("timeout_secs {}", config.timeout_secs)));
        }
        let timeout = Duration::from_secs_f64(config.timeout_secs);
        let client = reqwest::Client::builder()
            .timeout(timeout)
            .build()
            .map_err(|e| LlmError::BackendUnavailable(key.scrub(&e.to_string())))?;
        Ok(Self {
            config,
            key,
            timeout,
            client,
        })
    }

    pub fn endpoint(&self) -> String {
        format!("{}/chat/completions", self.config.base_url.trim_end_matches('/'))
    }

    async fn send(&self, request: &CompletionRequest) -> Result<String, LlmError> {
        let body = WireRequest {
            model: &self.config.model,
            messages: &request.messages,
            temperature: request.temperature,
            max_tokens: request.max_tokens,
        };
        let mut builder = self.client.post(self.endpoint()).json(&body);
        if let Some(key) = self.key.expose() {
            builder = builder.bearer_auth(key);
        }
        let unavailable = |e: reqwest::Error| LlmError::BackendUnavailable(self.key.scrub(&e.to_string()));
        let response = builder.send().await.map_err(unavailable)?;
        let status = response.status();
        let text = response.text().await.map_err(unavailable)?;
        if !status.is_success() {
            let excerpt: String = self.key.scrub(&text).chars().take(EXCERPT_CHARS).collect();
            return Err(LlmError::RemoteError {
                status: status.as_u16(),
                body_excerpt: excerpt,
            });
        }
        let parsed: WireResponse = serde_json::from_str(&text)
            .map_err(|e| LlmError::BackendUnavailable(format!("malformed completion response: {e}")))?;
        parsed
            .choices
            .into_iter()
            .next()
            .and_then(|c| c.message.content)
            // A remote that echoes the key must not get it into the transcript.
            .map(|content| self.key.scrub(&content))
            .ok_or_else(|| LlmError::BackendUnavailable("completion response has no choices".into()))
    }
}

#[async_trait]
impl LlmBackend for HttpBackend {
    async fn complete(&self, request: &CompletionRequest) -> Result<String, LlmError> {
        // The client timeout already applies; this guards body streaming
        // edge cases so a call can never outlive the deadline.
        match tokio::time::timeout(self.timeout + Duration::from_millis(250), self.send(request)).await {
            Ok(result) => result,
            Err(_) => Err(LlmError::BackendUnavailable(format!(
                "no response within {:.1}s",
                self.timeout.as_secs_f64()
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn secret_never_formats() {
        let s = Secret::new("sk-live-123");
        assert_eq!(format!("{s:?}"), "Secret(***)");
        assert_eq!(s.scrub("Bearer sk-live-123 ok"), "Bearer [redacted] ok");
        assert_eq!(Secret::new("").expose(), None);
    }

    #[test]
    fn config_rejects_bad_timeout() {
        let config = HttpBackendConfig {
            base_url: "http://127.0.0.1:9".into(),
            model: "m".into(),
            api_key_env: None,
            timeout_secs: 0.0,
        };
        assert!(HttpBackend::new(config).is_err());
    }
}
