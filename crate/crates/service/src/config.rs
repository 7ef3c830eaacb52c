//! Service configuration, read from TOML.
//!
//! Relative paths are resolved against the directory of the config file.
//! API keys never appear here: an HTTP backend names the environment
//! variable that holds its key.

use std::collections::BTreeMap;
use std::fs;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};

use netlogo_chat_core::llm::HttpBackendConfig;
use netlogo_chat_core::prompt::Phase;
use serde::Deserialize;
use thiserror::Error;

pub const DEFAULT_LISTEN: &str = "127.0.0.1:8080";
pub const DEFAULT_DEADLINE_SECS: f64 = 30.0;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid config {path}: {reason}")]
    Parse { path: String, reason: String },
    #[error("{field} path does not exist: {path}")]
    MissingPath { field: String, path: String },
    #[error("cannot create data dir {path}: {source}")]
    DataDir {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("no backends configured; add a [backends.<id>] table or pass --backend scripted:PATH")]
    NoBackends,
    #[error("routing refers to unknown backend {0:?}")]
    UnknownBackend(String),
    #[error("--backend http needs exactly one http backend in the config, found {0}")]
    AmbiguousHttpBackend(usize),
    #[error("invalid --backend value {0:?}; expected scripted:PATH or http")]
    BackendSpec(String),
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum BackendConfig {
    Scripted { scenario: PathBuf },
    Http(HttpBackendConfig),
}

#[derive(Debug, Clone, PartialEq, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RoutingConfig {
    /// Backend for every phase without its own entry. Optional when exactly
    /// one backend is configured.
    #[serde(default)]
    pub default: Option<String>,
    #[serde(default)]
    pub planning: Option<String>,
    #[serde(default)]
    pub clarify: Option<String>,
    #[serde(default)]
    pub respond: Option<String>,
    #[serde(default)]
    pub fix: Option<String>,
}

impl RoutingConfig {
    pub fn for_phase(&self, phase: Phase) -> Option<&str> {
        match phase {
            Phase::Planning => self.planning.as_deref(),
            Phase::Clarify => self.clarify.as_deref(),
            Phase::Respond => self.respond.as_deref(),
            Phase::Fix => self.fix.as_deref(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ServiceConfig {
    #[serde(default = "default_listen")]
    pub listen: SocketAddr,
    /// JSON Lines corpus; the bundled corpus when absent.
    #[serde(default)]
    pub corpus: Option<PathBuf>,
    /// Directory of prompt templates; the bundled set when absent.
    #[serde(default)]
    pub templates_dir: Option<PathBuf>,
    /// Clarification table; the bundled table when absent.
    #[serde(default)]
    pub clarifications: Option<PathBuf>,
    #[serde(default = "default_data_dir")]
    pub data_dir: PathBuf,
    #[serde(default)]
    pub static_ui: Option<PathBuf>,
    #[serde(default = "default_max_iterations")]
    pub max_iterations: u32,
    /// Upper bound on one LLM call. Request handlers answer within this
    /// plus two seconds.
    #[serde(default = "default_deadline")]
    pub llm_deadline_secs: f64,
    #[serde(default)]
    pub backends: BTreeMap<String, BackendConfig>,
    #[serde(default)]
    pub routing: RoutingConfig,
}

fn default_listen() -> SocketAddr {
    DEFAULT_LISTEN.parse().unwrap()
}

fn default_data_dir() -> PathBuf {
    PathBuf::from("data")
}

fn default_max_iterations() -> u32 {
    6
}

fn default_deadline() -> f64 {
    DEFAULT_DEADLINE_SECS
}

impl Default for ServiceConfig {
    fn default() -> Self {
        Self::from_toml("").unwrap()
    }
}

impl ServiceConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::Parse {
            path: "<inline>".into(),
            reason: e.to_string(),
        })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ConfigError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: path.display().to_string(),
            source,
        })?;
        let mut config: Self = toml::from_str(&text).map_err(|e| ConfigError::Parse {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
        if let Some(base) = path.parent() {
            config.resolve_relative(base);
        }
        Ok(config)
    }

    fn resolve_relative(&mut self, base: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        };
        for p in [&mut self.corpus, &mut self.templates_dir, &mut self.clarifications, &mut self.static_ui]
            .into_iter()
            .flatten()
        {
            fix(p);
        }
        fix(&mut self.data_dir);
        for backend in self.backends.values_mut() {
            if let BackendConfig::Scripted { scenario } = backend {
                fix(scenario);
            }
        }
    }

    /// Applies a `--backend` override: `scripted:PATH` replaces every
    /// backend with one scripted backend; `http` routes every phase to the
    /// single configured http backend.
    pub fn override_backend(&mut self, spec: &str) -> Result<(), ConfigError> {
        if let Some(path) = spec.strip_prefix("scripted:") {
            if path.is_empty() {
                return Err(ConfigError::BackendSpec(spec.into()));
            }
            self.backends = BTreeMap::from([(
                "scripted".to_string(),
                BackendConfig::Scripted {
                    scenario: PathBuf::from(path),
                },
            )]);
            self.routing = RoutingConfig {
                default: Some("scripted".into()),
                ..RoutingConfig::default()
            };
            return Ok(());
        }
        if spec != "http" {
            return Err(ConfigError::BackendSpec(spec.into()));
        }
        let http: Vec<String> = self
            .backends
            .iter()
            .filter(|(_, b)| matches!(b, BackendConfig::Http(_)))
            .map(|(id, _)| id.clone())
            .collect();
        let [id] = http.as_slice() else {
            return Err(ConfigError::AmbiguousHttpBackend(http.len()));
        };
        self.routing = RoutingConfig {
            default: Some(id.clone()),
            ..RoutingConfig::default()
        };
        Ok(())
    }

    /// The backend id used for phases without their own route.
    pub fn default_backend(&self) -> Result<&str, ConfigError> {
        match &self.routing.default {
            Some(id) => Ok(id),
            None if self.backends.len() == 1 => Ok(self.backends.keys().next().unwrap()),
            None if self.backends.is_empty() => Err(ConfigError::NoBackends),
            None => Err(ConfigError::Invalid(
                "several backends are configured; set routing.default".into(),
            )),
        }
    }

    /// Checks every referenced path and backend id, and creates the data
    /// directory.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let must_exist = |field: &str, p: &Path| {
            if p.exists() {
                Ok(())
            } else {
                Err(ConfigError::MissingPath {
                    field: field.into(),
                    path: p.display().to_string(),
                })
            }
        };
        for (field, p) in [
            ("corpus", &self.corpus),
            ("templates_dir", &self.templates_dir),
            ("clarifications", &self.clarifications),
            ("static_ui", &self.static_ui),
        ] {
            if let Some(p) = p {
                must_exist(field, p)?;
            }
        }
        for (id, backend) in &self.backends {
            if let BackendConfig::Scripted { scenario } = backend {
                must_exist(&format!("backends.{id}.scenario"), scenario)?;
            }
        }
        if self.max_iterations == 0 {
            return Err(ConfigError::Invalid("max_iterations must be at least 1".into()));
        }
        if !(self.llm_deadline_secs.is_finite() && self.llm_deadline_secs > 0.0) {
            return Err(ConfigError::Invalid("llm_deadline_secs must be positive".into()));
        }
        let default = self.default_backend()?;
        let routed = std::iter::once(default).chain(Phase::ALL.iter().filter_map(|p| self.routing.for_phase(*p)));
        for id in routed {
            if !self.backends.contains_key(id) {
                return Err(ConfigError::UnknownBackend(id.into()));
            }
        }
        fs::create_dir_all(&self.data_dir).map_err(|source| ConfigError::DataDir {
            path: self.data_dir.display().to_string(),
            source,
        })
    }
}
