//! Command-line entry points. Each subcommand returns its stdout text and
//! exit code so it can be tested without a process.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use netlogo_chat_core::docs::{cited_search, Corpus, DocIndex};
use netlogo_chat_core::lint::{Diagnostic, Linter};
use netlogo_chat_core::llm::load_scenario;
use netlogo_chat_core::orchestrator::{replay, LoopConfig};

use crate::app::{build_orchestrator, router, AppState, StartupError};
use crate::config::ServiceConfig;
use crate::store::SessionStore;

#[derive(Debug, Parser)]
#[command(name = "netlogo-chat", version, about = "NetLogo programming assistant backend")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the HTTP and WebSocket service.
    Serve(ServeArgs),
    /// Check a NetLogo source file. Exits 1 when any error is found.
    Lint {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Search the documentation corpus.
    Search {
        query: String,
        #[arg(short, default_value_t = 5)]
        k: usize,
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Run a scripted exchange and print its events as JSON Lines.
    Replay {
        #[arg(long)]
        scenario: PathBuf,
        #[arg(long = "message", required = true, num_args = 1..)]
        messages: Vec<String>,
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long, default_value_t = 6)]
        max_iterations: u32,
    },
}

#[derive(Debug, Clone, Default, clap::Args)]
pub struct ServeArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub port: Option<u16>,
    #[arg(long)]
    pub corpus: Option<PathBuf>,
    /// `scripted:PATH` or `http`.
    #[arg(long)]
    pub backend: Option<String>,
    #[arg(long)]
    pub max_iterations: Option<u32>,
    #[arg(long)]
    pub data_dir: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Startup(#[from] StartupError),
    #[error("{0}")]
    Failed(String),
}

impl From<crate::config::ConfigError> for CliError {
    fn from(e: crate::config::ConfigError) -> Self {
        Self::Startup(e.into())
    }
}

pub struct Output {
    pub stdout: String,
    pub code: i32,
}

impl ServeArgs {
    /// Reads the config file, if any, and applies the overrides.
    pub fn resolve(&self) -> Result<ServiceConfig, CliError> {
        let mut config = match &self.config {
            Some(path) => ServiceConfig::load(path)?,
            None => ServiceConfig::default(),
        };
        if let Some(port) = self.port {
            config.listen.set_port(port);
        }
        if let Some(corpus) = &self.corpus {
            config.corpus = Some(corpus.clone());
        }
        if let Some(spec) = &self.backend {
            config.override_backend(spec)?;
        }
        if let Some(n) = self.max_iterations {
            config.max_iterations = n;
        }
        if let Some(dir) = &self.data_dir {
            config.data_dir = dir.clone();
        }
        config.validate()?;
        Ok(config)
    }
}

pub async fn serve(args: &ServeArgs) -> Result<(), CliError> {
    let config = args.resolve()?;
    let orchestrator = build_orchestrator(&config)?;
    let store = SessionStore::open(&config.data_dir).map_err(StartupError::from)?;
    let state = Arc::new(AppState::new(orchestrator, store));
    let app = router(
        state,
        Duration::from_secs_f64(config.llm_deadline_secs),
        config.static_ui.as_deref(),
    );
    let listener = tokio::net::TcpListener::bind(config.listen)
        .await
        .map_err(|e| CliError::Failed(format!("cannot listen on {}: {e}", config.listen)))?;
    tracing::info!(addr = %config.listen, "listening");
    axum::serve(listener, app)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
        .map_err(|e| CliError::Failed(e.to_string()))
}

fn format_diagnostic(file: &str, d: &Diagnostic) -> String {
    let severity = match d.severity {
        netlogo_chat_core::lint::Severity::Error => "error",
        netlogo_chat_core::lint::Severity::Warning => "warning",
    };
    format!(
        "{file}:{}:{}: {severity} [{}] {}\n",
        d.span.start.line, d.span.start.column, d.code, d.clarified_message
    )
}

pub fn lint(file: &std::path::Path, format: Format) -> Result<Output, CliError> {
    let source = std::fs::read_to_string(file)
        .map_err(|e| CliError::Failed(format!("cannot read {}: {e}", file.display())))?;
    let diagnostics = Linter::bundled().check(&source);
    let code = i32::from(
        diagnostics
            .iter()
            .any(|d| d.severity == netlogo_chat_core::lint::Severity::Error),
    );
    let stdout = match format {
        Format::Json => serde_json::to_string_pretty(&diagnostics).unwrap() + "\n",
        Format::Text => {
            let name = file.display().to_string();
            diagnostics.iter().map(|d| format_diagnostic(&name, d)).collect()
        }
    };
    Ok(Output { stdout, code })
}

fn corpus_or_bundled(path: Option<&std::path::Path>) -> Result<Arc<Corpus>, CliError> {
    Ok(Arc::new(match path {
        Some(p) => Corpus::ingest(p).map_err(StartupError::from)?,
        None => Corpus::bundled(),
    }))
}

pub fn search(query: &str, k: usize, corpus: Option<&std::path::Path>, format: Format) -> Result<Output, CliError> {
    if k == 0 {
        return Err(CliError::Failed("-k must be at least 1".into()));
    }
    let index = DocIndex::build(corpus_or_bundled(corpus)?).map_err(StartupError::from)?;
    let hits = cited_search(&index, query, k);
    let stdout = match format {
        Format::Json => serde_json::to_string_pretty(&hits).unwrap() + "\n",
        Format::Text => hits
            .iter()
            .enumerate()
            .map(|(i, h)| format!("{}. {} ({}) {:.3}\n   {}\n", i + 1, h.name, h.doc_id, h.score, h.url))
            .collect(),
    };
    Ok(Output { stdout, code: 0 })
}

pub async fn replay_transcript(
    scenario: &std::path::Path,
    messages: &[String],
    corpus: Option<&std::path::Path>,
    max_iterations: u32,
) -> Result<Output, CliError> {
    let scenario = load_scenario(scenario).map_err(|e| CliError::Failed(e.to_string()))?;
    let config = LoopConfig {
        max_iterations,
        ..LoopConfig::default()
    };
    let session = replay(scenario, corpus_or_bundled(corpus)?, messages, config)
        .await
        .map_err(|e| CliError::Failed(e.to_string()))?;
    let stdout = session
        .events
        .iter()
        .map(|e| serde_json::to_string(e).unwrap() + "\n")
        .collect();
    Ok(Output { stdout, code: 0 })
}

/// Runs one parsed command line.
pub async fn run(cli: Cli) -> Result<Output, CliError> {
    match cli.command {
        Command::Serve(args) => serve(&args).await.map(|()| Output {
            stdout: String::new(),
            code: 0,
        }),
        Command::Lint { file, format } => lint(&file, format),
        Command::Search {
            query,
            k,
            corpus,
            format,
        } => search(&query, k, corpus.as_deref(), format),
        Command::Replay {
            scenario,
            messages,
            corpus,
            max_iterations,
        } => replay_transcript(&scenario, &messages, corpus.as_deref(), max_iterations).await,
    }
}
