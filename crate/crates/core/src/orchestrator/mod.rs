//! The plan/act loop: render a prompt, ask the model for one structured
//! step, carry it out, and re-plan after every search.
//!
//! Every operation takes the session by `&mut`, so calls on one session are
//! serialized by construction. Events are recorded in the session and also
//! handed to an [`EventSink`] as they happen.

mod clock;
mod replay;
mod session;

use std::sync::Arc;

use async_trait::async_trait;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::docs::{cited_search, CitedHit, Retriever};
use crate::lint::{ChunkOrigin, CodeChunk, Diagnostic, ErrorContext, Linter};
use crate::llm::Gateway;
use crate::prompt::{
    extract_code_blocks, parse_step, slots, Action, Bindings, Phase, PromptError, StructuredStep, TemplateSet,
};

pub use clock::{Clock, SteppingClock, SystemClock};
pub use replay::{replay, replay_clock, ReplayError, REPLAY_SESSION_ID};
pub use session::{
    AgentEvent, ContextDigest, DebugMode, EventBody, RetrievalRecord, Session, SystemRecord, Turn, TurnBody,
    SYNOPSIS_CHARS,
};

pub mod error_codes {
    pub const BACKEND_UNAVAILABLE: &str = "backend-unavailable";
    pub const MAX_ITERATIONS: &str = "max-iterations";
    pub const NO_FIX: &str = "no-fix";
    pub const TEMPLATE: &str = "template";
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrchestratorError {
    #[error("message is empty")]
    EmptyMessage,
    #[error("no chunk {0:?} in this session")]
    ChunkNotFound(String),
    #[error("chunk {0:?} has no diagnostics to fix")]
    NothingToFix(String),
    #[error("LLM backend unavailable: {0}")]
    BackendUnavailable(String),
    #[error(transparent)]
    Prompt(#[from] PromptError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopConfig {
    pub max_iterations: u32,
    /// Turns quoted verbatim in the planning context.
    pub summary_turns: usize,
    pub search_k: usize,
    /// Characters per answer-fragment event.
    pub fragment_chars: usize,
    /// Hits quoted in the fallback answer after running out of iterations.
    pub fallback_hits: usize,
    /// Documentation lookups made for one debug request.
    pub debug_queries: usize,
}

impl Default for LoopConfig {
    fn default() -> Self {
        Self {
            max_iterations: 6,
            summary_turns: 6,
            search_k: 5,
            fragment_chars: 400,
            fallback_hits: 3,
            debug_queries: 3,
        }
    }
}

pub trait EventSink: Send + Sync {
    fn emit(&self, event: &AgentEvent);
}

impl<F: Fn(&AgentEvent) + Send + Sync> EventSink for F {
    fn emit(&self, event: &AgentEvent) {
        self(event)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct NoopSink;

impl EventSink for NoopSink {
    fn emit(&self, _: &AgentEvent) {}
}

/// Hook for running a chunk in an external NetLogo runtime.
#[async_trait]
pub trait CodeRunner: Send + Sync {
    async fn run(&self, source: &str) -> Result<String, String>;
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum RunOutcome {
    NotConfigured { notice: String },
    Completed { output: String },
    Failed { message: String },
}

pub const RUNNER_NOT_CONFIGURED: &str =
    "No NetLogo runtime is configured for this server; the code was checked statically only.";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PhaseRule {
    Auto { answering: bool },
    Fixed(Phase),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum ChunkPolicy {
    Create,
    Replace(String),
    Ignore,
}

struct Exchange {
    request: String,
    extra: Bindings,
    phase: PhaseRule,
    chunks: ChunkPolicy,
    summary: String,
    hits: Vec<CitedHit>,
    searched: bool,
}

pub struct Orchestrator {
    gateway: Arc<Gateway>,
    retriever: Arc<dyn Retriever>,
    linter: Arc<Linter>,
    templates: Arc<TemplateSet>,
    clock: Arc<dyn Clock>,
    runner: Option<Arc<dyn CodeRunner>>,
    config: LoopConfig,
}

impl std::fmt::Debug for Orchestrator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Orchestrator")
            .field("gateway", &self.gateway)
            .field("config", &self.config)
            .field("runner", &self.runner.is_some())
            .finish()
    }
}

fn is_netlogo(language: Option<&str>) -> bool {
    language.is_none_or(|l| ["netlogo", "nlogo", "logo"].iter().any(|n| l.eq_ignore_ascii_case(n)))
}

fn format_hits(hits: &[CitedHit]) -> String {
    hits.iter()
        .map(|h| format!("[{}] {} <{}>\n{}", h.doc_id, h.name, h.url, h.snippet))
        .collect::<Vec<_>>()
        .join("\n\n")
}

fn add_hits(into: &mut Vec<CitedHit>, hits: &[CitedHit]) {
    for hit in hits {
        match into.iter_mut().find(|h| h.doc_id == hit.doc_id) {
            Some(existing) if existing.score < hit.score => *existing = hit.clone(),
            Some(_) => {}
            None => into.push(hit.clone()),
        }
    }
}

impl Orchestrator {
    pub fn new(
        gateway: Arc<Gateway>,
        retriever: Arc<dyn Retriever>,
        linter: Arc<Linter>,
        templates: Arc<TemplateSet>,
        clock: Arc<dyn Clock>,
    ) -> Self {
        Self {
            gateway,
            retriever,
            linter,
            templates,
            clock,
            runner: None,
            config: LoopConfig::default(),
        }
    }

    pub fn with_config(mut self, config: LoopConfig) -> Self {
        self.config = config;
        self
    }

    pub fn with_runner(mut self, runner: Arc<dyn CodeRunner>) -> Self {
        self.runner = Some(runner);
        self
    }

    pub fn config(&self) -> &LoopConfig {
        &self.config
    }

    pub fn linter(&self) -> &Linter {
        &self.linter
    }

    pub fn retriever(&self) -> &dyn Retriever {
        self.retriever.as_ref()
    }

    pub fn new_session(&self, session_id: impl Into<String>) -> Session {
        Session::new(session_id, self.clock.now())
    }

    fn emit(&self, session: &mut Session, sink: &dyn EventSink, body: EventBody) {
        let ts = self.clock.now();
        sink.emit(session.record_event(body, ts));
    }

    fn push_turn(&self, session: &mut Session, body: TurnBody) {
        let ts = self.clock.now();
        session.push_turn(body, ts);
    }

    pub fn summarize_context(&self, session: &Session) -> String {
        self.digest(session, session.turns.len()).to_text()
    }

    fn digest(&self, session: &Session, upto: usize) -> ContextDigest {
        ContextDigest::of(
            &session.turns[..upto],
            session.code_chunks.keys().cloned().collect(),
            self.config.summary_turns,
        )
    }

    fn search(&self, session: &mut Session, sink: &dyn EventSink, query: &str) -> Vec<CitedHit> {
        self.emit(session, sink, EventBody::Searching { query: query.to_string() });
        let hits = cited_search(self.retriever.as_ref(), query, self.config.search_k);
        session.retrieval_history.push(RetrievalRecord {
            query: query.to_string(),
            hit_ids: hits.iter().map(|h| h.doc_id.clone()).collect(),
        });
        self.emit(
            session,
            sink,
            EventBody::SearchResults {
                query: query.to_string(),
                hits: hits.clone(),
            },
        );
        self.push_turn(
            session,
            TurnBody::System(SystemRecord::SearchResults {
                query: query.to_string(),
                hits: hits.clone(),
            }),
        );
        hits
    }

    fn emit_answer(&self, session: &mut Session, sink: &dyn EventSink, text: &str) {
        let chars: Vec<char> = text.chars().collect();
        let size = self.config.fragment_chars.max(1);
        let count = chars.len().div_ceil(size).max(1);
        for index in 0..count {
            let fragment: String = chars.iter().skip(index * size).take(size).collect();
            self.emit(
                session,
                sink,
                EventBody::AnswerFragment {
                    index: index as u32,
                    text: fragment,
                    last: index + 1 == count,
                },
            );
        }
    }

    fn emit_chunk(&self, session: &mut Session, sink: &dyn EventSink, chunk: CodeChunk) {
        let diagnostics = EventBody::Diagnostics {
            chunk_id: chunk.chunk_id.clone(),
            revision: chunk.revision,
            diagnostics: chunk.diagnostics.clone(),
        };
        session.code_chunks.insert(chunk.chunk_id.clone(), chunk.clone());
        self.emit(session, sink, EventBody::CodeChunk { chunk });
        self.emit(session, sink, diagnostics);
    }

    fn respond(&self, session: &mut Session, sink: &dyn EventSink, text: &str, policy: &ChunkPolicy) {
        self.emit_answer(session, sink, text);
        let blocks: Vec<_> = extract_code_blocks(text)
            .into_iter()
            .filter(|b| is_netlogo(b.language.as_deref()) && !b.code.trim().is_empty())
            .collect();
        match policy {
            ChunkPolicy::Ignore => {}
            ChunkPolicy::Create => {
                for block in blocks {
                    let id = session.allocate_chunk_id();
                    let chunk = CodeChunk::new(id, block.code, "netlogo", ChunkOrigin::LlmGenerated, &self.linter);
                    self.emit_chunk(session, sink, chunk);
                }
            }
            ChunkPolicy::Replace(id) => match (blocks.into_iter().next(), session.code_chunks.get(id).cloned()) {
                (Some(block), Some(mut chunk)) => {
                    chunk.edit(block.code, ChunkOrigin::LlmGenerated, &self.linter);
                    self.emit_chunk(session, sink, chunk);
                }
                _ => self.emit(
                    session,
                    sink,
                    EventBody::Error {
                        code: error_codes::NO_FIX.into(),
                        message: "The reply did not contain replacement code.".into(),
                    },
                ),
            },
        }
    }

    fn fail(&self, session: &mut Session, sink: &dyn EventSink, code: &str, message: String) {
        self.emit(
            session,
            sink,
            EventBody::Error {
                code: code.into(),
                message: message.clone(),
            },
        );
        self.push_turn(session, TurnBody::System(SystemRecord::Error { message }));
    }

    fn fallback_text(&self, hits: &[CitedHit]) -> String {
        let n = self.config.max_iterations;
        let mut best: Vec<&CitedHit> = hits.iter().collect();
        best.sort_by(|a, b| b.score.total_cmp(&a.score).then_with(|| a.doc_id.cmp(&b.doc_id)));
        best.truncate(self.config.fallback_hits);
        if best.is_empty() {
            return format!(
                "I could not settle on an answer within {n} steps and found no related documentation. Could you rephrase the request?"
            );
        }
        let mut text =
            format!("I could not settle on an answer within {n} steps. These NetLogo sources look most relevant:");
        for hit in best {
            let snippet: String = hit.snippet.chars().take(160).collect();
            text.push_str(&format!("\n- {} ({}): {}", hit.name, hit.url, snippet.trim()));
        }
        text
    }

    async fn run_loop(&self, session: &mut Session, sink: &dyn EventSink, mut ex: Exchange) -> Result<(), OrchestratorError> {
        for iteration in 1..=self.config.max_iterations {
            let phase = match ex.phase {
                PhaseRule::Fixed(p) => p,
                PhaseRule::Auto { .. } if ex.searched => Phase::Respond,
                PhaseRule::Auto { answering: true } => Phase::Clarify,
                PhaseRule::Auto { answering: false } => Phase::Planning,
            };
            let mut bindings = ex.extra.clone();
            bindings.insert(slots::USER_REQUEST.into(), ex.request.clone());
            if !ex.summary.is_empty() {
                bindings.insert(slots::CONVERSATION_SUMMARY.into(), ex.summary.clone());
            }
            if !ex.hits.is_empty() {
                bindings.insert(slots::SEARCH_RESULTS.into(), format_hits(&ex.hits));
            }
            let prompt = match self.templates.get(phase).render_parts(&bindings) {
                Ok(p) => p,
                Err(e) => {
                    self.fail(session, sink, error_codes::TEMPLATE, e.to_string());
                    return Err(e.into());
                }
            };
            let reply = match self.gateway.complete_phase(phase, &prompt).await {
                Ok(r) => r,
                Err(e) => {
                    self.fail(session, sink, error_codes::BACKEND_UNAVAILABLE, e.to_string());
                    return Err(OrchestratorError::BackendUnavailable(e.to_string()));
                }
            };
            let step = parse_step(&reply);
            tracing::debug!(session = %session.session_id, iteration, action = ?step.action.kind(), "step");
            self.push_turn(session, TurnBody::Agent { step: step.clone() });
            self.emit(
                session,
                sink,
                EventBody::Plan {
                    plan: step.plan.clone(),
                    action: step.action.kind(),
                    iteration,
                },
            );
            match step.action {
                Action::Search { query } => {
                    let hits = self.search(session, sink, &query);
                    add_hits(&mut ex.hits, &hits);
                    ex.searched = true;
                }
                Action::Clarify { questions } => {
                    session.pending_clarification = Some(questions.clone());
                    self.emit(session, sink, EventBody::Clarification { questions });
                    return Ok(());
                }
                Action::Respond { text } => {
                    self.respond(session, sink, &text, &ex.chunks);
                    return Ok(());
                }
                Action::Apologize { reason } => {
                    self.emit(session, sink, EventBody::Apology { reason });
                    return Ok(());
                }
            }
        }

        self.emit(
            session,
            sink,
            EventBody::Error {
                code: error_codes::MAX_ITERATIONS.into(),
                message: format!("No final answer after {} planning steps.", self.config.max_iterations),
            },
        );
        let text = self.fallback_text(&ex.hits);
        self.push_turn(
            session,
            TurnBody::Agent {
                step: StructuredStep {
                    plan: "Out of planning steps; answer from the best sources found.".into(),
                    action: Action::Respond { text: text.clone() },
                },
            },
        );
        self.respond(session, sink, &text, &ChunkPolicy::Ignore);
        Ok(())
    }

    /// Runs one exchange for a user message. A pending clarification is
    /// consumed: the message is taken as its answer.
    pub async fn handle_user_message(
        &self,
        session: &mut Session,
        message: &str,
        sink: &dyn EventSink,
    ) -> Result<(), OrchestratorError> {
        let message = message.trim();
        if message.is_empty() {
            return Err(OrchestratorError::EmptyMessage);
        }
        let summary = self.digest(session, session.turns.len()).to_text();
        let pending = session.pending_clarification.take();
        self.push_turn(session, TurnBody::User { text: message.to_string() });
        let request = match &pending {
            Some(questions) => {
                let asked: Vec<_> = questions.iter().map(|q| q.text.as_str()).collect();
                format!("Questions asked: {}\nUser answer: {message}", asked.join(" "))
            }
            None => message.to_string(),
        };
        let ex = Exchange {
            request,
            extra: Bindings::new(),
            phase: PhaseRule::Auto {
                answering: pending.is_some(),
            },
            chunks: ChunkPolicy::Create,
            summary,
            hits: Vec::new(),
            searched: false,
        };
        self.run_loop(session, sink, ex).await
    }

    /// Explains a chunk, or asks the model to fix it (optionally following
    /// the user's ideas). Fixes replace the chunk in place at a new revision.
    pub async fn debug_action(
        &self,
        session: &mut Session,
        chunk_id: &str,
        mode: DebugMode,
        ideas: Option<&str>,
        sink: &dyn EventSink,
    ) -> Result<(), OrchestratorError> {
        let chunk = session
            .code_chunks
            .get(chunk_id)
            .cloned()
            .ok_or_else(|| OrchestratorError::ChunkNotFound(chunk_id.to_string()))?;
        if mode != DebugMode::Explain && chunk.diagnostics.is_empty() {
            return Err(OrchestratorError::NothingToFix(chunk_id.to_string()));
        }
        let summary = self.digest(session, session.turns.len()).to_text();
        self.push_turn(
            session,
            TurnBody::System(SystemRecord::DebugRequested {
                chunk_id: chunk_id.to_string(),
                mode,
            }),
        );
        // A debug request moves the conversation on; an open question lapses.
        session.pending_clarification = None;

        let mut queries: Vec<String> = Vec::new();
        for d in &chunk.diagnostics {
            if let Some(q) = self.doc_query(d) {
                if !queries.contains(&q) {
                    queries.push(q);
                }
            }
        }
        queries.truncate(self.config.debug_queries);
        let mut hits = Vec::new();
        for q in &queries {
            let found = self.search(session, sink, q);
            add_hits(&mut hits, &found);
        }

        let error_context = if chunk.diagnostics.is_empty() {
            "The checker found no problems in this code.".to_string()
        } else {
            chunk
                .diagnostics
                .iter()
                .map(|d| format!("Line {}, column {} ({}): {}", d.span.start.line, d.span.start.column, d.code, d.clarified_message))
                .collect::<Vec<_>>()
                .join("\n")
        };
        let request = match (mode, chunk.diagnostics.is_empty()) {
            (DebugMode::Explain, true) => "Explain what this code does, step by step.".to_string(),
            (DebugMode::Explain, false) => {
                "Explain what is wrong with this code and how to fix it, in terms a beginner can follow.".to_string()
            }
            (DebugMode::AutoFix, _) => "Fix the problems in this code.".to_string(),
            (DebugMode::FixWithIdeas, _) => match ideas.map(str::trim).filter(|i| !i.is_empty()) {
                Some(ideas) => format!("Fix the problems in this code. Follow these ideas from the user: {ideas}"),
                None => "Fix the problems in this code.".to_string(),
            },
        };
        let mut extra = Bindings::new();
        extra.insert(slots::CODE_CONTEXT.into(), chunk.source.clone());
        extra.insert(slots::ERROR_CONTEXT.into(), error_context);
        let (phase, chunks) = match mode {
            DebugMode::Explain => (Phase::Respond, ChunkPolicy::Ignore),
            DebugMode::AutoFix | DebugMode::FixWithIdeas => (Phase::Fix, ChunkPolicy::Replace(chunk_id.to_string())),
        };
        let ex = Exchange {
            request,
            extra,
            phase: PhaseRule::Fixed(phase),
            chunks,
            summary,
            searched: !hits.is_empty(),
            hits,
        };
        self.run_loop(session, sink, ex).await
    }

    fn doc_query(&self, d: &Diagnostic) -> Option<String> {
        self.linter
            .clarifier()
            .clarify(
                &d.code,
                &d.raw_message,
                &ErrorContext {
                    name: d.subject.clone(),
                    line: Some(d.span.start.line),
                    column: Some(d.span.start.column),
                    excerpt: None,
                },
            )
            .doc_query
    }

    /// Replaces a chunk's source with the user's edit and re-lints it.
    pub fn update_chunk(
        &self,
        session: &mut Session,
        chunk_id: &str,
        source: &str,
        sink: &dyn EventSink,
    ) -> Result<Vec<Diagnostic>, OrchestratorError> {
        let chunk = session
            .code_chunks
            .get_mut(chunk_id)
            .ok_or_else(|| OrchestratorError::ChunkNotFound(chunk_id.to_string()))?;
        let diagnostics = chunk.edit(source, ChunkOrigin::UserEdited, &self.linter).to_vec();
        let revision = chunk.revision;
        self.push_turn(
            session,
            TurnBody::System(SystemRecord::ChunkEdited {
                chunk_id: chunk_id.to_string(),
                revision,
            }),
        );
        self.emit(
            session,
            sink,
            EventBody::Diagnostics {
                chunk_id: chunk_id.to_string(),
                revision,
                diagnostics: diagnostics.clone(),
            },
        );
        Ok(diagnostics)
    }

    /// Forwards a chunk to the configured runtime, if any.
    pub async fn run_chunk(&self, session: &Session, chunk_id: &str) -> Result<RunOutcome, OrchestratorError> {
        let chunk = session
            .code_chunks
            .get(chunk_id)
            .ok_or_else(|| OrchestratorError::ChunkNotFound(chunk_id.to_string()))?;
        Ok(match &self.runner {
            None => RunOutcome::NotConfigured {
                notice: RUNNER_NOT_CONFIGURED.into(),
            },
            Some(runner) => match runner.run(&chunk.source).await {
                Ok(output) => RunOutcome::Completed { output },
                Err(message) => RunOutcome::Failed { message },
            },
        })
    }
}
