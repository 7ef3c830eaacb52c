use std::collections::BTreeMap;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::docs::CitedHit;
use crate::lint::{CodeChunk, Diagnostic};
use crate::prompt::{ActionKind, Question, StructuredStep};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DebugMode {
    Explain,
    AutoFix,
    FixWithIdeas,
}

impl DebugMode {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "explain" => Some(Self::Explain),
            "auto-fix" => Some(Self::AutoFix),
            "fix-with-ideas" => Some(Self::FixWithIdeas),
            _ => None,
        }
    }
}

/// Non-conversational facts recorded in the transcript.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "kebab-case")]
pub enum SystemRecord {
    SearchResults { query: String, hits: Vec<CitedHit> },
    ChunkEdited { chunk_id: String, revision: u64 },
    DebugRequested { chunk_id: String, mode: DebugMode },
    Error { message: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "lowercase")]
pub enum TurnBody {
    User { text: String },
    Agent { step: StructuredStep },
    System(SystemRecord),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Turn {
    #[serde(flatten)]
    pub body: TurnBody,
    pub ts: DateTime<Utc>,
}

impl Turn {
    pub fn kind(&self) -> &'static str {
        match self.body {
            TurnBody::User { .. } => "user",
            TurnBody::Agent { .. } => "agent",
            TurnBody::System(_) => "system",
        }
    }

    /// Full text of the turn as shown to the model.
    pub fn verbatim(&self) -> String {
        match &self.body {
            TurnBody::User { text } => format!("User: {text}"),
            TurnBody::Agent { step } => format!("Assistant:\n{}", step.to_labeled()),
            TurnBody::System(record) => format!("System: {}", record.describe()),
        }
    }

    /// One line, at most [`SYNOPSIS_CHARS`] characters of content.
    pub fn synopsis(&self) -> String {
        let text = match &self.body {
            TurnBody::User { text } => text.clone(),
            TurnBody::Agent { step } => format!("{} ({})", step.plan, step.action.kind().label().to_lowercase()),
            TurnBody::System(record) => record.describe(),
        };
        let line = text.split_whitespace().collect::<Vec<_>>().join(" ");
        let mut short: String = line.chars().take(SYNOPSIS_CHARS).collect();
        if short.len() < line.len() {
            short.push_str("...");
        }
        format!("- {}: {short}", self.kind())
    }
}

pub const SYNOPSIS_CHARS: usize = 80;

impl SystemRecord {
    pub fn describe(&self) -> String {
        match self {
            SystemRecord::SearchResults { query, hits } => {
                let names: Vec<_> = hits.iter().map(|h| h.doc_id.as_str()).collect();
                format!("searched {query:?}, found {}", if names.is_empty() { "nothing".into() } else { names.join(", ") })
            }
            SystemRecord::ChunkEdited { chunk_id, revision } => format!("{chunk_id} edited (revision {revision})"),
            SystemRecord::DebugRequested { chunk_id, mode } => {
                format!("debug {} requested for {chunk_id}", serde_json::to_value(mode).expect("mode").as_str().unwrap_or(""))
            }
            SystemRecord::Error { message } => format!("error: {message}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "payload", rename_all = "kebab-case")]
pub enum EventBody {
    Plan { plan: String, action: ActionKind, iteration: u32 },
    Searching { query: String },
    SearchResults { query: String, hits: Vec<CitedHit> },
    Clarification { questions: Vec<Question> },
    AnswerFragment { index: u32, text: String, last: bool },
    CodeChunk { chunk: CodeChunk },
    Diagnostics { chunk_id: String, revision: u64, diagnostics: Vec<Diagnostic> },
    Apology { reason: String },
    Error { code: String, message: String },
}

impl EventBody {
    pub fn type_name(&self) -> &'static str {
        match self {
            EventBody::Plan { .. } => "plan",
            EventBody::Searching { .. } => "searching",
            EventBody::SearchResults { .. } => "search-results",
            EventBody::Clarification { .. } => "clarification",
            EventBody::AnswerFragment { .. } => "answer-fragment",
            EventBody::CodeChunk { .. } => "code-chunk",
            EventBody::Diagnostics { .. } => "diagnostics",
            EventBody::Apology { .. } => "apology",
            EventBody::Error { .. } => "error",
        }
    }
}

/// Wire frame: `{seq, type, payload, ts}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgentEvent {
    pub seq: u64,
    #[serde(flatten)]
    pub body: EventBody,
    pub ts: DateTime<Utc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetrievalRecord {
    pub query: String,
    pub hit_ids: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Session {
    pub session_id: String,
    pub turns: Vec<Turn>,
    pub code_chunks: BTreeMap<String, CodeChunk>,
    /// Set exactly while the last agent action is an unanswered Clarify.
    pub pending_clarification: Option<Vec<Question>>,
    pub retrieval_history: Vec<RetrievalRecord>,
    /// Every event emitted for this session, in `seq` order.
    pub events: Vec<AgentEvent>,
    pub next_seq: u64,
    pub next_chunk: u64,
    pub created_at: DateTime<Utc>,
    pub updated_at: DateTime<Utc>,
}

impl Session {
    pub fn new(session_id: impl Into<String>, now: DateTime<Utc>) -> Self {
        Self {
            session_id: session_id.into(),
            turns: Vec::new(),
            code_chunks: BTreeMap::new(),
            pending_clarification: None,
            retrieval_history: Vec::new(),
            events: Vec::new(),
            next_seq: 1,
            next_chunk: 1,
            created_at: now,
            updated_at: now,
        }
    }

    pub fn push_turn(&mut self, body: TurnBody, ts: DateTime<Utc>) {
        self.turns.push(Turn { body, ts });
        self.updated_at = ts;
    }

    /// Assigns the next sequence number and records the event.
    pub fn record_event(&mut self, body: EventBody, ts: DateTime<Utc>) -> &AgentEvent {
        let event = AgentEvent { seq: self.next_seq, body, ts };
        self.next_seq += 1;
        self.updated_at = ts;
        self.events.push(event);
        self.events.last().expect("just pushed")
    }

    pub fn events_after(&self, after: u64) -> &[AgentEvent] {
        let start = self.events.partition_point(|e| e.seq <= after);
        &self.events[start..]
    }

    pub fn allocate_chunk_id(&mut self) -> String {
        let id = format!("chunk-{}", self.next_chunk);
        self.next_chunk += 1;
        id
    }

    pub fn last_seq(&self) -> u64 {
        self.next_seq - 1
    }

    /// Checks the structural invariants; returns the first violation.
    pub fn check_invariants(&self) -> Result<(), String> {
        for pair in self.events.windows(2) {
            if pair[0].seq >= pair[1].seq {
                return Err(format!("event seq {} is not below {}", pair[0].seq, pair[1].seq));
            }
        }
        if let Some(last) = self.events.last() {
            if last.seq >= self.next_seq {
                return Err("next_seq is behind the event log".into());
            }
        }
        let last_user = self.turns.iter().rposition(|t| matches!(t.body, TurnBody::User { .. }));
        let last_agent = self.turns.iter().enumerate().rev().find_map(|(i, t)| match &t.body {
            TurnBody::Agent { step } => Some((i, step.action.kind())),
            _ => None,
        });
        let awaiting = matches!(last_agent, Some((i, ActionKind::Clarify)) if Some(i) > last_user);
        match (&self.pending_clarification, awaiting) {
            (Some(q), true) if !q.is_empty() => {}
            (None, false) => {}
            (Some(_), _) => return Err("pending clarification without an unanswered Clarify".into()),
            (None, true) => return Err("unanswered Clarify without pending clarification".into()),
        }
        for (id, chunk) in &self.code_chunks {
            if id != &chunk.chunk_id {
                return Err(format!("chunk stored under {id} has id {}", chunk.chunk_id));
            }
        }
        Ok(())
    }
}

/// Bounded view of the conversation used as planning context.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ContextDigest {
    pub synopses: Vec<String>,
    pub verbatim: Vec<String>,
    pub chunk_ids: Vec<String>,
}

impl ContextDigest {
    pub fn of(turns: &[Turn], chunk_ids: Vec<String>, recent: usize) -> Self {
        let split = turns.len().saturating_sub(recent);
        Self {
            synopses: turns[..split].iter().map(Turn::synopsis).collect(),
            verbatim: turns[split..].iter().map(Turn::verbatim).collect(),
            chunk_ids,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.synopses.is_empty() && self.verbatim.is_empty() && self.chunk_ids.is_empty()
    }

    pub fn to_text(&self) -> String {
        let mut parts = Vec::new();
        if !self.synopses.is_empty() {
            parts.push(format!("Earlier turns:\n{}", self.synopses.join("\n")));
        }
        if !self.verbatim.is_empty() {
            parts.push(format!("Recent turns:\n{}", self.verbatim.join("\n")));
        }
        if !self.chunk_ids.is_empty() {
            parts.push(format!("Code chunks: {}", self.chunk_ids.join(", ")));
        }
        parts.join("\n\n")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prompt::Action;
    use chrono::TimeZone;

    fn t0() -> DateTime<Utc> {
        Utc.with_ymd_and_hms(2024, 1, 1, 0, 0, 0).unwrap()
    }

    fn user(text: &str) -> TurnBody {
        TurnBody::User { text: text.into() }
    }

    #[test]
    fn digest_counts() {
        let mut s = Session::new("s", t0());
        assert_eq!(ContextDigest::of(&s.turns, vec![], 6).to_text(), "");
        for i in 0..3 {
            s.push_turn(user(&format!("m{i}")), t0());
        }
        let d = ContextDigest::of(&s.turns, vec![], 6);
        assert_eq!((d.synopses.len(), d.verbatim.len()), (0, 3));
        for i in 3..10 {
            s.push_turn(user(&format!("m{i}")), t0());
        }
        let d = ContextDigest::of(&s.turns, vec!["chunk-1".into()], 6);
        assert_eq!((d.synopses.len(), d.verbatim.len()), (4, 6));
        assert_eq!(d.verbatim[0], "User: m4");
        assert!(d.to_text().ends_with("Code chunks: chunk-1"));
    }

    #[test]
    fn synopsis_is_one_bounded_line() {
        let long = "word ".repeat(100);
        let turn = Turn { body: user(&format!("a\nb {long}")), ts: t0() };
        let s = turn.synopsis();
        assert!(!s.contains('\n'));
        assert!(s.ends_with("..."));
        assert!(s.chars().count() <= SYNOPSIS_CHARS + 12);
    }

    #[test]
    fn event_frame_shape() {
        let mut s = Session::new("s", t0());
        let ev = s.record_event(EventBody::Searching { query: "ants".into() }, t0()).clone();
        let json = serde_json::to_value(&ev).unwrap();
        assert_eq!(
            json,
            serde_json::json!({"seq": 1, "type": "searching", "payload": {"query": "ants"}, "ts": "2024-01-01T00:00:00Z"})
        );
        assert_eq!(serde_json::from_value::<AgentEvent>(json).unwrap(), ev);
        assert_eq!(s.events_after(0).len(), 1);
        assert!(s.events_after(1).is_empty());
    }

    #[test]
    fn invariants_track_pending_clarification() {
        let mut s = Session::new("s", t0());
        s.push_turn(user("make a model"), t0());
        let questions = vec![Question { text: "Which?".into(), suggestions: vec!["a".into(), "b".into()] }];
        s.push_turn(
            TurnBody::Agent {
                step: StructuredStep { plan: "ask".into(), action: Action::Clarify { questions: questions.clone() } },
            },
            t0(),
        );
        assert!(s.check_invariants().is_err());
        s.pending_clarification = Some(questions);
        s.check_invariants().unwrap();
        s.push_turn(user("a"), t0());
        assert!(s.check_invariants().is_err());
        s.pending_clarification = None;
        s.check_invariants().unwrap();
    }
}
