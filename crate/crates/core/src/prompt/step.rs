use serde::{Deserialize, Serialize};

pub const MAX_QUESTIONS: usize = 3;
pub const MAX_SUGGESTIONS: usize = 4;
pub const UNPARSED_PLAN: &str = "(unparsed)";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Question {
    pub text: String,
    pub suggestions: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "action", content = "parameter", rename_all = "lowercase")]
pub enum Action {
    Clarify { questions: Vec<Question> },
    Search { query: String },
    Respond { text: String },
    Apologize { reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ActionKind {
    Clarify,
    Search,
    Respond,
    Apologize,
}

impl ActionKind {
    fn from_word(word: &str) -> Option<Self> {
        Some(match word {
            "clarify" | "clarification" | "ask" | "question" | "questions" => Self::Clarify,
            "search" | "find" | "lookup" | "look" | "retrieve" => Self::Search,
            "respond" | "response" | "write" | "answer" | "reply" => Self::Respond,
            "apologize" | "apologise" | "apology" | "sorry" => Self::Apologize,
            _ => return None,
        })
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Clarify => "Clarify",
            Self::Search => "Search",
            Self::Respond => "Respond",
            Self::Apologize => "Apologize",
        }
    }
}

impl Action {
    pub fn kind(&self) -> ActionKind {
        match self {
            Action::Clarify { .. } => ActionKind::Clarify,
            Action::Search { .. } => ActionKind::Search,
            Action::Respond { .. } => ActionKind::Respond,
            Action::Apologize { .. } => ActionKind::Apologize,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredStep {
    pub plan: String,
    #[serde(flatten)]
    pub action: Action,
}

impl StructuredStep {
    pub fn fallback(raw: &str) -> Self {
        Self {
            plan: UNPARSED_PLAN.into(),
            action: Action::Respond { text: raw.to_string() },
        }
    }

    pub fn is_fallback(&self) -> bool {
        self.plan == UNPARSED_PLAN
    }

    /// The labeled text form that [`parse_step`] reads back.
    pub fn to_labeled(&self) -> String {
        let parameter = match &self.action {
            Action::Clarify { questions } => questions
                .iter()
                .map(|q| {
                    std::iter::once(q.text.as_str())
                        .chain(q.suggestions.iter().map(String::as_str))
                        .collect::<Vec<_>>()
                        .join(" | ")
                })
                .collect::<Vec<_>>()
                .join("\n"),
            Action::Search { query } => query.clone(),
            Action::Respond { text } => text.clone(),
            Action::Apologize { reason } => reason.clone(),
        };
        format!(
            "Plan: {}\nAction: {}\nParameter: {}",
            self.plan,
            self.action.kind().label(),
            parameter
        )
    }
}

/// Byte offset just past the first `label` (ASCII, lower-case, ending in
/// `:`) at or after `from` that is not preceded by an alphanumeric.
fn find_label(lower: &str, label: &str, from: usize) -> Option<(usize, usize)> {
    let bytes = lower.as_bytes();
    let mut search = from;
    while let Some(rel) = lower.get(search..)?.find(label) {
        let start = search + rel;
        let bounded = start == 0 || !bytes[start - 1].is_ascii_alphanumeric();
        if bounded {
            let mut end = start + label.len();
            while end < bytes.len() && matches!(bytes[end], b'*' | b'_') {
                end += 1;
            }
            return Some((start, end));
        }
        search = start + label.len();
    }
    None
}

fn strip_list_marker(line: &str) -> &str {
    let line = line.trim();
    for bullet in ["- ", "* ", "• "] {
        if let Some(rest) = line.strip_prefix(bullet) {
            return rest.trim_start();
        }
    }
    let digits = line.bytes().take_while(u8::is_ascii_digit).count();
    if digits > 0 {
        if let Some(rest) = line[digits..].strip_prefix(['.', ')']) {
            return rest.trim_start();
        }
    }
    line
}

fn parse_questions(parameter: &str) -> Vec<Question> {
    parameter
        .lines()
        .map(strip_list_marker)
        .filter(|l| !l.is_empty())
        .filter_map(|line| {
            let mut parts = line.split('|').map(str::trim);
            let text = parts.next()?.to_string();
            if text.is_empty() {
                return None;
            }
            let suggestions = parts
                .filter(|s| !s.is_empty())
                .take(MAX_SUGGESTIONS)
                .map(str::to_string)
                .collect();
            Some(Question { text, suggestions })
        })
        .take(MAX_QUESTIONS)
        .collect()
}

fn strip_quotes(s: &str) -> &str {
    for (open, close) in [('"', '"'), ('\'', '\''), ('`', '`'), ('“', '”')] {
        if let Some(inner) = s.strip_prefix(open).and_then(|r| r.strip_suffix(close)) {
            return inner.trim();
        }
    }
    s
}

/// Reads `Plan:`, `Action:` and `Parameter:` sections, in that order, from
/// untrusted model output. Total: anything it cannot read becomes a Respond
/// step carrying the input verbatim.
pub fn parse_step(output: &str) -> StructuredStep {
    try_parse(output).unwrap_or_else(|| StructuredStep::fallback(output))
}

fn try_parse(output: &str) -> Option<StructuredStep> {
    // ASCII lower-casing keeps byte offsets valid in `output`.
    let lower = output.to_ascii_lowercase();
    let (_, plan_at) = find_label(&lower, "plan:", 0)?;
    let (action_start, action_at) = find_label(&lower, "action:", plan_at)?;
    let (param_start, param_at) = find_label(&lower, "parameter:", action_at)?;

    let plan = output[plan_at..action_start].trim_matches(|c: char| c.is_whitespace() || c == '*' || c == '_');
    let action_text = &lower[action_at..param_start];
    let parameter = output[param_at..].trim();
    if plan.is_empty() || parameter.is_empty() {
        return None;
    }
    let kind = action_text
        .split(|c: char| !c.is_ascii_alphanumeric())
        .find_map(ActionKind::from_word)?;

    let action = match kind {
        ActionKind::Clarify => {
            let questions = parse_questions(parameter);
            if questions.is_empty() {
                return None;
            }
            Action::Clarify { questions }
        }
        ActionKind::Search => {
            let query = strip_quotes(parameter);
            if query.is_empty() {
                return None;
            }
            Action::Search { query: query.to_string() }
        }
        ActionKind::Respond => Action::Respond {
            text: parameter.to_string(),
        },
        ActionKind::Apologize => Action::Apologize {
            reason: parameter.to_string(),
        },
    };
    Some(StructuredStep {
        plan: plan.to_string(),
        action,
    })
}
