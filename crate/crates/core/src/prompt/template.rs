use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::PromptError;

pub mod slots {
    pub const USER_REQUEST: &str = "user-request";
    pub const CONVERSATION_SUMMARY: &str = "conversation-summary";
    pub const SEARCH_RESULTS: &str = "search-results";
    pub const CODE_CONTEXT: &str = "code-context";
    pub const ERROR_CONTEXT: &str = "error-context";
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FewShot {
    pub input: String,
    pub output: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotSpec {
    pub name: String,
    #[serde(default = "default_required")]
    pub required: bool,
}

fn default_required() -> bool {
    true
}

/// A prompt template as stored on disk.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptTemplate {
    pub template_id: String,
    pub preamble: String,
    #[serde(default)]
    pub few_shot: Vec<FewShot>,
    #[serde(default)]
    pub slots: Vec<SlotSpec>,
}

/// Rendered prompt, split the way chat backends want it: instructions and
/// demonstrations first, the live request second.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderedPrompt {
    pub system: String,
    pub live: String,
}

impl RenderedPrompt {
    pub fn text(&self) -> String {
        if self.live.is_empty() {
            self.system.clone()
        } else {
            format!("{}\n\n{}", self.system, self.live)
        }
    }
}

pub type Bindings = BTreeMap<String, String>;

fn slot_title(name: &str) -> String {
    let spaced = name.replace('-', " ");
    let mut chars = spaced.chars();
    match chars.next() {
        Some(first) => first.to_uppercase().chain(chars).collect(),
        None => String::new(),
    }
}

impl PromptTemplate {
    pub fn from_json(text: &str) -> Result<Self, PromptError> {
        serde_json::from_str(text).map_err(|e| PromptError::Template(e.to_string()))
    }

    fn slot(&self, name: &str) -> Option<&SlotSpec> {
        self.slots.iter().find(|s| s.name == name)
    }

    /// Substitutes `{{slot}}` references in the preamble in one pass, so
    /// bound values are never re-scanned.
    fn fill_preamble(&self, bindings: &Bindings) -> Result<String, PromptError> {
        let mut out = String::with_capacity(self.preamble.len());
        let mut rest = self.preamble.as_str();
        while let Some(open) = rest.find("{{") {
            let Some(close) = rest[open + 2..].find("}}") else { break };
            let name = rest[open + 2..open + 2 + close].trim();
            out.push_str(&rest[..open]);
            match (bindings.get(name), self.slot(name)) {
                (Some(value), Some(_)) => out.push_str(value),
                (None, Some(spec)) if !spec.required => {}
                _ => return Err(PromptError::UnboundSlot(name.to_string())),
            }
            rest = &rest[open + 2 + close + 2..];
        }
        out.push_str(rest);
        Ok(out)
    }

    pub fn render_parts(&self, bindings: &Bindings) -> Result<RenderedPrompt, PromptError> {
        for spec in &self.slots {
            if spec.required && !bindings.contains_key(&spec.name) {
                return Err(PromptError::UnboundSlot(spec.name.clone()));
            }
        }
        let mut system = self.fill_preamble(bindings)?;
        for (i, shot) in self.few_shot.iter().enumerate() {
            system.push_str(&format!(
                "\n\n### Example {}\nInput:\n{}\nOutput:\n{}",
                i + 1,
                shot.input.trim_end(),
                shot.output.trim_end()
            ));
        }

        let mut sections = Vec::new();
        for spec in &self.slots {
            if let Some(value) = bindings.get(&spec.name) {
                sections.push(format!("## {}\n{}", slot_title(&spec.name), value));
            }
        }
        let live = if sections.is_empty() {
            String::new()
        } else {
            format!("### Current request\n{}", sections.join("\n\n"))
        };
        Ok(RenderedPrompt { system, live })
    }

    pub fn render(&self, bindings: &Bindings) -> Result<String, PromptError> {
        self.render_parts(bindings).map(|r| r.text())
    }
}

/// Which template a request uses. Each phase is also a routing key for
/// choosing an LLM backend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    Planning,
    Clarify,
    Respond,
    Fix,
}

impl Phase {
    pub const ALL: [Phase; 4] = [Phase::Planning, Phase::Clarify, Phase::Respond, Phase::Fix];

    pub fn as_str(self) -> &'static str {
        match self {
            Phase::Planning => "planning",
            Phase::Clarify => "clarify",
            Phase::Respond => "respond",
            Phase::Fix => "fix",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.as_str().eq_ignore_ascii_case(s.trim()))
    }
}

const BUNDLED: [(&str, &str); 4] = [
    ("planning", include_str!("../../data/templates/planning.json")),
    ("clarify", include_str!("../../data/templates/clarify.json")),
    ("respond", include_str!("../../data/templates/respond.json")),
    ("fix", include_str!("../../data/templates/fix.json")),
];

/// One template per phase.
#[derive(Debug, Clone)]
pub struct TemplateSet {
    by_phase: HashMap<Phase, PromptTemplate>,
}

impl TemplateSet {
    pub fn from_templates(templates: impl IntoIterator<Item = PromptTemplate>) -> Result<Self, PromptError> {
        let mut by_phase = HashMap::new();
        for t in templates {
            if let Some(phase) = Phase::parse(&t.template_id) {
                by_phase.insert(phase, t);
            }
        }
        for phase in Phase::ALL {
            if !by_phase.contains_key(&phase) {
                return Err(PromptError::MissingTemplate(phase.as_str().into()));
            }
        }
        Ok(Self { by_phase })
    }

    pub fn bundled() -> Self {
        let templates = BUNDLED
            .iter()
            .map(|(_, text)| PromptTemplate::from_json(text).expect("bundled template is valid"));
        Self::from_templates(templates).expect("bundled templates cover every phase")
    }

    /// Loads every `*.json` file in `dir`.
    pub fn load_dir(dir: impl AsRef<Path>) -> Result<Self, PromptError> {
        let dir = dir.as_ref();
        let mut templates = Vec::new();
        let entries = fs::read_dir(dir).map_err(|e| PromptError::Template(format!("{}: {e}", dir.display())))?;
        let mut paths: Vec<_> = entries.filter_map(Result::ok).map(|e| e.path()).collect();
        paths.sort();
        for path in paths {
            if path.extension().is_some_and(|ext| ext == "json") {
                let text = fs::read_to_string(&path)
                    .map_err(|e| PromptError::Template(format!("{}: {e}", path.display())))?;
                templates.push(PromptTemplate::from_json(&text)?);
            }
        }
        Self::from_templates(templates)
    }

    pub fn get(&self, phase: Phase) -> &PromptTemplate {
        &self.by_phase[&phase]
    }
}
