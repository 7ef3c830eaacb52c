//! Rewrites terse checker messages into explanations aimed at novices (and
//! at the model when it is asked to fix code).

use std::collections::HashMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::dictionary::Dictionary;
use super::LintError;

const BUNDLED_TABLE: &str = include_str!("../../data/clarifications.json");

/// Maximum edit distance for "did you mean" suggestions.
pub const SUGGESTION_DISTANCE: usize = 2;
const MAX_SUGGESTIONS: usize = 3;

pub const ORIENTATION: &str =
    "NetLogo reported a problem that has no detailed explanation yet; the original message follows.";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClarificationEntry {
    pub code: String,
    pub template: String,
    #[serde(default)]
    pub doc_query: Option<String>,
}

#[derive(Debug, Clone, Default)]
pub struct ClarificationTable {
    entries: HashMap<String, ClarificationEntry>,
}

impl ClarificationTable {
    pub fn from_json(text: &str) -> Result<Self, LintError> {
        let list: Vec<ClarificationEntry> =
            serde_json::from_str(text).map_err(|e| LintError::Table(e.to_string()))?;
        let mut entries = HashMap::new();
        for entry in list {
            if entry.template.trim().is_empty() {
                return Err(LintError::Table(format!("empty template for {}", entry.code)));
            }
            entries.insert(entry.code.clone(), entry);
        }
        Ok(Self { entries })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, LintError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path)
            .map_err(|e| LintError::Table(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn bundled() -> Self {
        Self::from_json(BUNDLED_TABLE).expect("bundled clarification table is valid")
    }

    pub fn get(&self, code: &str) -> Option<&ClarificationEntry> {
        self.entries.get(code)
    }

    pub fn codes(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }
}

/// What is known about where an error happened.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ErrorContext {
    pub name: Option<String>,
    pub line: Option<usize>,
    pub column: Option<usize>,
    pub excerpt: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clarification {
    pub message: String,
    pub suggested_doc_ids: Vec<String>,
    /// Retrieval query for documentation about this problem, if any.
    pub doc_query: Option<String>,
}

#[derive(Debug, Clone)]
pub struct Clarifier {
    table: ClarificationTable,
    dictionary: Arc<Dictionary>,
}

/// Pulls `FDD` out of "Nothing named FDD has been defined."
fn name_from_raw(raw: &str) -> Option<String> {
    let rest = raw.split_once("named ")?.1;
    let word = rest.split_whitespace().next()?;
    let word = word.trim_end_matches(['.', ',', ':']);
    (!word.is_empty()).then(|| word.to_lowercase())
}

fn fill(template: &str, values: &[(&str, &str)]) -> String {
    let mut out = template.to_string();
    for (key, value) in values {
        out = out.replace(&format!("{{{{{key}}}}}"), value);
    }
    out
}

impl Clarifier {
    pub fn new(table: ClarificationTable, dictionary: Arc<Dictionary>) -> Self {
        Self { table, dictionary }
    }

    pub fn table(&self) -> &ClarificationTable {
        &self.table
    }

    pub fn dictionary(&self) -> &Dictionary {
        &self.dictionary
    }

    /// Never fails and never returns an empty message.
    pub fn clarify(&self, code: &str, raw: &str, ctx: &ErrorContext) -> Clarification {
        let Some(entry) = self.table.get(code) else {
            let raw = raw.trim();
            let message = if raw.is_empty() {
                ORIENTATION.to_string()
            } else {
                format!("{ORIENTATION} {raw}")
            };
            return Clarification {
                message,
                suggested_doc_ids: Vec::new(),
                doc_query: None,
            };
        };

        let name = ctx
            .name
            .as_ref()
            .map(|n| n.to_lowercase())
            .or_else(|| name_from_raw(raw));

        let mut suggested_doc_ids = Vec::new();
        let mut nearest_names = Vec::new();
        if let Some(name) = &name {
            if let Some(spec) = self.dictionary.lookup(name) {
                suggested_doc_ids.push(spec.doc_id.clone());
            } else {
                for spec in self.dictionary.nearest(name, SUGGESTION_DISTANCE, MAX_SUGGESTIONS) {
                    nearest_names.push(spec.name.clone());
                    suggested_doc_ids.push(spec.doc_id.clone());
                }
            }
        }

        let suggestions = match nearest_names.as_slice() {
            [] => "Check the spelling, or declare the name with let, globals, turtles-own or patches-own if it is meant to be a variable.".to_string(),
            [one] => format!("Did you mean `{one}`?"),
            many => format!(
                "Did you mean one of {}?",
                many.iter().map(|n| format!("`{n}`")).collect::<Vec<_>>().join(", ")
            ),
        };
        let name_text = name.clone().unwrap_or_else(|| "this name".into());
        let suggestion = nearest_names.first().cloned().unwrap_or_else(|| name_text.clone());
        let line = ctx.line.map_or_else(|| "?".to_string(), |l| l.to_string());
        let column = ctx.column.map_or_else(|| "?".to_string(), |c| c.to_string());
        let excerpt = ctx.excerpt.clone().unwrap_or_default();
        let values = [
            ("name", name_text.as_str()),
            ("line", line.as_str()),
            ("column", column.as_str()),
            ("raw", raw),
            ("suggestions", suggestions.as_str()),
            ("suggestion", suggestion.as_str()),
            ("excerpt", excerpt.as_str()),
        ];

        Clarification {
            message: fill(&entry.template, &values),
            suggested_doc_ids,
            doc_query: entry
                .doc_query
                .as_ref()
                .map(|q| fill(q, &values))
                .filter(|q| !q.trim().is_empty()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::docs::Corpus;
    use crate::lint::codes;

    fn clarifier() -> Clarifier {
        let dict = Dictionary::from_corpus(&Corpus::bundled()).unwrap();
        Clarifier::new(ClarificationTable::bundled(), Arc::new(dict))
    }

    #[test]
    fn unknown_primitive_suggests_nearest() {
        let c = clarifier();
        let ctx = ErrorContext {
            excerpt: Some("to go fdd 1 end".into()),
            ..Default::default()
        };
        let out = c.clarify(codes::UNKNOWN_PRIMITIVE, "Nothing named FDD has been defined", &ctx);
        assert!(out.message.contains("`fdd`"));
        assert!(out.message.contains("`fd`"));
        assert_eq!(out.suggested_doc_ids[0], "prim:fd");
        assert_eq!(out.doc_query.as_deref(), Some("fd"));
    }

    #[test]
    fn missing_end_explains_to_end() {
        let out = clarifier().clarify(codes::MISSING_END, "Missing END for procedure GO.", &ErrorContext {
            name: Some("go".into()),
            line: Some(1),
            ..Default::default()
        });
        assert!(out.message.contains("`end`"));
        assert!(out.message.contains("`to`"));
    }

    #[test]
    fn unknown_code_falls_back_to_orientation() {
        let out = clarifier().clarify("UNKNOWN", "mystery failure", &ErrorContext::default());
        assert_eq!(out.message, format!("{ORIENTATION} mystery failure"));
        assert!(out.suggested_doc_ids.is_empty());
        let empty = clarifier().clarify("UNKNOWN", "", &ErrorContext::default());
        assert!(!empty.message.is_empty());
    }

    #[test]
    fn every_table_entry_differs_from_raw_and_has_no_placeholders() {
        let c = clarifier();
        for code in codes::ALL {
            assert!(c.table().get(code).is_some(), "{code} missing from table");
            for raw in ["", "Nothing named X has been defined.", "oops"] {
                let ctx = ErrorContext {
                    name: Some("x".into()),
                    line: Some(3),
                    column: Some(1),
                    excerpt: None,
                };
                let out = c.clarify(code, raw, &ctx);
                assert_ne!(out.message.trim(), raw.trim());
                assert!(!out.message.contains("{{"), "{code}: {}", out.message);
            }
        }
    }
}
