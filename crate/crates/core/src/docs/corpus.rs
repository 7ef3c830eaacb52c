//! Documentation corpus records and JSON Lines ingestion.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::DocError;

const BUNDLED_CORPUS: &str = include_str!("../../data/corpus.jsonl");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DocKind {
    Primitive,
    ExampleModel,
    Guide,
}

/// Whether a primitive is used as a statement or as a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SyntaxKind {
    Command,
    Reporter,
}

/// One authoritative corpus record: a primitive's dictionary page, an
/// example model from the models library, or a programming guide section.
///
/// Primitive entries additionally carry `syntax`, `arity_min` and
/// `arity_max` (absent or `null` means unbounded), which the linter uses to
/// build its dictionary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocEntry {
    pub id: String,
    pub kind: DocKind,
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<String>,
    #[serde(default)]
    pub categories: Vec<String>,
    pub body: String,
    pub url: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub syntax: Option<SyntaxKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arity_min: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arity_max: Option<u32>,
}

/// The loaded corpus. Entry ids are unique and every url is non-empty.
#[derive(Debug, Clone)]
pub struct Corpus {
    entries: Vec<DocEntry>,
    by_id: HashMap<String, usize>,
}

impl Corpus {
    pub fn new(entries: Vec<DocEntry>) -> Result<Self, DocError> {
        let mut by_id = HashMap::with_capacity(entries.len());
        for (i, entry) in entries.iter().enumerate() {
            if by_id.insert(entry.id.clone(), i).is_some() {
                return Err(DocError::DuplicateId(entry.id.clone()));
            }
        }
        Ok(Self { entries, by_id })
    }

    /// Reads a JSON Lines corpus file.
    pub fn ingest(path: impl AsRef<Path>) -> Result<Self, DocError> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| DocError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_jsonl(&text)
    }

    /// Parses JSON Lines text. Blank lines are skipped; line numbers in
    /// errors are 1-based.
    pub fn from_jsonl(text: &str) -> Result<Self, DocError> {
        let mut entries = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let entry: DocEntry =
                serde_json::from_str(line).map_err(|e| DocError::CorpusParse {
                    line: line_no,
                    reason: e.to_string(),
                })?;
            if entry.id.trim().is_empty() {
                return Err(DocError::CorpusParse {
                    line: line_no,
                    reason: "id must not be empty".into(),
                });
            }
            if entry.url.trim().is_empty() {
                return Err(DocError::CorpusParse {
                    line: line_no,
                    reason: format!("entry {} has an empty url", entry.id),
                });
            }
            entries.push(entry);
        }
        Self::new(entries)
    }

    /// The desk-scale corpus shipped with the crate.
    pub fn bundled() -> Self {
        Self::from_jsonl(BUNDLED_CORPUS).expect("bundled corpus is valid")
    }

    pub fn bundled_jsonl() -> &'static str {
        BUNDLED_CORPUS
    }

    pub fn get(&self, id: &str) -> Option<&DocEntry> {
        self.by_id.get(id).map(|&i| &self.entries[i])
    }

    pub fn entries(&self) -> &[DocEntry] {
        &self.entries
    }

    pub fn primitives(&self) -> impl Iterator<Item = &DocEntry> {
        self.entries.iter().filter(|e| e.kind == DocKind::Primitive)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(id: &str) -> String {
        format!(
            r#"{{"id":"{id}","kind":"guide","name":"{id}","categories":[],"body":"text","url":"https://example.org/{id}"}}"#
        )
    }

    #[test]
    fn three_lines_three_entries() {
        let text = [line("a"), line("b"), line("c")].join("\n") + "\n";
        let corpus = Corpus::from_jsonl(&text).unwrap();
        assert_eq!(corpus.len(), 3);
        assert_eq!(corpus.get("b").unwrap().name, "b");
    }

    #[test]
    fn duplicate_id_rejected() {
        let text = [line("a"), line("a")].join("\n");
        match Corpus::from_jsonl(&text) {
            Err(DocError::DuplicateId(id)) => assert_eq!(id, "a"),
            other => panic!("expected DuplicateId, got {other:?}"),
        }
    }

    #[test]
    fn parse_error_reports_line() {
        let text = format!("{}\n{{not json\n", line("a"));
        match Corpus::from_jsonl(&text) {
            Err(DocError::CorpusParse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected CorpusParse, got {other:?}"),
        }
    }

    #[test]
    fn empty_url_rejected() {
        let text = r#"{"id":"x","kind":"guide","name":"x","body":"b","url":""}"#;
        assert!(matches!(
            Corpus::from_jsonl(text),
            Err(DocError::CorpusParse { line: 1, .. })
        ));
    }

    #[test]
    fn bundled_size_matches_line_count() {
        let lines = Corpus::bundled_jsonl()
            .lines()
            .filter(|l| !l.trim().is_empty())
            .count();
        assert_eq!(Corpus::bundled().len(), lines);
        assert!(lines > 200);
    }
}
