//! Static, dictionary-driven checking of NetLogo code chunks.
//!
//! The checker approximates NetLogo's compiler with a small rule set:
//! unknown names, bracket pairing, procedure structure, unterminated strings
//! and a conservative missing-input warning. Every finding is paired with a
//! clarified message from a data-driven table.

mod analysis;
mod chunk;
mod clarify;
mod dictionary;
mod rules;
mod token;

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use analysis::{LintContext, ProcedureDef, KEYWORDS, OPERATORS};
pub use chunk::{ChunkOrigin, CodeChunk};
pub use clarify::{
    ClarificationEntry, ClarificationTable, Clarification, Clarifier, ErrorContext, ORIENTATION,
    SUGGESTION_DISTANCE,
};
pub use dictionary::{load_dictionary, Dictionary, PrimitiveSpec};
pub use rules::{
    default_rules, BalancedBrackets, LintRule, MissingInputs, ProcedureStructure, UnknownPrimitive,
    UnterminatedString,
};
pub use token::{string_is_terminated, tokenize, Token, TokenKind};

use crate::docs::Corpus;

/// Stable diagnostic codes emitted by the built-in rules.
pub mod codes {
    pub const UNKNOWN_PRIMITIVE: &str = "UNKNOWN-PRIMITIVE";
    pub const UNBALANCED_BRACKET: &str = "UNBALANCED-BRACKET";
    pub const MISSING_END: &str = "MISSING-END";
    pub const UNEXPECTED_END: &str = "UNEXPECTED-END";
    pub const PROCEDURE_REDEFINED: &str = "PROCEDURE-REDEFINED";
    pub const PRIMITIVE_REDEFINED: &str = "PRIMITIVE-REDEFINED";
    pub const MISSING_PROCEDURE_NAME: &str = "MISSING-PROCEDURE-NAME";
    pub const UNTERMINATED_STRING: &str = "UNTERMINATED-STRING";
    pub const ARITY: &str = "ARITY";
    /// Sentinel for messages that did not come from a known rule.
    pub const UNKNOWN: &str = "UNKNOWN";

    pub const ALL: &[&str] = &[
        UNKNOWN_PRIMITIVE,
        UNBALANCED_BRACKET,
        MISSING_END,
        UNEXPECTED_END,
        PROCEDURE_REDEFINED,
        PRIMITIVE_REDEFINED,
        MISSING_PROCEDURE_NAME,
        UNTERMINATED_STRING,
        ARITY,
    ];
}

#[derive(Debug, Error)]
pub enum LintError {
    #[error("duplicate primitive {0:?}")]
    DuplicatePrimitive(String),
    #[error("corpus entry {id} has a missing or invalid {field}")]
    MalformedEntry { id: String, field: String },
    #[error("clarification table: {0}")]
    Table(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

/// Start is inclusive, end exclusive; columns are 1-based characters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Span {
    pub start: Position,
    pub end: Position,
}

impl Span {
    pub fn of(token: &Token) -> Self {
        Self::between(token, token)
    }

    pub fn between(first: &Token, last: &Token) -> Self {
        Self {
            start: Position {
                line: first.line,
                column: first.column,
            },
            end: Position {
                line: last.line,
                column: last.end_column(),
            },
        }
    }
}

/// A rule's raw output before clarification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub code: String,
    pub severity: Severity,
    pub span: Span,
    pub raw_message: String,
    /// The identifier the finding is about, lower-cased.
    pub subject: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub code: String,
    pub severity: Severity,
    pub span: Span,
    pub raw_message: String,
    pub clarified_message: String,
    #[serde(default)]
    pub suggested_doc_ids: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subject: Option<String>,
}

/// Dictionary + rules + clarifier. Immutable and shareable after
/// construction.
pub struct Linter {
    dictionary: Arc<Dictionary>,
    clarifier: Clarifier,
    rules: Vec<Box<dyn LintRule>>,
}

impl std::fmt::Debug for Linter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Linter")
            .field("primitives", &self.dictionary.len())
            .field("rules", &self.rules.len())
            .finish()
    }
}

impl Linter {
    pub fn new(dictionary: Arc<Dictionary>, table: ClarificationTable) -> Self {
        Self {
            clarifier: Clarifier::new(table, Arc::clone(&dictionary)),
            dictionary,
            rules: default_rules(),
        }
    }

    /// Linter over the bundled corpus and clarification table.
    pub fn bundled() -> Self {
        let dict = Dictionary::from_corpus(&Corpus::bundled()).expect("bundled dictionary is valid");
        Self::new(Arc::new(dict), ClarificationTable::bundled())
    }

    pub fn with_rule(mut self, rule: Box<dyn LintRule>) -> Self {
        self.rules.push(rule);
        self
    }

    pub fn dictionary(&self) -> &Dictionary {
        &self.dictionary
    }

    pub fn clarifier(&self) -> &Clarifier {
        &self.clarifier
    }

    /// Deterministic: diagnostics are ordered by span, then code.
    pub fn check(&self, source: &str) -> Vec<Diagnostic> {
        let ctx = LintContext::new(source, &self.dictionary);
        let mut findings = Vec::new();
        for rule in &self.rules {
            rule.check(&ctx, &mut findings);
        }
        let lines: Vec<&str> = source.lines().collect();
        let mut diags: Vec<Diagnostic> = findings
            .into_iter()
            .map(|f| {
                let excerpt = lines.get(f.span.start.line.saturating_sub(1)).map(|l| l.trim().to_string());
                let clar = self.clarifier.clarify(
                    &f.code,
                    &f.raw_message,
                    &ErrorContext {
                        name: f.subject.clone(),
                        line: Some(f.span.start.line),
                        column: Some(f.span.start.column),
                        excerpt,
                    },
                );
                Diagnostic {
                    code: f.code,
                    severity: f.severity,
                    span: f.span,
                    raw_message: f.raw_message,
                    clarified_message: clar.message,
                    suggested_doc_ids: clar.suggested_doc_ids,
                    subject: f.subject,
                }
            })
            .collect();
        diags.sort_by(|a, b| a.span.cmp(&b.span).then_with(|| a.code.cmp(&b.code)));
        diags
    }

    pub fn check_chunk(&self, chunk: &CodeChunk) -> Vec<Diagnostic> {
        self.check(&chunk.source)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn codes_of(src: &str) -> Vec<String> {
        Linter::bundled().check(src).into_iter().map(|d| d.code).collect()
    }

    #[test]
    fn clean_procedure() {
        assert!(Linter::bundled().check("to go fd 1 end").is_empty());
    }

    #[test]
    fn unknown_primitive_at_span() {
        let diags = Linter::bundled().check("to go fdd 1 end");
        assert_eq!(diags.len(), 1);
        let d = &diags[0];
        assert_eq!(d.code, codes::UNKNOWN_PRIMITIVE);
        assert_eq!(d.span.start, Position { line: 1, column: 7 });
        assert_eq!(d.span.end, Position { line: 1, column: 10 });
        assert_ne!(d.clarified_message, d.raw_message);
        assert_eq!(d.suggested_doc_ids.first().map(String::as_str), Some("prim:fd"));
    }

    #[test]
    fn missing_end() {
        assert_eq!(codes_of("to go fd 1"), vec![codes::MISSING_END]);
        assert_eq!(
            codes_of("to a fd 1\nto b fd 1 end"),
            vec![codes::MISSING_END]
        );
    }

    #[test]
    fn brackets() {
        assert_eq!(codes_of("to go ask turtles [ fd 1 end"), vec![codes::UNBALANCED_BRACKET]);
        assert_eq!(codes_of("to go ask turtles fd 1 ] end"), vec![codes::UNBALANCED_BRACKET]);
        assert_eq!(codes_of("show (1 + 2]"), vec![codes::UNBALANCED_BRACKET]);
    }

    #[test]
    fn redefinitions_and_names() {
        assert_eq!(
            codes_of("to go end\nto GO end"),
            vec![codes::PROCEDURE_REDEFINED]
        );
        assert_eq!(codes_of("to fd end"), vec![codes::PRIMITIVE_REDEFINED]);
        assert_eq!(codes_of("to end"), vec![codes::MISSING_PROCEDURE_NAME]);
        assert_eq!(codes_of("end"), vec![codes::UNEXPECTED_END]);
    }

    #[test]
    fn strings_and_arity() {
        assert_eq!(codes_of("show \"hi"), vec![codes::UNTERMINATED_STRING]);
        let diags = Linter::bundled().check("ask turtles [ fd ]");
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, codes::ARITY);
        assert_eq!(diags[0].severity, Severity::Warning);
    }

    #[test]
    fn comments_and_strings_are_not_checked() {
        assert!(Linter::bundled().check("; fdd is not real\nshow \"fdd\"").is_empty());
    }

    #[test]
    fn case_insensitive() {
        assert!(Linter::bundled().check("TO Go FD 1 END").is_empty());
    }

    #[test]
    fn ordering_is_by_span_then_code() {
        let diags = Linter::bundled().check("to go\n zz [ qq 1\nend\nend");
        let spans: Vec<_> = diags.iter().map(|d| (d.span, d.code.clone())).collect();
        let mut sorted = spans.clone();
        sorted.sort();
        assert_eq!(spans, sorted);
        assert!(diags.len() >= 3);
    }
}
