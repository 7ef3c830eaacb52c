use serde::{Deserialize, Serialize};

use super::{Diagnostic, Linter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ChunkOrigin {
    LlmGenerated,
    UserEdited,
}

/// A small, independently lintable piece of code held in a conversation.
///
/// `diagnostics` always describe `source` at `revision`; both only change
/// through [`CodeChunk::edit`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeChunk {
    pub chunk_id: String,
    pub source: String,
    pub language: String,
    pub origin: ChunkOrigin,
    pub diagnostics: Vec<Diagnostic>,
    pub revision: u64,
}

impl CodeChunk {
    pub fn new(
        chunk_id: impl Into<String>,
        source: impl Into<String>,
        language: impl Into<String>,
        origin: ChunkOrigin,
        linter: &Linter,
    ) -> Self {
        let source = source.into();
        Self {
            chunk_id: chunk_id.into(),
            diagnostics: linter.check(&source),
            source,
            language: language.into(),
            origin,
            revision: 1,
        }
    }

    /// Replaces the source, bumps the revision (even when the text is
    /// unchanged) and re-lints.
    pub fn edit(&mut self, source: impl Into<String>, origin: ChunkOrigin, linter: &Linter) -> &[Diagnostic] {
        self.source = source.into();
        self.origin = origin;
        self.revision += 1;
        self.diagnostics = linter.check(&self.source);
        &self.diagnostics
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lint::codes;

    #[test]
    fn edits_bump_revision_and_relint() {
        let linter = Linter::bundled();
        let mut chunk = CodeChunk::new("c1", "to go fd 1 end", "netlogo", ChunkOrigin::LlmGenerated, &linter);
        assert_eq!(chunk.revision, 1);
        assert!(chunk.diagnostics.is_empty());

        let diags = chunk.edit("to go ask turtles [ fd 1 end", ChunkOrigin::UserEdited, &linter);
        assert_eq!(diags[0].code, codes::UNBALANCED_BRACKET);
        assert_eq!(chunk.revision, 2);

        chunk.edit("to go ask turtles [ fd 1 ] end", ChunkOrigin::UserEdited, &linter);
        assert!(chunk.diagnostics.is_empty());

        let before = chunk.diagnostics.clone();
        let src = chunk.source.clone();
        chunk.edit(src, ChunkOrigin::UserEdited, &linter);
        assert_eq!(chunk.revision, 4);
        assert_eq!(chunk.diagnostics, before);
    }
}
