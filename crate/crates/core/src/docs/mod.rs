//! The pre-assembled documentation and example-model corpus, and ranked
//! search over it.

mod corpus;
mod index;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use corpus::{Corpus, DocEntry, DocKind, SyntaxKind};
pub use index::{index_terms, snippet, Bm25Params, DocIndex, Posting, Retriever, SearchHit, SNIPPET_CHARS};

#[derive(Debug, Error)]
pub enum DocError {
    #[error("corpus line {line}: {reason}")]
    CorpusParse { line: usize, reason: String },
    #[error("duplicate corpus id {0:?}")]
    DuplicateId(String),
    #[error("cannot build an index over an empty corpus")]
    EmptyCorpus,
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// A search hit joined with the citation fields a user needs to open the
/// source.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CitedHit {
    pub doc_id: String,
    pub name: String,
    pub kind: DocKind,
    pub url: String,
    pub score: f64,
    pub snippet: String,
}

impl CitedHit {
    pub fn from_hit(hit: SearchHit, corpus: &Corpus) -> Option<Self> {
        let entry = corpus.get(&hit.doc_id)?;
        Some(Self {
            name: entry.name.clone(),
            kind: entry.kind,
            url: entry.url.clone(),
            doc_id: hit.doc_id,
            score: hit.score,
            snippet: hit.snippet,
        })
    }
}

/// Runs `query` and attaches citation fields to each hit.
pub fn cited_search(retriever: &dyn Retriever, query: &str, k: usize) -> Vec<CitedHit> {
    retriever
        .retrieve(query, k)
        .into_iter()
        .filter_map(|hit| CitedHit::from_hit(hit, retriever.corpus()))
        .collect()
}
