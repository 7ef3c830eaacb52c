//! Inverted index with BM25 ranking over name + signature + body.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::corpus::{Corpus, DocEntry};
use super::DocError;

/// Maximum snippet length, in characters.
pub const SNIPPET_CHARS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bm25Params {
    pub k1: f64,
    pub b: f64,
    /// Score multiplier applied once when any query term occurs in the
    /// entry's name.
    pub name_boost: f64,
}

impl Default for Bm25Params {
    fn default() -> Self {
        Self {
            k1: 1.2,
            b: 0.75,
            name_boost: 2.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchHit {
    pub doc_id: String,
    pub score: f64,
    pub snippet: String,
}

/// Anything that turns a query into ranked corpus entries. Implementations
/// must return at most `k` hits, all with positive scores, ordered by
/// descending score and then ascending doc id.
pub trait Retriever: Send + Sync {
    fn retrieve(&self, query: &str, k: usize) -> Vec<SearchHit>;

    fn corpus(&self) -> &Corpus;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Posting {
    pub doc: usize,
    pub tf: u32,
}

#[derive(Debug, Clone)]
struct DocStats {
    len: u32,
    name_terms: HashSet<String>,
}

/// Immutable BM25 index. Cheap to share behind an `Arc`.
#[derive(Debug, Clone)]
pub struct DocIndex {
    corpus: Arc<Corpus>,
    params: Bm25Params,
    postings: HashMap<String, Vec<Posting>>,
    docs: Vec<DocStats>,
    avg_len: f64,
}

/// Lower-cases and splits on every character that is neither alphanumeric
/// nor `-` / `?`, so identifiers like `wolf-sheep` and `any?` stay whole.
/// Fragments with no alphanumeric character are dropped.
pub fn index_terms(text: &str) -> Vec<String> {
    term_spans(text).into_iter().map(|(t, _, _)| t).collect()
}

/// Terms with their character (not byte) start and end positions.
fn term_spans(text: &str) -> Vec<(String, usize, usize)> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut start = 0;
    let mut pos = 0;
    let mut flush = |current: &mut String, start: usize, end: usize| {
        if current.chars().any(char::is_alphanumeric) {
            out.push((std::mem::take(current), start, end));
        } else {
            current.clear();
        }
    };
    for ch in text.chars() {
        if ch.is_alphanumeric() || ch == '-' || ch == '?' {
            if current.is_empty() {
                start = pos;
            }
            current.extend(ch.to_lowercase());
        } else if !current.is_empty() {
            flush(&mut current, start, pos);
        }
        pos += 1;
    }
    if !current.is_empty() {
        flush(&mut current, start, pos);
    }
    out
}

fn searchable_text(entry: &DocEntry) -> String {
    let mut text = entry.name.clone();
    if let Some(sig) = &entry.signature {
        text.push('\n');
        text.push_str(sig);
    }
    text.push('\n');
    text.push_str(&entry.body);
    text
}

impl DocIndex {
    pub fn build(corpus: Arc<Corpus>) -> Result<Self, DocError> {
        Self::with_params(corpus, Bm25Params::default())
    }

    pub fn with_params(corpus: Arc<Corpus>, params: Bm25Params) -> Result<Self, DocError> {
        if corpus.is_empty() {
            return Err(DocError::EmptyCorpus);
        }
        let mut postings: HashMap<String, Vec<Posting>> = HashMap::new();
        let mut docs = Vec::with_capacity(corpus.len());
        let mut total_len: u64 = 0;
        for (doc, entry) in corpus.entries().iter().enumerate() {
            let terms = index_terms(&searchable_text(entry));
            let mut counts: HashMap<String, u32> = HashMap::new();
            for term in &terms {
                *counts.entry(term.clone()).or_default() += 1;
            }
            for (term, tf) in counts {
                postings.entry(term).or_default().push(Posting { doc, tf });
            }
            total_len += terms.len() as u64;
            docs.push(DocStats {
                len: terms.len() as u32,
                name_terms: index_terms(&entry.name).into_iter().collect(),
            });
        }
        for list in postings.values_mut() {
            list.sort_by_key(|p| p.doc);
        }
        let avg_len = total_len as f64 / docs.len() as f64;
        Ok(Self {
            corpus,
            params,
            postings,
            docs,
            avg_len,
        })
    }

    pub fn postings(&self, term: &str) -> Option<&[Posting]> {
        self.postings.get(term).map(Vec::as_slice)
    }

    pub fn doc_len(&self, doc: usize) -> u32 {
        self.docs[doc].len
    }

    pub fn avg_doc_len(&self) -> f64 {
        self.avg_len
    }

    pub fn params(&self) -> Bm25Params {
        self.params
    }

    pub fn shared_corpus(&self) -> Arc<Corpus> {
        Arc::clone(&self.corpus)
    }

    fn idf(&self, doc_freq: usize) -> f64 {
        let n = self.docs.len() as f64;
        let df = doc_freq as f64;
        (1.0 + (n - df + 0.5) / (df + 0.5)).ln()
    }

    /// Ranks entries for `query`. Returns at most `k` hits, none with a
    /// zero score.
    pub fn search(&self, query: &str, k: usize) -> Vec<SearchHit> {
        if k == 0 {
            return Vec::new();
        }
        let mut query_terms: Vec<String> = Vec::new();
        for term in index_terms(query) {
            if !query_terms.contains(&term) {
                query_terms.push(term);
            }
        }

        let Bm25Params { k1, b, name_boost } = self.params;
        let mut scores: HashMap<usize, f64> = HashMap::new();
        for term in &query_terms {
            let Some(list) = self.postings.get(term) else {
                continue;
            };
            let idf = self.idf(list.len());
            for posting in list {
                let tf = f64::from(posting.tf);
                let len_norm = 1.0 - b + b * f64::from(self.docs[posting.doc].len) / self.avg_len;
                *scores.entry(posting.doc).or_default() += idf * tf * (k1 + 1.0) / (tf + k1 * len_norm);
            }
        }

        let mut ranked: Vec<(usize, f64)> = scores
            .into_iter()
            .map(|(doc, score)| {
                let names = &self.docs[doc].name_terms;
                if query_terms.iter().any(|t| names.contains(t)) {
                    (doc, score * name_boost)
                } else {
                    (doc, score)
                }
            })
            .filter(|&(_, score)| score > 0.0)
            .collect();
        let entries = self.corpus.entries();
        ranked.sort_by(|a, b| {
            b.1.total_cmp(&a.1)
                .then_with(|| entries[a.0].id.cmp(&entries[b.0].id))
        });
        ranked.truncate(k);

        ranked
            .into_iter()
            .map(|(doc, score)| SearchHit {
                doc_id: entries[doc].id.clone(),
                score,
                snippet: snippet(&entries[doc].body, &query_terms),
            })
            .collect()
    }
}

impl Retriever for DocIndex {
    fn retrieve(&self, query: &str, k: usize) -> Vec<SearchHit> {
        self.search(query, k)
    }

    fn corpus(&self) -> &Corpus {
        &self.corpus
    }
}

/// Picks the first window of at most [`SNIPPET_CHARS`] characters that
/// contains the largest number of distinct query terms. Windows are centred
/// on each query-term occurrence and clamped to the body.
pub fn snippet(body: &str, query_terms: &[String]) -> String {
    let chars: Vec<char> = body.chars().collect();
    if chars.len() <= SNIPPET_CHARS {
        return body.to_string();
    }
    let spans: Vec<(String, usize, usize)> = term_spans(body)
        .into_iter()
        .filter(|(t, _, _)| query_terms.contains(t))
        .collect();

    let max_start = chars.len() - SNIPPET_CHARS;
    let mut best_start = 0;
    let mut best_count = 0;
    for (_, start, end) in &spans {
        let centre = (start + end) / 2;
        let window_start = centre.saturating_sub(SNIPPET_CHARS / 2).min(max_start);
        let window_end = window_start + SNIPPET_CHARS;
        let distinct: HashSet<&str> = spans
            .iter()
            .filter(|(_, s, e)| *s >= window_start && *e <= window_end)
            .map(|(t, _, _)| t.as_str())
            .collect();
        if distinct.len() > best_count {
            best_count = distinct.len();
            best_start = window_start;
        }
    }
    chars[best_start..best_start + SNIPPET_CHARS].iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::docs::corpus::DocKind;

    fn entry(id: &str, name: &str, body: &str) -> DocEntry {
        DocEntry {
            id: id.into(),
            kind: DocKind::Guide,
            name: name.into(),
            signature: None,
            categories: vec![],
            body: body.into(),
            url: format!("https://example.org/{id}"),
            syntax: None,
            arity_min: None,
            arity_max: None,
        }
    }

    fn index(entries: Vec<DocEntry>) -> DocIndex {
        DocIndex::build(Arc::new(Corpus::new(entries).unwrap())).unwrap()
    }

    #[test]
    fn terms_keep_hyphen_and_question_mark() {
        assert_eq!(
            index_terms("Wolf-sheep, ANY? (turtles) - x"),
            vec!["wolf-sheep", "any?", "turtles", "x"]
        );
    }

    #[test]
    fn single_doc_postings() {
        let idx = index(vec![entry("A", "a", "wolf sheep")]);
        assert_eq!(idx.postings("wolf").unwrap(), &[Posting { doc: 0, tf: 1 }]);
        assert_eq!(idx.postings("sheep").unwrap().len(), 1);
    }

    #[test]
    fn shared_term_posting_list_has_both_docs() {
        let idx = index(vec![entry("A", "a", "wolf"), entry("B", "b", "wolf grass")]);
        assert_eq!(idx.postings("wolf").unwrap().len(), 2);
    }

    #[test]
    fn empty_corpus_is_an_error() {
        let corpus = Arc::new(Corpus::new(vec![]).unwrap());
        assert!(matches!(DocIndex::build(corpus), Err(DocError::EmptyCorpus)));
    }

    #[test]
    fn unique_term_ranks_its_doc_first() {
        let idx = index(vec![
            entry("A", "a", "patches grow grass"),
            entry("B", "b", "turtles eat grass"),
            entry("C", "c", "links join turtles"),
        ]);
        let hits = idx.search("links", 3);
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].doc_id, "C");
    }

    #[test]
    fn no_match_gives_empty_result() {
        let idx = index(vec![entry("A", "a", "wolf")]);
        assert!(idx.search("zebra", 5).is_empty());
        assert!(idx.search("", 5).is_empty());
    }

    #[test]
    fn ties_break_by_doc_id() {
        let idx = index(vec![entry("b", "x", "grass"), entry("a", "y", "grass")]);
        let hits = idx.search("grass", 5);
        assert_eq!(hits[0].doc_id, "a");
        assert_eq!(hits[1].doc_id, "b");
        assert_eq!(hits[0].score, hits[1].score);
    }

    #[test]
    fn snippet_prefers_window_with_most_terms() {
        let filler = "lorem ".repeat(100);
        let body = format!("wolf {filler} wolf sheep {filler}");
        let s = snippet(&body, &["wolf".to_string(), "sheep".to_string()]);
        assert_eq!(s.chars().count(), SNIPPET_CHARS);
        assert!(s.contains("wolf sheep"));
    }

    #[test]
    fn short_body_snippet_is_whole_body() {
        assert_eq!(snippet("tiny body", &["tiny".into()]), "tiny body");
    }
}
