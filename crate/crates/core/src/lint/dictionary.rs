use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::LintError;
use crate::docs::{Corpus, DocEntry, DocKind, SyntaxKind};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimitiveSpec {
    /// Lower-case canonical name.
    pub name: String,
    pub kind: SyntaxKind,
    pub arity_min: u32,
    /// `None` means unbounded.
    pub arity_max: Option<u32>,
    pub categories: Vec<String>,
    pub doc_id: String,
}

/// Read-only primitive lookup table, case-insensitive.
#[derive(Debug, Clone, Default)]
pub struct Dictionary {
    specs: BTreeMap<String, PrimitiveSpec>,
}

impl Dictionary {
    pub fn from_specs(specs: impl IntoIterator<Item = PrimitiveSpec>) -> Result<Self, LintError> {
        let mut map = BTreeMap::new();
        for mut spec in specs {
            spec.name = spec.name.to_lowercase();
            if let Some(max) = spec.arity_max {
                if max < spec.arity_min {
                    return Err(LintError::MalformedEntry {
                        id: spec.doc_id,
                        field: "arity_max".into(),
                    });
                }
            }
            if map.contains_key(&spec.name) {
                return Err(LintError::DuplicatePrimitive(spec.name));
            }
            map.insert(spec.name.clone(), spec);
        }
        Ok(Self { specs: map })
    }

    pub fn lookup(&self, name: &str) -> Option<&PrimitiveSpec> {
        self.specs.get(&name.to_lowercase())
    }

    pub fn contains(&self, name: &str) -> bool {
        self.lookup(name).is_some()
    }

    pub fn len(&self) -> usize {
        self.specs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.specs.is_empty()
    }

    /// Names in alphabetical order.
    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.specs.keys().map(String::as_str)
    }

    pub fn specs(&self) -> impl Iterator<Item = &PrimitiveSpec> {
        self.specs.values()
    }

    /// Dictionary names within `max_distance` edits of `name`, nearest first,
    /// ties alphabetical.
    pub fn nearest(&self, name: &str, max_distance: usize, limit: usize) -> Vec<&PrimitiveSpec> {
        let needle = name.to_lowercase();
        let mut found: Vec<(usize, &PrimitiveSpec)> = self
            .specs
            .values()
            .filter_map(|spec| {
                let d = strsim::levenshtein(&needle, &spec.name);
                (d <= max_distance && d > 0).then_some((d, spec))
            })
            .collect();
        found.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.name.cmp(&b.1.name)));
        found.into_iter().take(limit).map(|(_, s)| s).collect()
    }
}

fn spec_from_entry(entry: &DocEntry) -> Result<PrimitiveSpec, LintError> {
    let malformed = |field: &str| LintError::MalformedEntry {
        id: entry.id.clone(),
        field: field.into(),
    };
    if entry.name.trim().is_empty() {
        return Err(malformed("name"));
    }
    Ok(PrimitiveSpec {
        name: entry.name.to_lowercase(),
        kind: entry.syntax.ok_or_else(|| malformed("syntax"))?,
        arity_min: entry.arity_min.ok_or_else(|| malformed("arity_min"))?,
        arity_max: entry.arity_max,
        categories: entry.categories.clone(),
        doc_id: entry.id.clone(),
    })
}

/// Builds the dictionary from every `primitive` entry of the corpus.
pub fn load_dictionary<'a>(entries: impl IntoIterator<Item = &'a DocEntry>) -> Result<Dictionary, LintError> {
    let specs = entries
        .into_iter()
        .filter(|e| e.kind == DocKind::Primitive)
        .map(spec_from_entry)
        .collect::<Result<Vec<_>, _>>()?;
    Dictionary::from_specs(specs)
}

impl Dictionary {
    pub fn from_corpus(corpus: &Corpus) -> Result<Self, LintError> {
        load_dictionary(corpus.entries())
    }
}
