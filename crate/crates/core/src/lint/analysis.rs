//! First pass over a chunk: finds declarations so that the rules can tell
//! user-defined names from unknown ones.

use std::collections::HashSet;

use super::dictionary::Dictionary;
use super::token::{tokenize, Token, TokenKind};

pub const KEYWORDS: &[&str] = &[
    "to",
    "to-report",
    "end",
    "globals",
    "turtles-own",
    "patches-own",
    "links-own",
    "breed",
    "directed-link-breed",
    "undirected-link-breed",
    "extensions",
    "__includes",
];

/// Infix operators. These are identifiers to the tokenizer but never
/// dictionary lookups.
pub const OPERATORS: &[&str] = &[
    "+", "-", "*", "/", "^", "<", ">", "=", "!=", "<=", ">=", "and", "or", "xor", "mod",
];

const DECLARATION_BLOCKS: &[&str] = &[
    "globals",
    "turtles-own",
    "patches-own",
    "links-own",
    "breed",
    "directed-link-breed",
    "undirected-link-breed",
    "extensions",
    "__includes",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcedureDef {
    pub name: String,
    /// Index into [`LintContext::code`] of the `to`/`to-report` keyword.
    pub to_index: usize,
    pub name_index: Option<usize>,
    pub reporter: bool,
}

/// Tokens plus everything the first pass learned about them.
#[derive(Debug)]
pub struct LintContext<'a> {
    pub source: &'a str,
    pub dictionary: &'a Dictionary,
    /// All tokens, including comments and line ends.
    pub tokens: Vec<Token>,
    /// Tokens that matter for analysis (no comments or line ends).
    pub code: Vec<Token>,
    /// Lower-cased names declared anywhere in the chunk.
    pub declared: HashSet<String>,
    /// Indices into `code` that sit in a declaring position.
    pub declaration_sites: HashSet<usize>,
    pub procedures: Vec<ProcedureDef>,
    pub extensions: Vec<String>,
}

impl<'a> LintContext<'a> {
    pub fn new(source: &'a str, dictionary: &'a Dictionary) -> Self {
        let tokens = tokenize(source);
        let code: Vec<Token> = tokens
            .iter()
            .filter(|t| !matches!(t.kind, TokenKind::Comment | TokenKind::Eol))
            .cloned()
            .collect();
        let mut ctx = Self {
            source,
            dictionary,
            tokens,
            code,
            declared: HashSet::new(),
            declaration_sites: HashSet::new(),
            procedures: Vec::new(),
            extensions: Vec::new(),
        };
        ctx.collect_declarations();
        ctx
    }

    pub fn lower(&self, i: usize) -> String {
        self.code[i].text.to_lowercase()
    }

    pub fn is_keyword(name: &str) -> bool {
        KEYWORDS.contains(&name)
    }

    pub fn is_operator(name: &str) -> bool {
        OPERATORS.contains(&name)
    }

    fn is_own_block(name: &str) -> bool {
        name.len() > 4 && name.ends_with("-own")
    }

    fn declare(&mut self, i: usize) {
        let name = self.lower(i);
        self.declared.insert(name);
        self.declaration_sites.insert(i);
    }

    /// Identifier indices inside the bracket list opening at `open`, and the
    /// index of the closing bracket if one exists.
    fn bracket_list(&self, open: usize) -> (Vec<usize>, Option<usize>) {
        let mut idents = Vec::new();
        let mut depth = 0usize;
        for i in open..self.code.len() {
            match self.code[i].kind {
                TokenKind::OpenBracket => depth += 1,
                TokenKind::CloseBracket => {
                    depth -= 1;
                    if depth == 0 {
                        return (idents, Some(i));
                    }
                }
                TokenKind::Identifier if depth == 1 => {
                    let lower = self.lower(i);
                    if lower == "to" || lower == "to-report" || lower == "end" {
                        return (idents, None);
                    }
                    idents.push(i);
                }
                _ => {}
            }
        }
        (idents, None)
    }

    fn collect_declarations(&mut self) {
        let mut i = 0;
        let mut in_procedure = false;
        while i < self.code.len() {
            let tok = &self.code[i];
            if tok.kind == TokenKind::ReporterArrow {
                self.declare_arrow_params(i);
                i += 1;
                continue;
            }
            if tok.kind != TokenKind::Identifier {
                i += 1;
                continue;
            }
            let lower = self.lower(i);
            let next_is_open = self
                .code
                .get(i + 1)
                .is_some_and(|t| t.kind == TokenKind::OpenBracket);

            if !in_procedure
                && next_is_open
                && (DECLARATION_BLOCKS.contains(&lower.as_str()) || Self::is_own_block(&lower))
            {
                let (idents, close) = self.bracket_list(i + 1);
                self.declare_block(&lower, &idents);
                i = close.map_or(i + 2, |c| c + 1);
                continue;
            }

            match lower.as_str() {
                "to" | "to-report" => {
                    in_procedure = true;
                    let name_index = self
                        .code
                        .get(i + 1)
                        .filter(|t| t.kind == TokenKind::Identifier)
                        .filter(|t| !Self::is_keyword(&t.text.to_lowercase()))
                        .map(|_| i + 1);
                    let mut next = i + 1;
                    if let Some(n) = name_index {
                        self.declare(n);
                        next = n + 1;
                        if self.code.get(next).is_some_and(|t| t.kind == TokenKind::OpenBracket) {
                            let (params, close) = self.bracket_list(next);
                            for p in params {
                                self.declare(p);
                            }
                            next = close.map_or(next + 1, |c| c + 1);
                        }
                    }
                    self.procedures.push(ProcedureDef {
                        name: name_index.map(|n| self.lower(n)).unwrap_or_default(),
                        to_index: i,
                        name_index,
                        reporter: lower == "to-report",
                    });
                    i = next;
                    continue;
                }
                "end" => in_procedure = false,
                "let" if self.code.get(i + 1).is_some_and(|t| t.kind == TokenKind::Identifier) => {
                    self.declare(i + 1);
                    i += 2;
                    continue;
                }
                _ => {}
            }
            i += 1;
        }
    }

    /// `[ x -> ... ]`, `[ [a b] -> ... ]` and `[ -> ... ]`.
    fn declare_arrow_params(&mut self, arrow: usize) {
        if arrow == 0 {
            return;
        }
        let prev = arrow - 1;
        match self.code[prev].kind {
            TokenKind::Identifier => self.declare(prev),
            TokenKind::CloseBracket => {
                let mut j = prev;
                let mut params = Vec::new();
                while j > 0 {
                    j -= 1;
                    match self.code[j].kind {
                        TokenKind::Identifier => params.push(j),
                        TokenKind::OpenBracket => break,
                        _ => return,
                    }
                }
                for p in params {
                    self.declare(p);
                }
            }
            _ => {}
        }
    }

    fn declare_block(&mut self, keyword: &str, idents: &[usize]) {
        for &i in idents {
            self.declaration_sites.insert(i);
        }
        match keyword {
            "extensions" => {
                for &i in idents {
                    let name = self.lower(i);
                    self.extensions.push(name);
                }
            }
            "__includes" => {}
            "breed" => {
                if let [plural, singular, ..] = idents {
                    let (p, s) = (self.lower(*plural), self.lower(*singular));
                    self.declared.extend(turtle_breed_names(&p, &s));
                }
            }
            "directed-link-breed" | "undirected-link-breed" => {
                if let [plural, singular, ..] = idents {
                    let (p, s) = (self.lower(*plural), self.lower(*singular));
                    self.declared.extend(link_breed_names(&p, &s));
                }
            }
            _ => {
                for &i in idents {
                    let name = self.lower(i);
                    self.declared.insert(name);
                }
            }
        }
    }

    /// True if `name` (lower-case) is something this chunk may legally call.
    pub fn is_known(&self, name: &str) -> bool {
        if self.dictionary.contains(name)
            || self.declared.contains(name)
            || Self::is_keyword(name)
            || Self::is_operator(name)
        {
            return true;
        }
        if let Some((prefix, _)) = name.split_once(':') {
            return self.extensions.iter().any(|e| e == prefix);
        }
        false
    }
}

fn turtle_breed_names(plural: &str, singular: &str) -> Vec<String> {
    vec![
        plural.to_string(),
        singular.to_string(),
        format!("create-{plural}"),
        format!("create-ordered-{plural}"),
        format!("hatch-{plural}"),
        format!("sprout-{plural}"),
        format!("{plural}-here"),
        format!("{plural}-at"),
        format!("{plural}-on"),
        format!("{plural}-own"),
        format!("is-{singular}?"),
    ]
}

fn link_breed_names(plural: &str, singular: &str) -> Vec<String> {
    let mut names = vec![
        plural.to_string(),
        singular.to_string(),
        format!("{plural}-own"),
        format!("is-{singular}?"),
        format!("my-{plural}"),
        format!("my-in-{plural}"),
        format!("my-out-{plural}"),
        format!("{singular}-neighbor?"),
        format!("{singular}-neighbors"),
        format!("in-{singular}-neighbor?"),
        format!("in-{singular}-neighbors"),
        format!("out-{singular}-neighbor?"),
        format!("out-{singular}-neighbors"),
        format!("{singular}-with"),
        format!("in-{singular}-from"),
        format!("out-{singular}-to"),
    ];
    for dir in ["with", "to", "from"] {
        names.push(format!("create-{singular}-{dir}"));
        names.push(format!("create-{plural}-{dir}"));
    }
    names
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::docs::Corpus;

    fn dict() -> Dictionary {
        Dictionary::from_corpus(&Corpus::bundled()).unwrap()
    }

    #[test]
    fn collects_globals_procedures_lets_and_params() {
        let d = dict();
        let src = "globals [ food ]\nturtles-own [ energy ]\nto move [ steps ]\n let speed 2\n foreach [1 2] [ x -> fd x ]\n map [ [a b] -> a ] [1]\nend";
        let ctx = LintContext::new(src, &d);
        for name in ["food", "energy", "move", "steps", "speed", "x", "a", "b"] {
            assert!(ctx.declared.contains(name), "{name} not declared");
        }
        assert_eq!(ctx.procedures.len(), 1);
        assert_eq!(ctx.procedures[0].name, "move");
    }

    #[test]
    fn breeds_generate_names() {
        let d = dict();
        let ctx = LintContext::new("breed [ wolves wolf ]\nwolves-own [ hunger ]", &d);
        for name in ["wolves", "wolf", "create-wolves", "wolves-here", "is-wolf?", "hunger"] {
            assert!(ctx.is_known(name), "{name} unknown");
        }
    }

    #[test]
    fn extension_primitives_known_when_declared() {
        let d = dict();
        let ctx = LintContext::new("extensions [ csv ]", &d);
        assert!(ctx.is_known("csv:from-file"));
        assert!(!ctx.is_known("table:make"));
    }
}
