//! The built-in rule set. Each rule inspects a [`LintContext`] and appends
//! findings; the linter adds clarified messages afterwards.

use std::collections::HashMap;

use super::analysis::LintContext;
use super::token::{string_is_terminated, Token, TokenKind};
use super::{codes, Finding, Severity, Span};

pub trait LintRule: Send + Sync {
    fn check(&self, ctx: &LintContext<'_>, out: &mut Vec<Finding>);
}

fn finding(code: &str, severity: Severity, span: Span, raw: String, subject: Option<String>) -> Finding {
    Finding {
        code: code.into(),
        severity,
        span,
        raw_message: raw,
        subject,
    }
}

/// Identifiers in call position that are neither primitives nor declared.
pub struct UnknownPrimitive;

impl LintRule for UnknownPrimitive {
    fn check(&self, ctx: &LintContext<'_>, out: &mut Vec<Finding>) {
        for (i, tok) in ctx.code.iter().enumerate() {
            if tok.kind != TokenKind::Identifier || ctx.declaration_sites.contains(&i) {
                continue;
            }
            let name = tok.text.to_lowercase();
            if ctx.is_known(&name) {
                continue;
            }
            out.push(finding(
                codes::UNKNOWN_PRIMITIVE,
                Severity::Error,
                Span::of(tok),
                format!("Nothing named {} has been defined.", tok.text.to_uppercase()),
                Some(name),
            ));
        }
    }
}

/// `[`/`]` and `(`/`)` pairing. An `end` keyword closes anything left open
/// in the procedure so one missing bracket yields one finding.
pub struct BalancedBrackets;

fn closer_for(kind: TokenKind) -> &'static str {
    if kind == TokenKind::OpenBracket {
        "]"
    } else {
        ")"
    }
}

fn unclosed(tok: &Token) -> Finding {
    let what = if tok.kind == TokenKind::OpenBracket {
        "bracket"
    } else {
        "parenthesis"
    };
    finding(
        codes::UNBALANCED_BRACKET,
        Severity::Error,
        Span::of(tok),
        format!("Expected a closing {what} for this {}.", tok.text),
        Some(tok.text.clone()),
    )
}

impl LintRule for BalancedBrackets {
    fn check(&self, ctx: &LintContext<'_>, out: &mut Vec<Finding>) {
        let mut stack: Vec<&Token> = Vec::new();
        for tok in &ctx.code {
            match tok.kind {
                TokenKind::OpenBracket | TokenKind::OpenParen => stack.push(tok),
                TokenKind::CloseBracket | TokenKind::CloseParen => {
                    let wanted_open = if tok.kind == TokenKind::CloseBracket {
                        TokenKind::OpenBracket
                    } else {
                        TokenKind::OpenParen
                    };
                    match stack.pop() {
                        Some(open) if open.kind == wanted_open => {}
                        Some(open) => out.push(finding(
                            codes::UNBALANCED_BRACKET,
                            Severity::Error,
                            Span::of(tok),
                            format!(
                                "Expected {} to close the {} on line {}, found {}.",
                                closer_for(open.kind),
                                open.text,
                                open.line,
                                tok.text
                            ),
                            Some(tok.text.clone()),
                        )),
                        None => out.push(finding(
                            codes::UNBALANCED_BRACKET,
                            Severity::Error,
                            Span::of(tok),
                            format!("Found {} without a matching opening {}.", tok.text, if tok.kind == TokenKind::CloseBracket { "[" } else { "(" }),
                            Some(tok.text.clone()),
                        )),
                    }
                }
                TokenKind::Identifier if tok.is_ident("end") => {
                    out.extend(stack.drain(..).map(unclosed));
                }
                _ => {}
            }
        }
        out.extend(stack.into_iter().map(unclosed));
    }
}

/// `to`/`to-report`/`end` structure, naming and redefinitions.
pub struct ProcedureStructure;

impl LintRule for ProcedureStructure {
    fn check(&self, ctx: &LintContext<'_>, out: &mut Vec<Finding>) {
        let mut open: Option<usize> = None;
        let mut defs = ctx.procedures.iter();
        let mut seen: HashMap<String, usize> = HashMap::new();

        let missing_end = |to_index: usize| {
            let to_tok = &ctx.code[to_index];
            let def = ctx.procedures.iter().find(|p| p.to_index == to_index);
            let name = def.map(|d| d.name.clone()).filter(|n| !n.is_empty());
            let end_tok = def
                .and_then(|d| d.name_index)
                .map_or(to_tok, |n| &ctx.code[n]);
            finding(
                codes::MISSING_END,
                Severity::Error,
                Span::between(to_tok, end_tok),
                format!(
                    "Missing END for procedure {}.",
                    name.as_deref().unwrap_or("(unnamed)").to_uppercase()
                ),
                name,
            )
        };

        for (i, tok) in ctx.code.iter().enumerate() {
            if tok.kind != TokenKind::Identifier {
                continue;
            }
            let lower = tok.text.to_lowercase();
            match lower.as_str() {
                "to" | "to-report" => {
                    if let Some(prev) = open.take() {
                        out.push(missing_end(prev));
                    }
                    open = Some(i);
                    let Some(def) = defs.next() else { continue };
                    match def.name_index {
                        None => out.push(finding(
                            codes::MISSING_PROCEDURE_NAME,
                            Severity::Error,
                            Span::of(tok),
                            format!("Expected a procedure name after {}.", lower.to_uppercase()),
                            None,
                        )),
                        Some(n) => {
                            let name_tok = &ctx.code[n];
                            if let Some(spec) = ctx.dictionary.lookup(&def.name) {
                                out.push(finding(
                                    codes::PRIMITIVE_REDEFINED,
                                    Severity::Error,
                                    Span::of(name_tok),
                                    format!(
                                        "There is already a primitive {} called {}.",
                                        match spec.kind {
                                            crate::docs::SyntaxKind::Command => "command",
                                            crate::docs::SyntaxKind::Reporter => "reporter",
                                        },
                                        def.name.to_uppercase()
                                    ),
                                    Some(def.name.clone()),
                                ));
                            } else if seen.contains_key(&def.name) {
                                out.push(finding(
                                    codes::PROCEDURE_REDEFINED,
                                    Severity::Error,
                                    Span::of(name_tok),
                                    format!("There is already a procedure called {}.", def.name.to_uppercase()),
                                    Some(def.name.clone()),
                                ));
                            } else {
                                seen.insert(def.name.clone(), n);
                            }
                        }
                    }
                }
                "end" if open.take().is_none() => {
                    out.push(finding(
                        codes::UNEXPECTED_END,
                        Severity::Error,
                        Span::of(tok),
                        "END without a matching TO or TO-REPORT.".into(),
                        None,
                    ));
                }
                _ => {}
            }
        }
        if let Some(prev) = open {
            out.push(missing_end(prev));
        }
    }
}

pub struct UnterminatedString;

impl LintRule for UnterminatedString {
    fn check(&self, ctx: &LintContext<'_>, out: &mut Vec<Finding>) {
        for tok in &ctx.code {
            if tok.kind == TokenKind::StringLiteral && !string_is_terminated(tok) {
                out.push(finding(
                    codes::UNTERMINATED_STRING,
                    Severity::Error,
                    Span::of(tok),
                    "Closing double quote is missing.".into(),
                    None,
                ));
            }
        }
    }
}

/// Conservative arity check: a primitive that needs inputs but is followed
/// directly by a closing bracket, `end`, or the end of the chunk. Reported
/// as a warning because static arity in NetLogo is approximate.
pub struct MissingInputs;

impl LintRule for MissingInputs {
    fn check(&self, ctx: &LintContext<'_>, out: &mut Vec<Finding>) {
        for (i, tok) in ctx.code.iter().enumerate() {
            if tok.kind != TokenKind::Identifier || ctx.declaration_sites.contains(&i) {
                continue;
            }
            let name = tok.text.to_lowercase();
            if ctx.declared.contains(&name) {
                continue;
            }
            let Some(spec) = ctx.dictionary.lookup(&name) else { continue };
            if spec.arity_min == 0 {
                continue;
            }
            let starved = match ctx.code.get(i + 1) {
                None => true,
                Some(next) => {
                    matches!(next.kind, TokenKind::CloseBracket | TokenKind::CloseParen)
                        || next.is_ident("end")
                }
            };
            if starved {
                let plural = if spec.arity_min == 1 { "input" } else { "inputs" };
                out.push(finding(
                    codes::ARITY,
                    Severity::Warning,
                    Span::of(tok),
                    format!("{} expected {} {plural}.", name.to_uppercase(), spec.arity_min),
                    Some(name),
                ));
            }
        }
    }
}

pub fn default_rules() -> Vec<Box<dyn LintRule>> {
    vec![
        Box::new(UnknownPrimitive),
        Box::new(BalancedBrackets),
        Box::new(ProcedureStructure),
        Box::new(UnterminatedString),
        Box::new(MissingInputs),
    ]
}
