//! Total tokenizer for NetLogo source text.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TokenKind {
    Identifier,
    Number,
    StringLiteral,
    OpenBracket,
    CloseBracket,
    OpenParen,
    CloseParen,
    ReporterArrow,
    Comment,
    Eol,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub kind: TokenKind,
    /// Verbatim slice of the source.
    pub text: String,
    /// 1-based.
    pub line: usize,
    /// 1-based, counted in characters.
    pub column: usize,
    /// Byte offset of the first character.
    pub offset: usize,
}

impl Token {
    pub fn end_column(&self) -> usize {
        self.column + self.text.chars().count()
    }

    pub fn is_ident(&self, lower: &str) -> bool {
        self.kind == TokenKind::Identifier && self.text.eq_ignore_ascii_case(lower)
    }
}

fn is_delimiter(ch: char) -> bool {
    ch.is_whitespace() || matches!(ch, '[' | ']' | '(' | ')' | ';' | '"')
}

/// NetLogo identifiers may contain almost any punctuation (`any?`, `<=`,
/// `set-xy`), so an identifier is a maximal run of non-delimiter characters.
/// Characters that can never start or continue a name become one-character
/// identifiers.
fn is_word_char(ch: char) -> bool {
    !is_delimiter(ch) && !matches!(ch, '{' | '}' | ',')
}

fn looks_numeric(text: &str) -> bool {
    let rest = text.strip_prefix('-').unwrap_or(text);
    let rest = rest.strip_prefix('.').unwrap_or(rest);
    rest.chars().next().is_some_and(|c| c.is_ascii_digit()) && text.parse::<f64>().is_ok()
}

/// Splits `source` into tokens. Never fails: every character ends up either
/// in a token or in skipped non-newline whitespace.
pub fn tokenize(source: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut chars = source.char_indices().peekable();
    let mut line = 1;
    let mut column = 1;

    while let Some(&(start, ch)) = chars.peek() {
        let start_line = line;
        let start_col = column;
        let take = |kind: TokenKind, end: usize, tokens: &mut Vec<Token>| {
            tokens.push(Token {
                kind,
                text: source[start..end].to_string(),
                line: start_line,
                column: start_col,
                offset: start,
            });
        };

        match ch {
            '\n' => {
                chars.next();
                take(TokenKind::Eol, start + 1, &mut tokens);
                line += 1;
                column = 1;
            }
            '\r' if source[start..].starts_with("\r\n") => {
                chars.next();
                chars.next();
                take(TokenKind::Eol, start + 2, &mut tokens);
                line += 1;
                column = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                column += 1;
            }
            '[' | ']' | '(' | ')' => {
                chars.next();
                column += 1;
                let kind = match ch {
                    '[' => TokenKind::OpenBracket,
                    ']' => TokenKind::CloseBracket,
                    '(' => TokenKind::OpenParen,
                    _ => TokenKind::CloseParen,
                };
                take(kind, start + 1, &mut tokens);
            }
            ';' => {
                let mut end = start;
                while let Some(&(i, c)) = chars.peek() {
                    if c == '\n' || source[i..].starts_with("\r\n") {
                        break;
                    }
                    chars.next();
                    column += 1;
                    end = i + c.len_utf8();
                }
                take(TokenKind::Comment, end, &mut tokens);
            }
            '"' => {
                chars.next();
                column += 1;
                let mut end = start + 1;
                let mut escaped = false;
                while let Some(&(i, c)) = chars.peek() {
                    if c == '\n' || source[i..].starts_with("\r\n") {
                        break;
                    }
                    chars.next();
                    column += 1;
                    end = i + c.len_utf8();
                    if escaped {
                        escaped = false;
                    } else if c == '\\' {
                        escaped = true;
                    } else if c == '"' {
                        break;
                    }
                }
                take(TokenKind::StringLiteral, end, &mut tokens);
            }
            c if !is_word_char(c) => {
                chars.next();
                column += 1;
                take(TokenKind::Identifier, start + c.len_utf8(), &mut tokens);
            }
            _ => {
                let mut end = start;
                while let Some(&(i, c)) = chars.peek() {
                    if !is_word_char(c) {
                        break;
                    }
                    chars.next();
                    column += 1;
                    end = i + c.len_utf8();
                }
                let text = &source[start..end];
                let kind = if text == "->" {
                    TokenKind::ReporterArrow
                } else if looks_numeric(text) {
                    TokenKind::Number
                } else {
                    TokenKind::Identifier
                };
                take(kind, end, &mut tokens);
            }
        }
    }
    tokens
}

/// True for a string token that has its closing quote.
pub fn string_is_terminated(token: &Token) -> bool {
    if token.kind != TokenKind::StringLiteral || token.text.len() < 2 || !token.text.ends_with('"') {
        return false;
    }
    // Count the backslashes immediately before the closing quote.
    let body = &token.text[1..token.text.len() - 1];
    body.chars().rev().take_while(|&c| c == '\\').count() % 2 == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn kinds(src: &str) -> Vec<TokenKind> {
        tokenize(src).into_iter().map(|t| t.kind).collect()
    }

    /// Rebuilds the source from tokens, re-inserting the skipped whitespace
    /// from the gaps between byte offsets.
    fn reconstruct(src: &str, tokens: &[Token]) -> String {
        let mut out = String::new();
        let mut pos = 0;
        for t in tokens {
            let gap = &src[pos..t.offset];
            assert!(gap.chars().all(|c| c.is_whitespace() && c != '\n'));
            out.push_str(gap);
            out.push_str(&t.text);
            pos = t.offset + t.text.len();
        }
        let tail = &src[pos..];
        assert!(tail.chars().all(|c| c.is_whitespace() && c != '\n'));
        out.push_str(tail);
        out
    }

    #[test]
    fn empty_input() {
        assert!(tokenize("").is_empty());
    }

    #[test]
    fn command_with_comment() {
        let toks = tokenize("crt 10 ; make turtles");
        assert_eq!(
            toks.iter().map(|t| (t.kind, t.text.as_str())).collect::<Vec<_>>(),
            vec![
                (TokenKind::Identifier, "crt"),
                (TokenKind::Number, "10"),
                (TokenKind::Comment, "; make turtles"),
            ]
        );
        assert_eq!(toks[2].column, 8);
    }

    #[test]
    fn ask_block() {
        use TokenKind::*;
        assert_eq!(
            kinds("ask turtles [ fd 1 ]"),
            vec![Identifier, Identifier, OpenBracket, Identifier, Number, CloseBracket]
        );
    }

    #[test]
    fn arrow_numbers_and_punctuated_names() {
        use TokenKind::*;
        assert_eq!(
            kinds("[ x -> x <= -1.5 ] any? 1e3 {"),
            vec![OpenBracket, Identifier, ReporterArrow, Identifier, Identifier, Number, CloseBracket, Identifier, Number, Identifier]
        );
        assert_eq!(kinds("inf nan -"), vec![Identifier, Identifier, Identifier]);
    }

    #[test]
    fn strings_and_lines() {
        let toks = tokenize("show \"a \\\" b\"\r\nfd 1");
        assert_eq!(toks[1].text, "\"a \\\" b\"");
        assert!(string_is_terminated(&toks[1]));
        assert_eq!(toks[2].kind, TokenKind::Eol);
        assert_eq!(toks[2].text, "\r\n");
        assert_eq!((toks[3].line, toks[3].column), (2, 1));
    }

    #[test]
    fn unterminated_string_stops_at_newline() {
        let toks = tokenize("show \"oops\nfd 1");
        assert_eq!(toks[1].text, "\"oops");
        assert!(!string_is_terminated(&toks[1]));
        assert_eq!(toks[3].text, "fd");
    }

    proptest! {
        #[test]
        fn tokens_plus_whitespace_reconstruct_input(src in "\\PC{0,80}|[a-z \\[\\]()\";\\n\\r\t0-9.>-]{0,80}") {
            let toks = tokenize(&src);
            prop_assert_eq!(reconstruct(&src, &toks), src.clone());
            for t in &toks {
                prop_assert!(!t.text.is_empty());
                prop_assert_eq!(&src[t.offset..t.offset + t.text.len()], t.text.as_str());
                let line_text = src.split('\n').nth(t.line - 1).unwrap();
                prop_assert!(t.column <= line_text.chars().count() + 1);
            }
        }
    }
}
