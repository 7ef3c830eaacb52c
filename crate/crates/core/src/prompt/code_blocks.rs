use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeBlock {
    pub code: String,
    /// Info string after the opening fence, if any.
    pub language: Option<String>,
}

fn fence_info(line: &str) -> Option<&str> {
    line.trim_start().strip_prefix("```").map(str::trim)
}

/// Fenced blocks in order of appearance. A fence left open runs to the end
/// of the text.
pub fn extract_code_blocks(text: &str) -> Vec<CodeBlock> {
    let mut blocks = Vec::new();
    let mut current: Option<(Option<String>, Vec<&str>)> = None;
    for line in text.lines() {
        match (&mut current, fence_info(line)) {
            (None, Some(info)) => {
                let language = info.split_whitespace().next().map(str::to_string);
                current = Some((language, Vec::new()));
            }
            (Some(_), Some("")) => {
                let (language, lines) = current.take().expect("open block");
                blocks.push(CodeBlock {
                    code: lines.join("\n"),
                    language,
                });
            }
            (Some((_, lines)), _) => lines.push(line),
            (None, None) => {}
        }
    }
    if let Some((language, lines)) = current {
        blocks.push(CodeBlock {
            code: lines.join("\n"),
            language,
        });
    }
    blocks
}
