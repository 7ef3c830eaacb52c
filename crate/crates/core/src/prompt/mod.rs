//! Prompt templates that push the model toward a Plan / Action / Parameter
//! reply, and a tolerant parser for those replies.

mod code_blocks;
mod step;
mod template;

use thiserror::Error;

pub use code_blocks::{extract_code_blocks, CodeBlock};
pub use step::{
    parse_step, Action, ActionKind, Question, StructuredStep, MAX_QUESTIONS, MAX_SUGGESTIONS, UNPARSED_PLAN,
};
pub use template::{slots, Bindings, FewShot, Phase, PromptTemplate, RenderedPrompt, SlotSpec, TemplateSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PromptError {
    #[error("slot {0:?} is referenced but not bound")]
    UnboundSlot(String),
    #[error("no template for phase {0:?}")]
    MissingTemplate(String),
    #[error("template: {0}")]
    Template(String),
}
