//! Core of a retrieval-augmented NetLogo programming assistant: a static
//! checker, a documentation index, prompt templates with structured output
//! parsing, LLM backends and the plan/act loop that ties them together.

pub mod docs;
pub mod lint;
pub mod llm;
pub mod orchestrator;
pub mod prompt;
