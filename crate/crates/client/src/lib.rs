//! Prompt assembly and chat-completions backends for converting plain-text
//! recipes to Cooklang, with offline mocks and a record/replay transcript
//! cache for deterministic runs.

pub mod backend;
pub mod bootstrap;
pub mod config;
pub mod convert;
pub mod extract;
pub mod prompt;
pub mod transcript;

pub use backend::{
    BackendError, ChatBackend, ChatRequest, ChatResponse, HttpBackend, MockBackend, TokenUsage,
};
pub use bootstrap::{bootstrap_fewshot, BootstrapError};
pub use config::{
    Demo, EndpointConfig, EvalConfig, ExternalTemplate, InputVariant, PromptStrategy, RetryPolicy,
    TemplateError,
};
pub use convert::{convert, convert_all, ConversionResult, ConvertError};
pub use extract::extract_cooklang;
pub use prompt::{build_prompt, Message, PromptBundle, PromptError, Role, COOKLANG_SCHEMA_BLOCK};
pub use transcript::{request_digest, RecordReplayBackend, TranscriptEntry, TranscriptStore};
