//! Chat-completions backends.
//!
//! The wire format is the JSON chat-completions protocol: a request of
//! role-tagged messages, a response with the assistant content under
//! `choices[0].message.content`. [`HttpBackend`] speaks it over HTTP(S);
//! [`MockBackend`] serves scripted or computed responses for offline runs
//! and tests.

use crate::config::EndpointConfig;
use crate::prompt::{Message, Role};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;
use std::sync::Mutex;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChatRequest {
    pub model: String,
    pub messages: Vec<Message>,
    pub temperature: f64,
    pub max_tokens: u32,
}

impl ChatRequest {
    /// Content of the final user message; the target recipe fields live there.
    pub fn target_user_content(&self) -> Option<&str> {
        self.messages
            .iter()
            .rev()
            .find(|m| m.role == Role::User)
            .map(|m| m.content.as_str())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenUsage {
    pub prompt_tokens: u64,
    pub completion_tokens: u64,
    pub total_tokens: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChatResponse {
    pub content: String,
    #[serde(default)]
    pub usage: TokenUsage,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BackendError {
    #[error("transport failure: {0}")]
    Transport(String),
    #[error("backend returned status {code}: {body}")]
    Status { code: u16, body: String },
    #[error("malformed backend response: {0}")]
    Protocol(String),
    #[error("credentials variable `{0}` is not set")]
    MissingCredentials(String),
    #[error("no recorded response for request digest {0}")]
    CacheMiss(String),
}

impl BackendError {
    /// Transient failures worth retrying. Well-formed 4xx responses are not.
    pub fn is_retryable(&self) -> bool {
        match self {
            BackendError::Transport(_) => true,
            BackendError::Status { code, .. } => *code >= 500,
            _ => false,
        }
    }
}

pub trait ChatBackend: Send + Sync {
    fn complete(&self, request: &ChatRequest) -> Result<ChatResponse, BackendError>;
}

// ---------------------------------------------------------------------------
// HTTP backend
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct WireRequest<'a> {
    model: &'a str,
    messages: &'a [Message],
    temperature: f64,
    max_tokens: u32,
}

#[derive(Deserialize)]
struct WireResponse {
    choices: Vec<WireChoice>,
    #[serde(default)]
    usage: Option<WireUsage>,
}

#[derive(Deserialize)]
struct WireChoice {
    message: WireMessage,
}

#[derive(Deserialize)]
struct WireMessage {
    content: Option<String>,
}

#[derive(Deserialize, Default)]
struct WireUsage {
    #[serde(default)]
    prompt_tokens: u64,
    #[serde(default)]
    completion_tokens: u64,
    #[serde(default)]
    total_tokens: u64,
}

/// Client for any chat-completions-compatible endpoint.
pub struct HttpBackend {
    client: reqwest::blocking::Client,
    url: String,
    api_key: Option<String>,
}

impl HttpBackend {
    /// Build a client for `endpoint`. The API key is read from the
    /// environment variable named in the config; a named-but-unset variable
    /// is an error so runs fail before the first request.
    pub fn new(endpoint: &EndpointConfig) -> Result<Self, BackendError> {
        let api_key = match &endpoint.api_key_env {
            Some(var) => Some(
                std::env::var(var).map_err(|_| BackendError::MissingCredentials(var.clone()))?,
            ),
            None => None,
        };
        let base = endpoint.base_url.trim_end_matches('/');
        let url = if base.ends_with("/chat/completions") {
            base.to_string()
        } else {
            format!("{base}/chat/completions")
        };
        Ok(Self {
            client: reqwest::blocking::Client::new(),
            url,
            api_key,
        })
    }
}

impl ChatBackend for HttpBackend {
    fn complete(&self, request: &ChatRequest) -> Result<ChatResponse, BackendError> {
        let wire = WireRequest {
            model: &request.model,
            messages: &request.messages,
            temperature: request.temperature,
            max_tokens: request.max_tokens,
        };
        let mut builder = self.client.post(&self.url).json(&wire);
        if let Some(key) = &self.api_key {
            builder = builder.bearer_auth(key);
        }
        let response = builder
            .send()
            .map_err(|e| BackendError::Transport(e.to_string()))?;

        let status = response.status();
        let body = response
            .text()
            .map_err(|e| BackendError::Transport(e.to_string()))?;
        if !status.is_success() {
            return Err(BackendError::Status {
                code: status.as_u16(),
                body: truncate(&body, 200),
            });
        }

        let parsed: WireResponse =
            serde_json::from_str(&body).map_err(|e| BackendError::Protocol(e.to_string()))?;
        let content = parsed
            .choices
            .first()
            .and_then(|c| c.message.content.clone())
            .ok_or_else(|| BackendError::Protocol("response carries no content".into()))?;
        let usage = parsed.usage.unwrap_or_default();
        Ok(ChatResponse {
            content,
            usage: TokenUsage {
                prompt_tokens: usage.prompt_tokens,
                completion_tokens: usage.completion_tokens,
                total_tokens: usage.total_tokens,
            },
        })
    }
}

fn truncate(s: &str, max: usize) -> String {
    if s.len() <= max {
        s.to_string()
    } else {
        let mut end = max;
        while !s.is_char_boundary(end) {
            end -= 1;
        }
        format!("{}…", &s[..end])
    }
}

// ---------------------------------------------------------------------------
// mock backends
// ---------------------------------------------------------------------------

type MockFn = Box<dyn Fn(&ChatRequest) -> Result<ChatResponse, BackendError> + Send + Sync>;

/// Computed or scripted responses for offline runs.
pub struct MockBackend {
    handler: MockFn,
}

impl MockBackend {
    pub fn new(
        handler: impl Fn(&ChatRequest) -> Result<ChatResponse, BackendError> + Send + Sync + 'static,
    ) -> Self {
        Self {
            handler: Box::new(handler),
        }
    }

    /// Echo backend: answers with the reference Cooklang of the sample whose
    /// `recipe_text` field appears in the target user message.
    pub fn echo(samples: &[cookeval_core::RecipeSample]) -> Self {
        let table: Vec<(String, String)> = samples
            .iter()
            .map(|s| (s.recipe_text.trim().to_string(), s.reference_cook.clone()))
            .collect();
        Self::new(move |request| {
            let target = request
                .target_user_content()
                .ok_or_else(|| BackendError::Protocol("request has no user message".into()))?;
            let recipe_text = target
                .split_once("recipe_text:")
                .map(|(_, rest)| rest.trim())
                .unwrap_or_else(|| target.trim());
            table
                .iter()
                .find(|(text, _)| text == recipe_text)
                .map(|(_, reference)| ChatResponse {
                    content: reference.clone(),
                    usage: TokenUsage::default(),
                })
                .ok_or_else(|| {
                    BackendError::Protocol("echo backend knows no such recipe".into())
                })
        })
    }

    /// Scripted backend: returns the queued outcomes in order and fails once
    /// the script runs out.
    pub fn scripted(outcomes: Vec<Result<String, BackendError>>) -> Self {
        let queue = Mutex::new(VecDeque::from(outcomes));
        Self::new(move |_| {
            let next = queue.lock().unwrap().pop_front();
            match next {
                Some(Ok(content)) => Ok(ChatResponse {
                    content,
                    usage: TokenUsage::default(),
                }),
                Some(Err(e)) => Err(e),
                None => Err(BackendError::Protocol("script exhausted".into())),
            }
        })
    }
}

impl ChatBackend for MockBackend {
    fn complete(&self, request: &ChatRequest) -> Result<ChatResponse, BackendError> {
        (self.handler)(request)
    }
}
