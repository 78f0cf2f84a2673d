//! Configuration types for one evaluation cell: which model, which prompt
//! strategy, and which input fields the prompt carries.

use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

/// Which input fields the prompt carries. Only the schema variant embeds
/// the Cooklang syntax specification block, and the method-only variant
/// never mentions ingredients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputVariant {
    MethodOnly,
    MethodPlusIngredients,
    MethodPlusIngredientsPlusSchema,
}

impl InputVariant {
    pub fn wants_ingredients(self) -> bool {
        !matches!(self, InputVariant::MethodOnly)
    }

    pub fn wants_schema(self) -> bool {
        matches!(self, InputVariant::MethodPlusIngredientsPlusSchema)
    }

    pub fn label(self) -> &'static str {
        match self {
            InputVariant::MethodOnly => "method",
            InputVariant::MethodPlusIngredients => "method+ingredients",
            InputVariant::MethodPlusIngredientsPlusSchema => "method+ingredients+schema",
        }
    }
}

/// One worked example shown to the model before the target recipe.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Demo {
    #[serde(default)]
    pub ingredients: Option<String>,
    pub recipe_text: String,
    pub cooklang: String,
}

/// Instruction and demonstrations produced by an external prompt optimizer,
/// loaded from a JSON file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExternalTemplate {
    pub instruction: String,
    #[serde(default)]
    pub demos: Vec<Demo>,
}

#[derive(Debug, Error)]
pub enum TemplateError {
    #[error("cannot read template {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed template {path}: {source}")]
    Malformed {
        path: String,
        #[source]
        source: serde_json::Error,
    },
}

impl ExternalTemplate {
    pub fn load(path: &Path) -> Result<Self, TemplateError> {
        let body = std::fs::read_to_string(path).map_err(|source| TemplateError::Io {
            path: path.display().to_string(),
            source,
        })?;
        serde_json::from_str(&body).map_err(|source| TemplateError::Malformed {
            path: path.display().to_string(),
            source,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PromptStrategy {
    ZeroShot,
    FewShot(Vec<Demo>),
    ExternalTemplate(ExternalTemplate),
}

impl PromptStrategy {
    pub fn label(&self) -> &'static str {
        match self {
            PromptStrategy::ZeroShot => "zero-shot",
            PromptStrategy::FewShot(_) => "few-shot",
            PromptStrategy::ExternalTemplate(_) => "external-template",
        }
    }
}

/// Where completions come from. Credentials are looked up in the named
/// environment variable, never stored in files.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EndpointConfig {
    pub base_url: String,
    #[serde(default)]
    pub api_key_env: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct RetryPolicy {
    pub max_retries: u32,
    pub base_delay_ms: u64,
    pub max_delay_ms: u64,
}

impl Default for RetryPolicy {
    fn default() -> Self {
        Self {
            max_retries: 3,
            base_delay_ms: 250,
            max_delay_ms: 4_000,
        }
    }
}

impl RetryPolicy {
    /// No waiting between attempts; for tests and offline backends.
    pub fn immediate() -> Self {
        Self {
            base_delay_ms: 0,
            max_delay_ms: 0,
            ..Self::default()
        }
    }

    pub fn delay_for(&self, attempt: u32) -> std::time::Duration {
        let exp = self.base_delay_ms.saturating_mul(1u64 << attempt.min(16));
        std::time::Duration::from_millis(exp.min(self.max_delay_ms))
    }
}

/// One cell of the experiment grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    pub model_id: String,
    #[serde(default)]
    pub endpoint: EndpointConfig,
    pub variant: InputVariant,
    pub strategy: PromptStrategy,
    #[serde(default)]
    pub temperature: f64,
    #[serde(default = "default_max_output_tokens")]
    pub max_output_tokens: u32,
    #[serde(default)]
    pub retry: RetryPolicy,
}

fn default_max_output_tokens() -> u32 {
    2_048
}

impl EvalConfig {
    pub fn new(model_id: impl Into<String>, variant: InputVariant, strategy: PromptStrategy) -> Self {
        Self {
            model_id: model_id.into(),
            endpoint: EndpointConfig::default(),
            variant,
            strategy,
            temperature: 0.0,
            max_output_tokens: default_max_output_tokens(),
            retry: RetryPolicy::default(),
        }
    }

    pub fn label(&self) -> String {
        format!(
            "{}/{}/{}",
            self.model_id,
            self.strategy.label(),
            self.variant.label()
        )
    }
}
