//! Prompt assembly for the conversion task.
//!
//! Every prompt opens with a system instruction that ends with the
//! return-only directive; the schema input variant additionally embeds the
//! Cooklang syntax specification. Few-shot demonstrations appear as
//! alternating user/assistant pairs before the target recipe, and the input
//! fields are labelled `ingredients:` and `recipe_text:`.

use crate::config::{Demo, EvalConfig, InputVariant, PromptStrategy};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    System,
    User,
    Assistant,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Message {
    pub role: Role,
    pub content: String,
}

impl Message {
    pub fn system(content: impl Into<String>) -> Self {
        Message {
            role: Role::System,
            content: content.into(),
        }
    }

    pub fn user(content: impl Into<String>) -> Self {
        Message {
            role: Role::User,
            content: content.into(),
        }
    }

    pub fn assistant(content: impl Into<String>) -> Self {
        Message {
            role: Role::Assistant,
            content: content.into(),
        }
    }
}

/// The ordered chat messages for one conversion request. The final message
/// is always the user turn holding the target recipe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PromptBundle {
    pub messages: Vec<Message>,
}

pub const BASE_INSTRUCTION: &str =
    "Convert plain recipe text with provided ingredients into Cooklang text format.";

pub const RETURN_DIRECTIVE: &str = "Return only Cooklang formatted recipe, dont return any other information. Return whole recipe in Cooklang format! Dont stop till you reach the end of the recipe.";

/// The Cooklang syntax specification embedded by the schema input variant.
pub const COOKLANG_SCHEMA_BLOCK: &str = r#"Cooklang Recipe Specification:
    1. Ingredients
    - Use `@` to define ingredients
    - For multi-word ingredients, end with `{}`
    - Specify quantity in `{}` after the name
    - Use `%` to separate quantity and units
    ```
    @salt
    @ground black pepper{}
    @potato{2}
    @bacon strips{1%kg}
    @syrup{1/2%tablespoon}
    ```
    2. Comments
    - Single-line: Use `--` at the end of a line
    - Multi-line: Enclose in `[- -]`
    ```
    -- Don't burn the roux!
    Mash @potato{2%kg} until smooth
    ```
    3. Cookware
    - Define with `#`
    - Use `{}` for multi-word items
    ```
    #pot
    #potato masher{}
    ```
    4. Timers
    - Define with `~`
    - Specify duration in `{}`
    - Can include a name before the duration
    ```
    ~{25%minutes}
    ~eggs{3%minutes}
    ```"#;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PromptError {
    #[error("sample `{sample_id}` is missing the required `{field}` field")]
    MissingField {
        sample_id: String,
        field: &'static str,
    },
}

/// Assemble the chat messages for converting `sample` under `config`.
/// Pure: identical inputs produce byte-identical bundles.
pub fn build_prompt(
    sample: &cookeval_core::RecipeSample,
    config: &EvalConfig,
) -> Result<PromptBundle, PromptError> {
    let mut messages = vec![Message::system(system_instruction(config))];

    let demos: &[Demo] = match &config.strategy {
        PromptStrategy::ZeroShot => &[],
        PromptStrategy::FewShot(demos) => demos,
        PromptStrategy::ExternalTemplate(t) => &t.demos,
    };
    for demo in demos {
        let fields = render_fields(
            config.variant,
            demo.ingredients.as_deref(),
            &demo.recipe_text,
            "demo",
        )?;
        messages.push(Message::user(fields));
        messages.push(Message::assistant(demo.cooklang.clone()));
    }

    let ingredients = Some(sample.ingredients_text.as_str()).filter(|s| !s.trim().is_empty());
    messages.push(Message::user(render_fields(
        config.variant,
        ingredients,
        &sample.recipe_text,
        &sample.id,
    )?));

    Ok(PromptBundle { messages })
}

fn system_instruction(config: &EvalConfig) -> String {
    let mut parts: Vec<&str> = Vec::new();
    let custom;
    match &config.strategy {
        PromptStrategy::ExternalTemplate(t) => {
            custom = t.instruction.clone();
            parts.push(&custom);
        }
        _ => parts.push(BASE_INSTRUCTION),
    }
    let joined_so_far = parts.join("\n");
    if config.variant.wants_schema() && !joined_so_far.contains("Use `@` to define ingredients") {
        parts.push(COOKLANG_SCHEMA_BLOCK);
    }
    if !joined_so_far.contains("Return only Cooklang formatted recipe") {
        parts.push(RETURN_DIRECTIVE);
    }
    parts.join("\n")
}

fn render_fields(
    variant: InputVariant,
    ingredients: Option<&str>,
    recipe_text: &str,
    sample_id: &str,
) -> Result<String, PromptError> {
    if variant.wants_ingredients() {
        let ingredients = ingredients
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .ok_or(PromptError::MissingField {
                sample_id: sample_id.to_string(),
                field: "ingredients",
            })?;
        Ok(format!(
            "ingredients: {ingredients}\nrecipe_text: {recipe_text}"
        ))
    } else {
        Ok(format!("recipe_text: {recipe_text}"))
    }
}
