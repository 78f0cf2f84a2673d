//! Cooklang-aware tokenization.
//!
//! [`tokenize`] turns a document into the token stream the edit-rate metric
//! consumes: each ingredient, cookware, or timer becomes exactly one marker
//! token (its canonical rendering, so any change to name, amount, or unit is
//! a single substitution), prose becomes lowercased punctuation-stripped
//! word tokens, and every step ends with a boundary token. Text that fails
//! to parse degrades to plain word tokens instead of failing.
//!
//! [`word_tokenize`] is the plain variant used by the word-level metrics.
//! Marker characters are kept inside words so that broken Cooklang syntax
//! still costs edits.

use crate::ast::{RecipeAst, StepItem};
use crate::parser::parse;
use crate::render::{render_cookware, render_ingredient, render_timer};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TokenKind {
    Word,
    Ingredient,
    Cookware,
    Timer,
    StepBoundary,
}

/// Payload carried by marker tokens: the record's name, raw amount, and unit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MarkerPayload {
    pub name: Option<String>,
    pub amount: Option<String>,
    pub unit: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Token {
    pub kind: TokenKind,
    pub surface: String,
    pub payload: Option<MarkerPayload>,
}

impl Token {
    pub fn word(surface: impl Into<String>) -> Self {
        Token {
            kind: TokenKind::Word,
            surface: surface.into(),
            payload: None,
        }
    }

    fn boundary() -> Self {
        Token {
            kind: TokenKind::StepBoundary,
            surface: String::new(),
            payload: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SourceKind {
    Reference,
    Hypothesis,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TokenSequence {
    pub tokens: Vec<Token>,
    pub source_kind: SourceKind,
}

impl TokenSequence {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// Tokenize Cooklang text into marker, word, and step-boundary tokens.
pub fn tokenize(text: &str, source_kind: SourceKind) -> TokenSequence {
    let tokens = match parse(text) {
        Ok(ast) => tokens_from_ast(&ast),
        // Degrade: no structure, just words.
        Err(_) => word_tokenize(text).into_iter().map(Token::word).collect(),
    };
    TokenSequence { tokens, source_kind }
}

fn tokens_from_ast(ast: &RecipeAst) -> Vec<Token> {
    let mut tokens = Vec::new();
    for step in &ast.steps {
        for item in &step.items {
            match item {
                StepItem::Text(t) => {
                    tokens.extend(word_tokenize(t).into_iter().map(Token::word));
                }
                StepItem::IngredientRef(i) => {
                    let ing = &ast.ingredients[*i];
                    tokens.push(Token {
                        kind: TokenKind::Ingredient,
                        surface: render_ingredient(ing),
                        payload: Some(MarkerPayload {
                            name: Some(ing.name.clone()),
                            amount: ing.amount.as_ref().map(|q| q.raw.clone()),
                            unit: ing.unit.clone(),
                        }),
                    });
                }
                StepItem::CookwareRef(i) => {
                    let cw = &ast.cookwares[*i];
                    tokens.push(Token {
                        kind: TokenKind::Cookware,
                        surface: render_cookware(cw),
                        payload: Some(MarkerPayload {
                            name: Some(cw.name.clone()),
                            amount: cw.quantity.as_ref().map(|q| q.raw.clone()),
                            unit: None,
                        }),
                    });
                }
                StepItem::TimerRef(i) => {
                    let timer = &ast.timers[*i];
                    tokens.push(Token {
                        kind: TokenKind::Timer,
                        surface: render_timer(timer),
                        payload: Some(MarkerPayload {
                            name: timer.name.clone(),
                            amount: Some(timer.duration.raw.clone()),
                            unit: Some(timer.unit.clone()).filter(|u| !u.is_empty()),
                        }),
                    });
                }
            }
        }
        tokens.push(Token::boundary());
    }
    tokens
}

const STRIPPED_PUNCTUATION: &[char] = &[',', '.', ';', ':', '!', '?', '(', ')'];

/// Split plain text into lowercased words with sentence punctuation removed.
/// `@#~{}%` survive inside words.
pub fn word_tokenize(text: &str) -> Vec<String> {
    text.split_whitespace()
        .filter_map(|w| {
            let cleaned: String = w
                .chars()
                .filter(|c| !STRIPPED_PUNCTUATION.contains(c))
                .flat_map(char::to_lowercase)
                .collect();
            if cleaned.is_empty() {
                None
            } else {
                Some(cleaned)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_and_markers() {
        let seq = tokenize("Mash @potato{2}", SourceKind::Hypothesis);
        assert_eq!(seq.tokens.len(), 3); // word, marker, boundary
        assert_eq!(seq.tokens[0], Token::word("mash"));
        assert_eq!(seq.tokens[1].kind, TokenKind::Ingredient);
        assert_eq!(seq.tokens[1].surface, "@potato{2}");
        assert_eq!(seq.tokens[2].kind, TokenKind::StepBoundary);
    }

    #[test]
    fn empty_text_has_no_tokens() {
        assert!(tokenize("", SourceKind::Reference).is_empty());
    }

    #[test]
    fn one_boundary_per_step() {
        let seq = tokenize("step one\n\nstep two", SourceKind::Reference);
        let boundaries = seq
            .tokens
            .iter()
            .filter(|t| t.kind == TokenKind::StepBoundary)
            .count();
        assert_eq!(boundaries, 2);
    }

    #[test]
    fn unparsable_text_degrades_to_words() {
        let seq = tokenize("broken @syrup{1/2", SourceKind::Hypothesis);
        assert!(seq.tokens.iter().all(|t| t.kind == TokenKind::Word));
        assert_eq!(seq.tokens[1].surface, "@syrup{1/2");
    }

    #[test]
    fn marker_tokens_carry_payload() {
        let seq = tokenize("~eggs{3%minutes}", SourceKind::Reference);
        let payload = seq.tokens[0].payload.as_ref().unwrap();
        assert_eq!(payload.name.as_deref(), Some("eggs"));
        assert_eq!(payload.amount.as_deref(), Some("3"));
        assert_eq!(payload.unit.as_deref(), Some("minutes"));
    }

    #[test]
    fn word_tokenize_strips_punctuation_and_case() {
        assert_eq!(word_tokenize("Mash the potato."), vec!["mash", "the", "potato"]);
        assert_eq!(word_tokenize(""), Vec::<String>::new());
        assert_eq!(word_tokenize("@salt @salt"), vec!["@salt", "@salt"]);
    }

    #[test]
    fn word_tokenize_keeps_marker_characters() {
        assert_eq!(word_tokenize("@potato{2%kg},"), vec!["@potato{2%kg}"]);
    }

    #[test]
    fn comments_and_metadata_are_not_tokenized() {
        let seq = tokenize(">> servings: 4\nstir -- gently", SourceKind::Reference);
        let surfaces: Vec<&str> = seq.tokens.iter().map(|t| t.surface.as_str()).collect();
        assert_eq!(surfaces, vec!["stir", ""]);
    }
}
