//! Core library for converting and evaluating Cooklang recipes: a lenient
//! parser and canonical renderer for the markup, a Cooklang-aware tokenizer,
//! the evaluation metric suite, and dataset handling.

pub mod ast;
pub mod corpus;
pub mod metrics;
pub mod parser;
pub mod rational;
pub mod render;
pub mod tokenize;

pub use ast::{
    Comment, CommentKind, CookwareRecord, IngredientRecord, Quantity, QuantityValue, RecipeAst,
    Step, StepItem, TimerRecord,
};
pub use corpus::{
    derive_ingredients, load_corpus, load_corpus_with_options, split, Corpus, CorpusError,
    CorpusSplit, LoadOptions, RecipeSample, SplitError,
};
pub use metrics::{
    amount_score, ingredient_diff, ingredient_score, rouge_l, score_sample, ter, ter_exact,
    unit_score, wer, MetricError, MetricReport, ScoreOptions, WerTokenization,
};
pub use parser::{
    extract_cookware, extract_ingredients, extract_timers, parse, validate, Diagnostic,
    ParseError, ValidationOutcome,
};
pub use rational::Rational;
pub use render::render;
pub use tokenize::{tokenize, word_tokenize, SourceKind, Token, TokenKind, TokenSequence};
