//! Bootstrapped few-shot selection with random search.
//!
//! Each trial samples a candidate demonstration set from the train split,
//! keeps only demos whose model-produced output is valid Cooklang, scores
//! the surviving set by mean dev-split ROUGE-L, and the best-scoring set
//! wins. Ties go to the earlier trial, so the search is deterministic given
//! the seed and a deterministic backend.

use crate::backend::ChatBackend;
use crate::config::{Demo, EvalConfig, PromptStrategy};
use crate::convert::convert;
use cookeval_core::metrics::rouge_l;
use cookeval_core::{validate, word_tokenize, RecipeSample};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BootstrapError {
    #[error("no trial produced a demonstration set with valid Cooklang output")]
    NoViableDemos,
    #[error("bootstrap requires non-empty train and dev splits and at least one trial")]
    EmptyInput,
}

/// Search `trials` random demo sets of size `demo_count` and return the one
/// with the best mean dev ROUGE-L as a ready-to-use few-shot strategy.
pub fn bootstrap_fewshot(
    train: &[RecipeSample],
    dev: &[RecipeSample],
    config: &EvalConfig,
    backend: &dyn ChatBackend,
    trials: usize,
    seed: u64,
    demo_count: usize,
) -> Result<PromptStrategy, BootstrapError> {
    if train.is_empty() || dev.is_empty() || trials == 0 || demo_count == 0 {
        return Err(BootstrapError::EmptyInput);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let teacher = EvalConfig {
        strategy: PromptStrategy::ZeroShot,
        ..config.clone()
    };

    let mut best: Option<(cookeval_core::Rational, Vec<Demo>)> = None;

    for _ in 0..trials {
        let picked = rand::seq::index::sample(
            &mut rng,
            train.len(),
            demo_count.min(train.len()),
        );

        // Keep only demos whose model-produced output validates.
        let mut demos: Vec<Demo> = Vec::new();
        for idx in picked.iter() {
            let sample = &train[idx];
            let Ok(result) = convert(sample, &teacher, backend) else {
                continue;
            };
            if !validate(&result.candidate_cook).is_ok() {
                continue;
            }
            demos.push(Demo {
                ingredients: Some(sample.ingredients_text.clone())
                    .filter(|s| !s.trim().is_empty()),
                recipe_text: sample.recipe_text.clone(),
                cooklang: sample.reference_cook.clone(),
            });
        }
        if demos.is_empty() {
            continue;
        }

        let candidate = EvalConfig {
            strategy: PromptStrategy::FewShot(demos.clone()),
            ..config.clone()
        };
        let mut total = cookeval_core::Rational::zero();
        for sample in dev {
            let score = match convert(sample, &candidate, backend) {
                Ok(result) => rouge_l(
                    &word_tokenize(&sample.reference_cook),
                    &word_tokenize(&result.candidate_cook),
                ),
                Err(_) => cookeval_core::Rational::zero(),
            };
            total = total + &score;
        }
        let mean = total.div_by(dev.len());

        let better = match &best {
            None => true,
            Some((best_score, _)) => mean > *best_score,
        };
        if better {
            best = Some((mean, demos));
        }
    }

    best.map(|(_, demos)| PromptStrategy::FewShot(demos))
        .ok_or(BootstrapError::NoViableDemos)
}
