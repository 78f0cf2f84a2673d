//! Drive one sample through prompt assembly, the backend, and extraction.

use crate::backend::{BackendError, ChatBackend, ChatRequest, TokenUsage};
use crate::config::EvalConfig;
use crate::extract::extract_cooklang;
use crate::prompt::{build_prompt, PromptError};
use cookeval_core::RecipeSample;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq)]
pub struct ConversionResult {
    pub candidate_cook: String,
    pub raw: String,
    pub latency: Duration,
    pub token_usage: TokenUsage,
    pub retries: u32,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConvertError {
    #[error(transparent)]
    Prompt(#[from] PromptError),
    #[error(transparent)]
    Backend(#[from] BackendError),
    #[error("backend produced an empty completion")]
    EmptyCompletion,
}

/// Convert one sample. Transient backend failures are retried with
/// exponential backoff up to the configured cap; well-formed 4xx responses
/// are never retried.
pub fn convert(
    sample: &RecipeSample,
    config: &EvalConfig,
    backend: &dyn ChatBackend,
) -> Result<ConversionResult, ConvertError> {
    let bundle = build_prompt(sample, config)?;
    let request = ChatRequest {
        model: config.model_id.clone(),
        messages: bundle.messages,
        temperature: config.temperature,
        max_tokens: config.max_output_tokens,
    };

    let started = Instant::now();
    let mut retries = 0u32;
    let response = loop {
        match backend.complete(&request) {
            Ok(response) => break response,
            Err(e) if e.is_retryable() && retries < config.retry.max_retries => {
                let delay = config.retry.delay_for(retries);
                if !delay.is_zero() {
                    std::thread::sleep(delay);
                }
                retries += 1;
            }
            Err(e) => return Err(e.into()),
        }
    };
    let latency = started.elapsed();

    let candidate = extract_cooklang(&response.content);
    if candidate.is_empty() {
        return Err(ConvertError::EmptyCompletion);
    }
    Ok(ConversionResult {
        candidate_cook: candidate,
        raw: response.content,
        latency,
        token_usage: response.usage,
        retries,
    })
}

/// Convert a batch with at most `concurrency` in-flight calls. Results come
/// back in input order keyed by sample id, independent of thread timing.
pub fn convert_all(
    samples: &[RecipeSample],
    config: &EvalConfig,
    backend: Arc<dyn ChatBackend>,
    concurrency: usize,
) -> Vec<(String, Result<ConversionResult, ConvertError>)> {
    let workers = concurrency.max(1).min(samples.len().max(1));
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Result<ConversionResult, ConvertError>>>> =
        Mutex::new((0..samples.len()).map(|_| None).collect());

    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let index = next.fetch_add(1, Ordering::SeqCst);
                if index >= samples.len() {
                    break;
                }
                let outcome = convert(&samples[index], config, backend.as_ref());
                slots.lock().unwrap()[index] = Some(outcome);
            });
        }
    });

    samples
        .iter()
        .zip(slots.into_inner().unwrap())
        .map(|(sample, outcome)| (sample.id.clone(), outcome.expect("worker filled slot")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::MockBackend;
    use crate::config::{InputVariant, PromptStrategy, RetryPolicy};

    fn sample(id: &str) -> RecipeSample {
        RecipeSample {
            id: id.into(),
            recipe_text: format!("Stir the {id}."),
            ingredients_text: id.into(),
            reference_cook: format!("Stir the @{id}."),
            category: None,
        }
    }

    fn config() -> EvalConfig {
        let mut c = EvalConfig::new(
            "mock",
            InputVariant::MethodPlusIngredients,
            PromptStrategy::ZeroShot,
        );
        c.retry = RetryPolicy::immediate();
        c
    }

    #[test]
    fn echo_round_trips_the_reference() {
        let s = sample("salt");
        let backend = MockBackend::echo(std::slice::from_ref(&s));
        let result = convert(&s, &config(), &backend).unwrap();
        assert_eq!(result.candidate_cook, s.reference_cook);
        assert_eq!(result.retries, 0);
    }

    #[test]
    fn fenced_output_is_unwrapped() {
        let backend = MockBackend::scripted(vec![Ok("```\n@salt\n```".into())]);
        let result = convert(&sample("x"), &config(), &backend).unwrap();
        assert_eq!(result.candidate_cook, "@salt");
        assert_eq!(result.raw, "```\n@salt\n```");
    }

    #[test]
    fn server_errors_are_retried_until_success() {
        let err = || BackendError::Status {
            code: 500,
            body: "boom".into(),
        };
        let backend =
            MockBackend::scripted(vec![Err(err()), Err(err()), Err(err()), Ok("@salt".into())]);
        let result = convert(&sample("x"), &config(), &backend).unwrap();
        assert_eq!(result.retries, 3);
        assert_eq!(result.candidate_cook, "@salt");
    }

    #[test]
    fn client_errors_are_not_retried() {
        let backend = MockBackend::scripted(vec![
            Err(BackendError::Status {
                code: 404,
                body: "no".into(),
            }),
            Ok("@salt".into()),
        ]);
        let err = convert(&sample("x"), &config(), &backend).unwrap_err();
        assert!(matches!(
            err,
            ConvertError::Backend(BackendError::Status { code: 404, .. })
        ));
    }

    #[test]
    fn retries_are_capped() {
        let err = || BackendError::Transport("down".into());
        let backend = MockBackend::scripted(vec![Err(err()), Err(err()), Err(err()), Err(err())]);
        let outcome = convert(&sample("x"), &config(), &backend);
        assert!(matches!(
            outcome,
            Err(ConvertError::Backend(BackendError::Transport(_)))
        ));
    }

    #[test]
    fn blank_completions_are_an_error() {
        let backend = MockBackend::scripted(vec![Ok("   \n".into())]);
        assert_eq!(
            convert(&sample("x"), &config(), &backend).unwrap_err(),
            ConvertError::EmptyCompletion
        );
    }

    #[test]
    fn convert_all_preserves_input_order() {
        let samples: Vec<RecipeSample> = (0..9).map(|i| sample(&format!("s{i}"))).collect();
        let backend = Arc::new(MockBackend::echo(&samples));
        let results = convert_all(&samples, &config(), backend, 4);
        assert_eq!(results.len(), 9);
        for (i, (id, outcome)) in results.iter().enumerate() {
            assert_eq!(id, &format!("s{i}"));
            assert_eq!(
                outcome.as_ref().unwrap().candidate_cook,
                samples[i].reference_cook
            );
        }
    }
}
