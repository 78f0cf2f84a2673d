//! The experiment grid: every requested model × prompt strategy × input
//! variant becomes one configuration, each test sample is converted and
//! scored, and per-configuration means are aggregated.
//!
//! Samples whose conversion fails after retries are never dropped: they are
//! flagged and scored as worst case (empty hypothesis, identification
//! scores 0), keeping `n` equal to the test-split size.

use crate::aggregate::{aggregate, AggregateError, Means};
use cookeval_client::{
    bootstrap_fewshot, convert_all, BackendError, BootstrapError, ChatBackend, Demo,
    EndpointConfig, EvalConfig, ExternalTemplate, HttpBackend, InputVariant, MockBackend,
    PromptStrategy, RecordReplayBackend, RetryPolicy, TemplateError,
};
use cookeval_core::corpus::SplitError;
use cookeval_core::{
    score_sample, Corpus, CorpusError, MetricError, MetricReport, RecipeSample, ScoreOptions,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error(transparent)]
    Split(#[from] SplitError),
    #[error(transparent)]
    Template(#[from] TemplateError),
    #[error(transparent)]
    Backend(#[from] BackendError),
    #[error("bootstrap failed for {config}: {source}")]
    Bootstrap {
        config: String,
        #[source]
        source: BootstrapError,
    },
    #[error("scoring failed for sample `{sample}`: {source}")]
    Score {
        sample: String,
        #[source]
        source: MetricError,
    },
    #[error(transparent)]
    Aggregate(#[from] AggregateError),
    #[error("grid error: {0}")]
    Grid(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

fn default_demo_count() -> usize {
    4
}

fn default_trials() -> usize {
    16
}

/// How prompts are built for one grid row; resolved against the train split
/// before any conversion runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategySpec {
    ZeroShot,
    FewShot {
        #[serde(default = "default_demo_count")]
        k: usize,
    },
    BootstrapFewShot {
        #[serde(default = "default_demo_count")]
        k: usize,
        #[serde(default = "default_trials")]
        trials: usize,
    },
    External {
        path: PathBuf,
    },
}

impl StrategySpec {
    pub fn label(&self) -> &'static str {
        match self {
            StrategySpec::ZeroShot => "zero-shot",
            StrategySpec::FewShot { .. } => "few-shot",
            StrategySpec::BootstrapFewShot { .. } => "bootstrap-few-shot",
            StrategySpec::External { .. } => "external-template",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub model_id: String,
    #[serde(default)]
    pub endpoint: Option<EndpointConfig>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BackendSpec {
    /// Chat-completions over HTTP(S).
    #[default]
    Http,
    /// Offline mock answering every sample with its reference.
    Echo,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GridOptions {
    pub seed: u64,
    pub train_fraction: f64,
    pub concurrency: usize,
    pub temperature: f64,
    pub max_output_tokens: u32,
    pub backend: BackendSpec,
    pub retry: RetryPolicy,
    pub wer_tokenization: cookeval_core::WerTokenization,
}

impl Default for GridOptions {
    fn default() -> Self {
        Self {
            seed: 7,
            train_fraction: 0.25,
            concurrency: 4,
            temperature: 0.0,
            max_output_tokens: 2_048,
            backend: BackendSpec::Http,
            retry: RetryPolicy::default(),
            wer_tokenization: cookeval_core::WerTokenization::Words,
        }
    }
}

/// The grid file: models × strategies × variants plus run options.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub models: Vec<ModelSpec>,
    pub strategies: Vec<StrategySpec>,
    pub variants: Vec<InputVariant>,
    #[serde(default)]
    pub options: GridOptions,
}

impl GridSpec {
    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let body = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Grid(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&body)
            .map_err(|e| HarnessError::Grid(format!("malformed grid {}: {e}", path.display())))
    }
}

/// One scored sample, with the conversion failure flag when the backend gave
/// up; failed samples carry worst-case scores rather than being dropped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoredSample {
    pub id: String,
    pub conversion_failed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub report: MetricReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigReport {
    pub model_id: String,
    pub strategy: String,
    pub variant: String,
    pub n: usize,
    pub means: Means,
    pub per_sample: Vec<ScoredSample>,
}

impl ConfigReport {
    pub fn label(&self) -> String {
        format!("{}/{}/{}", self.model_id, self.strategy, self.variant)
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Overrides the grid's split seed.
    pub seed: Option<u64>,
    /// Transcript cache directory; hits replay, misses record.
    pub replay_dir: Option<PathBuf>,
}

/// Config file for converting a single sample from the CLI.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvertConfigSpec {
    pub model_id: String,
    #[serde(default)]
    pub endpoint: Option<EndpointConfig>,
    pub variant: InputVariant,
    pub strategy: StrategySpec,
    #[serde(default)]
    pub temperature: f64,
    #[serde(default = "default_max_output_tokens")]
    pub max_output_tokens: u32,
    #[serde(default)]
    pub backend: BackendSpec,
    #[serde(default)]
    pub retry: RetryPolicy,
    #[serde(default = "default_seed")]
    pub seed: u64,
    #[serde(default = "default_train_fraction")]
    pub train_fraction: f64,
}

fn default_max_output_tokens() -> u32 {
    2_048
}

fn default_seed() -> u64 {
    7
}

fn default_train_fraction() -> f64 {
    0.25
}

impl ConvertConfigSpec {
    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let body = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Grid(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&body)
            .map_err(|e| HarnessError::Grid(format!("malformed config {}: {e}", path.display())))
    }
}

/// Convert one corpus sample under a standalone config file.
pub fn convert_sample(
    corpus: &Corpus,
    spec: &ConvertConfigSpec,
    sample_id: &str,
    options: &RunOptions,
) -> Result<cookeval_client::ConversionResult, HarnessError> {
    let sample = corpus
        .get(sample_id)
        .ok_or_else(|| HarnessError::Grid(format!("unknown sample id `{sample_id}`")))?;

    let model = ModelSpec {
        model_id: spec.model_id.clone(),
        endpoint: spec.endpoint.clone(),
    };
    let backend = build_backend(&model, spec.backend, corpus, options)?;

    let mut config = EvalConfig::new(spec.model_id.clone(), spec.variant, PromptStrategy::ZeroShot);
    config.endpoint = spec.endpoint.clone().unwrap_or_default();
    config.temperature = spec.temperature;
    config.max_output_tokens = spec.max_output_tokens;
    config.retry = spec.retry;

    let seed = options.seed.unwrap_or(spec.seed);
    // Few-shot and bootstrap demos come from the train split only.
    let needs_train = matches!(
        spec.strategy,
        StrategySpec::FewShot { .. } | StrategySpec::BootstrapFewShot { .. }
    );
    let train: Vec<RecipeSample> = if needs_train {
        cookeval_core::split(&corpus.samples, seed, spec.train_fraction)?.train
    } else {
        Vec::new()
    };
    config.strategy = resolve_strategy(&spec.strategy, &train, &config, backend.as_ref(), seed)?;

    cookeval_client::convert(sample, &config, backend.as_ref()).map_err(|e| match e {
        cookeval_client::ConvertError::Backend(b) => HarnessError::Backend(b),
        other => HarnessError::Grid(other.to_string()),
    })
}

pub fn run_grid(
    corpus: &Corpus,
    grid: &GridSpec,
    options: &RunOptions,
) -> Result<Vec<ConfigReport>, HarnessError> {
    let seed = options.seed.unwrap_or(grid.options.seed);
    let split = cookeval_core::split(&corpus.samples, seed, grid.options.train_fraction)?;
    let score_options = ScoreOptions {
        wer_tokenization: grid.options.wer_tokenization,
    };

    let mut reports = Vec::new();
    for model in &grid.models {
        let backend = build_backend(model, grid.options.backend, corpus, options)?;
        for strategy_spec in &grid.strategies {
            for &variant in &grid.variants {
                let mut config = EvalConfig::new(model.model_id.clone(), variant, PromptStrategy::ZeroShot);
                config.endpoint = model.endpoint.clone().unwrap_or_default();
                config.temperature = grid.options.temperature;
                config.max_output_tokens = grid.options.max_output_tokens;
                config.retry = grid.options.retry;
                config.strategy = resolve_strategy(
                    strategy_spec,
                    &split.train,
                    &config,
                    backend.as_ref(),
                    seed,
                )?;

                let report = run_config(
                    &config,
                    strategy_spec.label(),
                    &split.test,
                    Arc::clone(&backend),
                    grid.options.concurrency,
                    &score_options,
                )?;
                reports.push(report);
            }
        }
    }
    Ok(reports)
}

fn build_backend(
    model: &ModelSpec,
    spec: BackendSpec,
    corpus: &Corpus,
    options: &RunOptions,
) -> Result<Arc<dyn ChatBackend>, HarnessError> {
    let inner: Arc<dyn ChatBackend> = match spec {
        BackendSpec::Echo => Arc::new(MockBackend::echo(&corpus.samples)),
        BackendSpec::Http => {
            let endpoint = model.endpoint.clone().ok_or_else(|| {
                HarnessError::Grid(format!(
                    "model `{}` uses the http backend but has no endpoint",
                    model.model_id
                ))
            })?;
            Arc::new(HttpBackend::new(&endpoint)?)
        }
    };
    match &options.replay_dir {
        Some(dir) => Ok(Arc::new(RecordReplayBackend::recording(dir.clone(), inner)?)),
        None => Ok(inner),
    }
}

fn resolve_strategy(
    spec: &StrategySpec,
    train: &[RecipeSample],
    config: &EvalConfig,
    backend: &dyn ChatBackend,
    seed: u64,
) -> Result<PromptStrategy, HarnessError> {
    match spec {
        StrategySpec::ZeroShot => Ok(PromptStrategy::ZeroShot),
        StrategySpec::FewShot { k } => {
            if train.is_empty() {
                return Err(HarnessError::Grid("few-shot needs a train split".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let picked =
                rand::seq::index::sample(&mut rng, train.len(), (*k).min(train.len()));
            let demos = picked
                .iter()
                .map(|i| {
                    let sample = &train[i];
                    Demo {
                        ingredients: Some(sample.ingredients_text.clone())
                            .filter(|s| !s.trim().is_empty()),
                        recipe_text: sample.recipe_text.clone(),
                        cooklang: sample.reference_cook.clone(),
                    }
                })
                .collect();
            Ok(PromptStrategy::FewShot(demos))
        }
        StrategySpec::BootstrapFewShot { k, trials } => {
            // Hold the dev half of the train split out of the demo pool.
            let mid = (train.len() / 2).max(1).min(train.len());
            let (demo_pool, dev) = if train.len() < 2 {
                (train, train)
            } else {
                (&train[..mid], &train[mid..])
            };
            bootstrap_fewshot(demo_pool, dev, config, backend, *trials, seed, *k).map_err(
                |source| HarnessError::Bootstrap {
                    config: config.label(),
                    source,
                },
            )
        }
        StrategySpec::External { path } => {
            Ok(PromptStrategy::ExternalTemplate(ExternalTemplate::load(path)?))
        }
    }
}

fn run_config(
    config: &EvalConfig,
    strategy_label: &str,
    test: &[RecipeSample],
    backend: Arc<dyn ChatBackend>,
    concurrency: usize,
    score_options: &ScoreOptions,
) -> Result<ConfigReport, HarnessError> {
    let conversions = convert_all(test, config, backend, concurrency);

    let mut per_sample = Vec::with_capacity(test.len());
    for (sample, (id, outcome)) in test.iter().zip(conversions) {
        debug_assert_eq!(sample.id, id);
        let scored = match outcome {
            Ok(result) => {
                let report = score_sample(
                    &sample.id,
                    &sample.reference_cook,
                    &result.candidate_cook,
                    score_options,
                )
                .map_err(|source| HarnessError::Score {
                    sample: sample.id.clone(),
                    source,
                })?;
                ScoredSample {
                    id: sample.id.clone(),
                    conversion_failed: false,
                    error: None,
                    report,
                }
            }
            Err(e) => ScoredSample {
                id: sample.id.clone(),
                conversion_failed: true,
                error: Some(e.to_string()),
                report: worst_case_report(sample, score_options).map_err(|source| {
                    HarnessError::Score {
                        sample: sample.id.clone(),
                        source,
                    }
                })?,
            },
        };
        per_sample.push(scored);
    }

    let means = aggregate(
        &per_sample
            .iter()
            .map(|s| s.report.clone())
            .collect::<Vec<_>>(),
    )?;

    Ok(ConfigReport {
        model_id: config.model_id.clone(),
        strategy: strategy_label.to_string(),
        variant: config.variant.label().to_string(),
        n: test.len(),
        means,
        per_sample,
    })
}

/// Worst-case scores for a sample whose conversion failed: text metrics
/// against an empty hypothesis, identification scores 0, parse flag down.
fn worst_case_report(
    sample: &RecipeSample,
    options: &ScoreOptions,
) -> Result<MetricReport, MetricError> {
    let mut report = score_sample(&sample.id, &sample.reference_cook, "", options)?;
    report.parse_ok = false;
    report.ingredient_score = 0;
    report.unit_score = 0;
    report.amount_score = 0;
    Ok(report)
}
