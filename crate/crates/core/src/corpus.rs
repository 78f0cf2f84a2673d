//! Recipe dataset loading and splitting.
//!
//! The corpus is a JSONL manifest, one sample per line:
//!
//! ```json
//! {"id": "soups-01", "category": "soups", "recipe": "soups-01/recipe.txt",
//!  "reference": "soups-01/reference.cook"}
//! ```
//!
//! `recipe` and `reference` are paths relative to the manifest. An optional
//! `"ingredients"` field overrides the ingredient list; otherwise it is
//! derived from the reference Cooklang. Every sample is validated at load
//! time: unique id, non-empty recipe text, and a reference that parses.

use crate::metrics::{score_sample, ScoreOptions};
use crate::parser::{extract_ingredients, parse, validate};
use crate::rational::Rational;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::path::{Path, PathBuf};
use thiserror::Error;

/// One dataset entry: the plain-text method, its comma-separated ingredient
/// list, and the reference Cooklang document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecipeSample {
    pub id: String,
    pub recipe_text: String,
    pub ingredients_text: String,
    pub reference_cook: String,
    pub category: Option<String>,
}

#[derive(Debug, Clone, Default)]
pub struct Corpus {
    pub samples: Vec<RecipeSample>,
    pub warnings: Vec<String>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&RecipeSample> {
        self.samples.iter().find(|s| s.id == id)
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("manifest error: {0}")]
    Manifest(String),
    #[error("sample `{id}`: {message}")]
    Validation { id: String, message: String },
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

#[derive(Debug, Error, PartialEq)]
pub enum SplitError {
    #[error("train fraction must be strictly between 0 and 1, got {0}")]
    InvalidFraction(f64),
    #[error("cannot split {n} samples into non-empty train and test sets")]
    DegenerateSplit { n: usize },
}

/// Deterministic train/test partition of the corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusSplit {
    pub train: Vec<RecipeSample>,
    pub test: Vec<RecipeSample>,
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct LoadOptions {
    /// Score every reference against itself and require a perfect report.
    pub verify_self_scoring: bool,
}

#[derive(Debug, Deserialize)]
struct ManifestEntry {
    id: String,
    #[serde(default)]
    category: Option<String>,
    recipe: PathBuf,
    reference: PathBuf,
    #[serde(default)]
    ingredients: Option<String>,
}

pub fn load_corpus(manifest_path: &Path) -> Result<Corpus, CorpusError> {
    load_corpus_with_options(manifest_path, LoadOptions::default())
}

pub fn load_corpus_with_options(
    manifest_path: &Path,
    options: LoadOptions,
) -> Result<Corpus, CorpusError> {
    let manifest = std::fs::read_to_string(manifest_path).map_err(|source| CorpusError::Io {
        path: manifest_path.to_path_buf(),
        source,
    })?;
    let base = manifest_path.parent().unwrap_or_else(|| Path::new("."));

    let mut corpus = Corpus::default();
    let mut seen_ids = HashSet::new();

    for (line_no, line) in manifest.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let entry: ManifestEntry = serde_json::from_str(line).map_err(|e| {
            CorpusError::Manifest(format!("line {}: {e}", line_no + 1))
        })?;
        if !seen_ids.insert(entry.id.clone()) {
            return Err(CorpusError::Manifest(format!(
                "duplicate sample id `{}`",
                entry.id
            )));
        }

        let recipe_path = base.join(&entry.recipe);
        let recipe_text = std::fs::read_to_string(&recipe_path).map_err(|e| {
            CorpusError::Manifest(format!(
                "sample `{}`: missing file {}: {e}",
                entry.id,
                recipe_path.display()
            ))
        })?;
        let reference_path = base.join(&entry.reference);
        let reference_cook = std::fs::read_to_string(&reference_path).map_err(|e| {
            CorpusError::Manifest(format!(
                "sample `{}`: missing file {}: {e}",
                entry.id,
                reference_path.display()
            ))
        })?;

        if recipe_text.trim().is_empty() {
            return Err(CorpusError::Validation {
                id: entry.id,
                message: "recipe text is empty".into(),
            });
        }
        let outcome = validate(&reference_cook);
        if !outcome.is_ok() {
            return Err(CorpusError::Validation {
                id: entry.id,
                message: format!("reference does not parse: {}", outcome.diagnostics()[0]),
            });
        }

        let ingredients_text = match entry.ingredients {
            Some(text) => text,
            None => derive_ingredients(&reference_cook).map_err(|e| CorpusError::Validation {
                id: entry.id.clone(),
                message: e.to_string(),
            })?,
        };

        corpus.samples.push(RecipeSample {
            id: entry.id,
            recipe_text,
            ingredients_text,
            reference_cook,
            category: entry.category,
        });
    }

    corpus.samples.sort_by(|a, b| a.id.cmp(&b.id));

    if corpus.samples.is_empty() {
        corpus
            .warnings
            .push(format!("manifest {} lists no samples", manifest_path.display()));
    }

    if options.verify_self_scoring {
        for sample in &corpus.samples {
            let report = score_sample(
                &sample.id,
                &sample.reference_cook,
                &sample.reference_cook,
                &ScoreOptions::default(),
            )
            .map_err(|e| CorpusError::Validation {
                id: sample.id.clone(),
                message: e.to_string(),
            })?;
            let perfect = report.wer.is_zero()
                && report.ter.is_zero()
                && report.rouge_l == Rational::one()
                && report.ingredient_score == 1
                && report.unit_score == 1
                && report.amount_score == 1
                && report.parse_ok;
            if !perfect {
                return Err(CorpusError::Validation {
                    id: sample.id.clone(),
                    message: "reference does not score perfectly against itself".into(),
                });
            }
        }
    }

    Ok(corpus)
}

/// Join the reference's ingredient names with `", "` in first-occurrence
/// order, deduplicating exact repeats.
pub fn derive_ingredients(reference_cook: &str) -> Result<String, crate::parser::ParseError> {
    let ast = parse(reference_cook)?;
    let mut seen = HashSet::new();
    let names: Vec<String> = extract_ingredients(&ast)
        .into_iter()
        .map(|i| i.name)
        .filter(|name| seen.insert(name.clone()))
        .collect();
    Ok(names.join(", "))
}

/// Split the corpus by a seeded shuffle over ids sorted lexicographically,
/// then a prefix cut at `floor(n * train_fraction)` clamped so neither side
/// is empty. The same inputs always produce the same split.
pub fn split(
    samples: &[RecipeSample],
    seed: u64,
    train_fraction: f64,
) -> Result<CorpusSplit, SplitError> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(SplitError::InvalidFraction(train_fraction));
    }
    let n = samples.len();
    if n < 2 {
        return Err(SplitError::DegenerateSplit { n });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| samples[a].id.cmp(&samples[b].id));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);

    let train_len = ((n as f64 * train_fraction).floor() as usize).clamp(1, n - 1);
    let (train_idx, test_idx) = order.split_at(train_len);

    let collect = |idx: &[usize]| -> Vec<RecipeSample> {
        let mut picked: Vec<RecipeSample> = idx.iter().map(|&i| samples[i].clone()).collect();
        picked.sort_by(|a, b| a.id.cmp(&b.id));
        picked
    };

    Ok(CorpusSplit {
        train: collect(train_idx),
        test: collect(test_idx),
        seed,
    })
}
