//! The reproducibility envelope written next to every report: corpus
//! digest, split seed, the full grid, the transcript-cache digest, and the
//! scoring policy. Two runs with equal manifests (timestamp aside) produce
//! byte-identical reports.

use crate::grid::GridSpec;
use cookeval_core::Corpus;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

pub const SCORING_POLICY: &str =
    "failed conversions are scored as empty-hypothesis worst case and never dropped";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub corpus_digest: String,
    pub split_seed: u64,
    pub train_fraction: f64,
    pub grid: GridSpec,
    pub transcript_digest: Option<String>,
    pub scoring_policy: String,
    pub toolkit_version: String,
    /// Seconds since the Unix epoch. Excluded from determinism comparisons.
    pub timestamp: u64,
}

impl RunManifest {
    pub fn new(
        corpus: &Corpus,
        grid: &GridSpec,
        split_seed: u64,
        transcript_digest: Option<String>,
    ) -> Self {
        Self {
            corpus_digest: corpus_digest(corpus),
            split_seed,
            train_fraction: grid.options.train_fraction,
            grid: grid.clone(),
            transcript_digest,
            scoring_policy: SCORING_POLICY.to_string(),
            toolkit_version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }

    pub fn write(&self, out_dir: &Path) -> std::io::Result<()> {
        let body = serde_json::to_string_pretty(self)?;
        std::fs::write(out_dir.join("manifest.json"), body + "\n")
    }
}

/// SHA-256 over the sorted sample contents.
pub fn corpus_digest(corpus: &Corpus) -> String {
    let mut hasher = Sha256::new();
    for sample in &corpus.samples {
        hasher.update(sample.id.as_bytes());
        hasher.update([0]);
        hasher.update(sample.recipe_text.as_bytes());
        hasher.update([0]);
        hasher.update(sample.ingredients_text.as_bytes());
        hasher.update([0]);
        hasher.update(sample.reference_cook.as_bytes());
        hasher.update([0]);
        hasher.update(sample.category.as_deref().unwrap_or("").as_bytes());
        hasher.update([0xff]);
    }
    hex::encode(hasher.finalize())
}
