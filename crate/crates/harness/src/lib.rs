//! Experiment harness: grid execution, exact-mean aggregation, report
//! emission, and the `cookeval` CLI.

pub mod aggregate;
pub mod cli;
pub mod grid;
pub mod manifest;
pub mod report;

pub use aggregate::{aggregate, AggregateError, Means};
pub use grid::{
    convert_sample, run_grid, BackendSpec, ConfigReport, ConvertConfigSpec, GridOptions, GridSpec,
    HarnessError, ModelSpec, RunOptions, ScoredSample, StrategySpec,
};
pub use manifest::{corpus_digest, RunManifest, SCORING_POLICY};
pub use report::{emit_report, render_csv, render_long_csv, render_markdown, ReportFormat};
