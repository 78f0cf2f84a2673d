//! Report files for a grid run.
//!
//! The markdown table renders means to 4 decimal places; the CSV and JSON
//! files keep full precision (exact rationals in JSON, shortest round-trip
//! floats in CSV). A long-format CSV (`config,metric,value`) is always
//! emitted for plotting, and per-sample scores land in their own JSON file
//! so every mean can be recomputed independently.

use crate::aggregate::Means;
use crate::grid::{ConfigReport, ScoredSample};
use cookeval_core::Rational;
use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
#[error("cannot write {path}: {source}")]
pub struct IoError {
    pub path: String,
    #[source]
    pub source: std::io::Error,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    Markdown,
    Csv,
    Json,
}

impl ReportFormat {
    pub const ALL: [ReportFormat; 3] = [
        ReportFormat::Markdown,
        ReportFormat::Csv,
        ReportFormat::Json,
    ];
}

/// Summary row without per-sample payload, as stored in `report.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigSummary {
    pub model_id: String,
    pub strategy: String,
    pub variant: String,
    pub n: usize,
    pub means: Means,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerSampleBlock {
    pub config: String,
    pub samples: Vec<ScoredSample>,
}

/// Render means to the 4-decimal table precision.
pub fn fmt4(value: &Rational) -> String {
    format!("{:.4}", value.to_f64())
}

fn fmt_full(value: &Rational) -> String {
    format!("{}", value.to_f64())
}

pub fn render_markdown(reports: &[ConfigReport]) -> String {
    let mut out = String::new();
    out.push_str(
        "| Model | Strategy | Variant | WER↓ | ROUGE-L↑ | TER↓ | Ingredient↑ | Units↑ | Amounts↑ | ParseRate |\n",
    );
    out.push_str("|---|---|---|---|---|---|---|---|---|---|\n");
    for r in reports {
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |\n",
            r.model_id,
            r.strategy,
            r.variant,
            fmt4(&r.means.wer),
            fmt4(&r.means.rouge_l),
            fmt4(&r.means.ter),
            fmt4(&r.means.ingredient),
            fmt4(&r.means.unit),
            fmt4(&r.means.amount),
            fmt4(&r.means.parse_rate),
        ));
    }
    out
}

pub fn render_csv(reports: &[ConfigReport]) -> String {
    let mut out = String::from(
        "model,strategy,variant,n,wer,rouge_l,ter,ingredient,unit,amount,parse_rate\n",
    );
    for r in reports {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            r.model_id,
            r.strategy,
            r.variant,
            r.n,
            fmt_full(&r.means.wer),
            fmt_full(&r.means.rouge_l),
            fmt_full(&r.means.ter),
            fmt_full(&r.means.ingredient),
            fmt_full(&r.means.unit),
            fmt_full(&r.means.amount),
            fmt_full(&r.means.parse_rate),
        ));
    }
    out
}

pub fn render_long_csv(reports: &[ConfigReport]) -> String {
    let mut out = String::from("config,metric,value\n");
    for r in reports {
        let label = r.label();
        let rows: [(&str, &Rational); 7] = [
            ("wer", &r.means.wer),
            ("rouge_l", &r.means.rouge_l),
            ("ter", &r.means.ter),
            ("ingredient", &r.means.ingredient),
            ("unit", &r.means.unit),
            ("amount", &r.means.amount),
            ("parse_rate", &r.means.parse_rate),
        ];
        for (metric, value) in rows {
            out.push_str(&format!("{label},{metric},{}\n", fmt_full(value)));
        }
    }
    out
}

pub fn summaries(reports: &[ConfigReport]) -> Vec<ConfigSummary> {
    reports
        .iter()
        .map(|r| ConfigSummary {
            model_id: r.model_id.clone(),
            strategy: r.strategy.clone(),
            variant: r.variant.clone(),
            n: r.n,
            means: r.means.clone(),
        })
        .collect()
}

pub fn per_sample_blocks(reports: &[ConfigReport]) -> Vec<PerSampleBlock> {
    reports
        .iter()
        .map(|r| PerSampleBlock {
            config: r.label(),
            samples: r.per_sample.clone(),
        })
        .collect()
}

/// Write the report files into `out_dir`. `formats` selects among
/// `report.md`, `report.csv`, and `report.json`; the long-format CSV and the
/// per-sample JSON are always written.
pub fn emit_report(
    reports: &[ConfigReport],
    out_dir: &Path,
    formats: &[ReportFormat],
) -> Result<(), IoError> {
    let write = |name: &str, body: String| -> Result<(), IoError> {
        let path = out_dir.join(name);
        std::fs::write(&path, body).map_err(|source| IoError {
            path: path.display().to_string(),
            source,
        })
    };

    std::fs::create_dir_all(out_dir).map_err(|source| IoError {
        path: out_dir.display().to_string(),
        source,
    })?;

    for format in formats {
        match format {
            ReportFormat::Markdown => write("report.md", render_markdown(reports))?,
            ReportFormat::Csv => write("report.csv", render_csv(reports))?,
            ReportFormat::Json => {
                let body = serde_json::to_string_pretty(&summaries(reports))
                    .expect("summaries serialize");
                write("report.json", body + "\n")?;
            }
        }
    }

    let per_sample = serde_json::to_string_pretty(&per_sample_blocks(reports))
        .expect("per-sample blocks serialize");
    write("per_sample.json", per_sample + "\n")?;
    write("long.csv", render_long_csv(reports))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use cookeval_core::MetricReport;

    fn report() -> ConfigReport {
        ConfigReport {
            model_id: "mock".into(),
            strategy: "zero-shot".into(),
            variant: "method".into(),
            n: 1,
            means: Means {
                wer: Rational::ratio(41047, 50000), // 0.82094
                rouge_l: Rational::one(),
                ter: Rational::zero(),
                ingredient: Rational::one(),
                unit: Rational::one(),
                amount: Rational::one(),
                parse_rate: Rational::one(),
            },
            per_sample: vec![ScoredSample {
                id: "s".into(),
                conversion_failed: false,
                error: None,
                report: MetricReport {
                    sample_id: "s".into(),
                    wer: Rational::zero(),
                    rouge_l: Rational::one(),
                    ter: Rational::zero(),
                    ingredient_score: 1,
                    unit_score: 1,
                    amount_score: 1,
                    parse_ok: true,
                    missing_ingredients: vec![],
                    extra_ingredients: vec![],
                },
            }],
        }
    }

    #[test]
    fn four_decimal_rendering() {
        assert_eq!(fmt4(&Rational::ratio(41047, 50000)), "0.8209");
        assert_eq!(fmt4(&Rational::zero()), "0.0000");
        assert_eq!(fmt4(&Rational::one()), "1.0000");
        assert_eq!(fmt4(&Rational::ratio(1, 3)), "0.3333");
    }

    #[test]
    fn markdown_has_one_row_per_report_plus_header() {
        let md = render_markdown(&[report()]);
        let lines: Vec<&str> = md.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[0].starts_with("| Model | Strategy | Variant | WER↓"));
        assert!(lines[2].contains("| 0.8209 |"));
    }

    #[test]
    fn json_round_trips() {
        let original = summaries(&[report()]);
        let json = serde_json::to_string(&original).unwrap();
        let back: Vec<ConfigSummary> = serde_json::from_str(&json).unwrap();
        assert_eq!(back, original);
    }

    #[test]
    fn emit_writes_the_directory_layout() {
        let dir = tempfile::tempdir().unwrap();
        emit_report(&[report()], dir.path(), &ReportFormat::ALL).unwrap();
        for name in [
            "report.md",
            "report.csv",
            "report.json",
            "per_sample.json",
            "long.csv",
        ] {
            assert!(dir.path().join(name).exists(), "{name} missing");
        }
        let long = std::fs::read_to_string(dir.path().join("long.csv")).unwrap();
        assert_eq!(long.lines().count(), 8); // header + 7 metrics
        assert!(long.contains("mock/zero-shot/method,wer,"));
    }

    #[test]
    fn unwritable_destination_is_an_io_error() {
        let err = emit_report(&[report()], Path::new("/proc/definitely/not/writable"), &[]).unwrap_err();
        assert!(err.to_string().contains("cannot write"));
    }
}
