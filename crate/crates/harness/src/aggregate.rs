//! Per-configuration means.
//!
//! Every mean is the exact rational `(1/N)·Σ` of the per-sample values, so
//! aggregation is independent of sample order and reports reproduce
//! bit-for-bit.

use cookeval_core::{MetricReport, Rational};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AggregateError {
    #[error("cannot aggregate an empty run")]
    EmptyRun,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Means {
    pub wer: Rational,
    pub rouge_l: Rational,
    pub ter: Rational,
    pub ingredient: Rational,
    pub unit: Rational,
    pub amount: Rational,
    pub parse_rate: Rational,
}

pub fn aggregate(per_sample: &[MetricReport]) -> Result<Means, AggregateError> {
    if per_sample.is_empty() {
        return Err(AggregateError::EmptyRun);
    }
    let n = per_sample.len();
    let sum = |field: fn(&MetricReport) -> Rational| -> Rational {
        per_sample
            .iter()
            .fold(Rational::zero(), |acc, r| acc + &field(r))
            .div_by(n)
    };
    Ok(Means {
        wer: sum(|r| r.wer.clone()),
        rouge_l: sum(|r| r.rouge_l.clone()),
        ter: sum(|r| r.ter.clone()),
        ingredient: sum(|r| Rational::from_integer(r.ingredient_score as u64)),
        unit: sum(|r| Rational::from_integer(r.unit_score as u64)),
        amount: sum(|r| Rational::from_integer(r.amount_score as u64)),
        parse_rate: sum(|r| Rational::from_integer(u64::from(r.parse_ok))),
    })
}
