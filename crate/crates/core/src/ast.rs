//! The parsed representation of a Cooklang document.
//!
//! A document is an ordered list of steps plus document-level metadata and
//! comments. Ingredients, cookware, and timers are stored once at the
//! document level in first-occurrence order; step items reference them by
//! index. This keeps extraction ([`RecipeAst::ingredients`] et al.) a plain
//! slice read and makes structural equality a derived `PartialEq`.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

/// A parsed Cooklang document.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RecipeAst {
    /// `>> key: value` lines, in source order. Duplicate keys keep the last value.
    pub metadata: IndexMap<String, String>,
    pub steps: Vec<Step>,
    pub ingredients: Vec<IngredientRecord>,
    pub cookwares: Vec<CookwareRecord>,
    pub timers: Vec<TimerRecord>,
    pub comments: Vec<Comment>,
}

impl RecipeAst {
    pub fn is_empty(&self) -> bool {
        self.steps.is_empty() && self.metadata.is_empty() && self.comments.is_empty()
    }

    /// Remove the ingredient at `index` together with its step item,
    /// shifting later ingredient references down.
    pub fn remove_ingredient(&mut self, index: usize) {
        if index >= self.ingredients.len() {
            return;
        }
        self.ingredients.remove(index);
        for step in &mut self.steps {
            step.items.retain(|item| !matches!(item, StepItem::IngredientRef(i) if *i == index));
            for item in &mut step.items {
                if let StepItem::IngredientRef(i) = item {
                    if *i > index {
                        *i -= 1;
                    }
                }
            }
        }
    }
}

/// One step: a paragraph of the source document.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Step {
    pub items: Vec<StepItem>,
}

/// A fragment of a step, in source order. Marker items index into the
/// document-level record lists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum StepItem {
    Text(String),
    IngredientRef(usize),
    CookwareRef(usize),
    TimerRef(usize),
}

/// An `@ingredient`, with its optional `{amount%unit}` quantity.
///
/// The name never contains the marker characters `@`, `#`, `~`, `{`, `}`,
/// and a unit is only present when an amount is.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IngredientRecord {
    pub name: String,
    pub amount: Option<Quantity>,
    pub unit: Option<String>,
}

impl IngredientRecord {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            amount: None,
            unit: None,
        }
    }

    pub fn with_amount(mut self, raw: &str) -> Self {
        self.amount = Some(Quantity::from_raw(raw));
        self
    }

    pub fn with_unit(mut self, unit: impl Into<String>) -> Self {
        self.unit = Some(unit.into());
        self
    }
}

/// A quantity as written in the source, e.g. `2`, `0.5`, `1/2`, or free text.
///
/// `raw` is the trimmed source substring; fractions are kept as written and
/// never normalized to decimals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Quantity {
    pub value: QuantityValue,
    pub raw: String,
}

impl Quantity {
    pub fn from_raw(raw: &str) -> Self {
        let raw = raw.trim().to_string();
        let value = QuantityValue::parse(&raw);
        Self { value, raw }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum QuantityValue {
    Integer(i64),
    Decimal(f64),
    Fraction { numerator: i64, denominator: i64 },
    Text(String),
}

impl QuantityValue {
    fn parse(raw: &str) -> Self {
        let s = raw.trim();
        if let Ok(n) = s.parse::<i64>() {
            return QuantityValue::Integer(n);
        }
        if is_decimal(s) {
            if let Ok(x) = s.parse::<f64>() {
                return QuantityValue::Decimal(x);
            }
        }
        if let Some((num, den)) = s.split_once('/') {
            if let (Ok(n), Ok(d)) = (num.trim().parse::<i64>(), den.trim().parse::<i64>()) {
                if d != 0 {
                    return QuantityValue::Fraction {
                        numerator: n,
                        denominator: d,
                    };
                }
            }
        }
        QuantityValue::Text(s.to_string())
    }
}

// digits '.' digits, with at least one digit somewhere; no exponents.
fn is_decimal(s: &str) -> bool {
    let Some((int, frac)) = s.split_once('.') else {
        return false;
    };
    let digits = |t: &str| t.chars().all(|c| c.is_ascii_digit());
    digits(int) && digits(frac) && (!int.is_empty() || !frac.is_empty())
}

/// A `#cookware` item. Cookware quantities have no unit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CookwareRecord {
    pub name: String,
    pub quantity: Option<Quantity>,
}

/// A `~timer{duration%unit}`. The duration is required; the unit is the
/// time unit as written and empty when the source had none.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimerRecord {
    pub name: Option<String>,
    pub duration: Quantity,
    pub unit: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CommentKind {
    Line,
    Block,
}

/// A `--` or `[- -]` comment, anchored to the index of the step it appears
/// in or immediately before (`steps.len()` for trailing comments).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comment {
    pub kind: CommentKind,
    pub text: String,
    pub anchor: usize,
}
