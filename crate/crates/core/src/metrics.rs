//! Evaluation metrics for generated Cooklang.
//!
//! Word error rate and ROUGE-L work on plain word lists; the edit-rate
//! metric works on Cooklang-aware token sequences and additionally counts
//! block shifts. Ingredient, unit, and amount identification are binary
//! per-recipe scores joined by exact string matching (whitespace trim is
//! the only normalization; case differences count as mismatches).
//!
//! An empty reference against a non-empty hypothesis is an error rather
//! than a silent division by zero; two empty sides score perfect.

use crate::ast::IngredientRecord;
use crate::parser::{self, parse, validate, ParseError};
use crate::rational::Rational;
use crate::tokenize::{tokenize, word_tokenize, SourceKind, Token, TokenKind, TokenSequence};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricError {
    #[error("empty reference with non-empty hypothesis")]
    EmptyReference,
    #[error("sequence of {len} tokens exceeds the exact-search limit of {max}")]
    SequenceTooLong { len: usize, max: usize },
    #[error("reference does not parse: {0}")]
    InvalidReference(ParseError),
}

/// Per-sample scores for one reference/candidate pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub sample_id: String,
    pub wer: Rational,
    pub rouge_l: Rational,
    pub ter: Rational,
    pub ingredient_score: u8,
    pub unit_score: u8,
    pub amount_score: u8,
    pub parse_ok: bool,
    pub missing_ingredients: Vec<String>,
    pub extra_ingredients: Vec<String>,
}

// ---------------------------------------------------------------------------
// word error rate
// ---------------------------------------------------------------------------

/// Word-level Levenshtein distance divided by reference length. May exceed 1.
pub fn wer(reference: &[String], hypothesis: &[String]) -> Result<Rational, MetricError> {
    if reference.is_empty() {
        return if hypothesis.is_empty() {
            Ok(Rational::zero())
        } else {
            Err(MetricError::EmptyReference)
        };
    }
    let edits = levenshtein(reference, hypothesis);
    Ok(Rational::ratio(edits as u64, reference.len() as u64))
}

// Two-row DP, O(min(m,n)) memory.
fn levenshtein<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    if a.is_empty() {
        return b.len();
    }
    if b.is_empty() {
        return a.len();
    }
    let (short, long) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let m = short.len();
    let mut prev: Vec<usize> = (0..=m).collect();
    let mut curr = vec![0usize; m + 1];
    for (i, lt) in long.iter().enumerate() {
        curr[0] = i + 1;
        for (j, st) in short.iter().enumerate() {
            let cost = usize::from(lt != st);
            curr[j + 1] = (prev[j + 1] + 1).min(curr[j] + 1).min(prev[j] + cost);
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    prev[m]
}

// ---------------------------------------------------------------------------
// ROUGE-L
// ---------------------------------------------------------------------------

/// F1 built from the longest common subsequence: `2L / (|ref| + |hyp|)`.
/// Two empty sequences score 1; a zero-length LCS scores 0.
pub fn rouge_l(reference: &[String], hypothesis: &[String]) -> Rational {
    if reference.is_empty() && hypothesis.is_empty() {
        return Rational::one();
    }
    let l = lcs_len(reference, hypothesis);
    if l == 0 {
        return Rational::zero();
    }
    Rational::ratio(
        2 * l as u64,
        (reference.len() + hypothesis.len()) as u64,
    )
}

fn lcs_len<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    if a.is_empty() || b.is_empty() {
        return 0;
    }
    let m = b.len();
    let mut prev = vec![0usize; m + 1];
    let mut curr = vec![0usize; m + 1];
    for at in a {
        for (j, bt) in b.iter().enumerate() {
            curr[j + 1] = if at == bt {
                prev[j] + 1
            } else {
                prev[j + 1].max(curr[j])
            };
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    prev[m]
}

// ---------------------------------------------------------------------------
// token edit rate with block shifts
// ---------------------------------------------------------------------------

const MAX_SHIFTS: u64 = 50;
const MAX_BLOCK_LEN: usize = 10;
const MAX_SHIFT_DIST: usize = 10;

/// Greedy edit rate over Cooklang tokens: repeatedly apply the block shift
/// that most reduces the remaining edit distance (each shift costs 1), then
/// add the leftover Levenshtein distance, normalized by reference length.
///
/// A shifted block must match the reference at its target position; the
/// greedy search is capped at 50 shifts. The result is an upper bound on
/// [`ter_exact`] and never exceeds plain edit distance over the reference
/// length.
pub fn ter(reference: &TokenSequence, hypothesis: &TokenSequence) -> Result<Rational, MetricError> {
    if reference.is_empty() {
        return if hypothesis.is_empty() {
            Ok(Rational::zero())
        } else {
            Err(MetricError::EmptyReference)
        };
    }
    let cost = greedy_shift_cost(&hypothesis.tokens, &reference.tokens);
    Ok(Rational::ratio(cost, reference.len() as u64))
}

fn greedy_shift_cost(hypothesis: &[Token], reference: &[Token]) -> u64 {
    let mut hyp = hypothesis.to_vec();
    let mut base = levenshtein(&hyp, reference);
    let mut shifts = 0u64;

    while shifts < MAX_SHIFTS && base > 0 {
        let mut best: Option<(usize, Vec<Token>)> = None;
        for len in 1..=MAX_BLOCK_LEN.min(hyp.len()) {
            for i in 0..=(hyp.len() - len) {
                let lo = i.saturating_sub(MAX_SHIFT_DIST);
                let hi = (i + MAX_SHIFT_DIST).min(reference.len().saturating_sub(len));
                for j in lo..=hi {
                    if j + len > reference.len() || reference[j..j + len] != hyp[i..i + len] {
                        continue;
                    }
                    let shifted = apply_shift(&hyp, i, len, j);
                    if shifted == hyp {
                        continue;
                    }
                    let d = levenshtein(&shifted, reference);
                    if best.as_ref().map_or(true, |(bd, _)| d < *bd) {
                        best = Some((d, shifted));
                    }
                }
            }
        }
        match best {
            Some((d, shifted)) if d < base => {
                hyp = shifted;
                base = d;
                shifts += 1;
            }
            _ => break,
        }
    }
    shifts + base as u64
}

fn apply_shift<T: Clone>(seq: &[T], block_start: usize, block_len: usize, dest: usize) -> Vec<T> {
    let mut rest: Vec<T> = Vec::with_capacity(seq.len());
    rest.extend_from_slice(&seq[..block_start]);
    rest.extend_from_slice(&seq[block_start + block_len..]);
    let k = dest.min(rest.len());
    let mut out = Vec::with_capacity(seq.len());
    out.extend_from_slice(&rest[..k]);
    out.extend_from_slice(&seq[block_start..block_start + block_len]);
    out.extend_from_slice(&rest[k..]);
    out
}

/// Maximum per-side length accepted by [`ter_exact`].
pub const EXACT_TER_MAX: usize = 8;

/// True minimum edit-plus-shift cost by exhaustive search, normalized by
/// reference length. Intended as an oracle for short sequences; both sides
/// are limited to [`EXACT_TER_MAX`] tokens.
pub fn ter_exact(
    reference: &TokenSequence,
    hypothesis: &TokenSequence,
) -> Result<Rational, MetricError> {
    if reference.is_empty() {
        return if hypothesis.is_empty() {
            Ok(Rational::zero())
        } else {
            Err(MetricError::EmptyReference)
        };
    }
    for len in [reference.len(), hypothesis.len()] {
        if len > EXACT_TER_MAX {
            return Err(MetricError::SequenceTooLong {
                len,
                max: EXACT_TER_MAX,
            });
        }
    }

    // Intern tokens so states are cheap to clone and compare.
    let mut alphabet: Vec<&Token> = Vec::new();
    let refr = intern_tokens(&reference.tokens, &mut alphabet);
    let hyp = intern_tokens(&hypothesis.tokens, &mut alphabet);

    let cost = exact_shift_cost(&hyp, &refr);
    Ok(Rational::ratio(cost, reference.len() as u64))
}

fn intern_tokens<'a>(tokens: &'a [Token], alphabet: &mut Vec<&'a Token>) -> Vec<u8> {
    tokens
        .iter()
        .map(|t| {
            if let Some(pos) = alphabet.iter().position(|k| *k == t) {
                pos as u8
            } else {
                alphabet.push(t);
                (alphabet.len() - 1) as u8
            }
        })
        .collect()
}

fn exact_shift_cost(hyp: &[u8], refr: &[u8]) -> u64 {
    // The multiset gap is invariant under shifts, so it lower-bounds the
    // edit distance of every reachable state.
    let lb = multiset_lower_bound(hyp, refr);
    let mut best = levenshtein(hyp, refr) as u64;
    let mut seen: HashMap<Vec<u8>, u64> = HashMap::new();
    seen.insert(hyp.to_vec(), 0);
    let mut stack: Vec<(Vec<u8>, u64)> = vec![(hyp.to_vec(), 0)];

    while let Some((state, shifts)) = stack.pop() {
        if shifts + 1 + lb >= best {
            continue;
        }
        let n = state.len();
        for len in 1..=n {
            for i in 0..=(n - len) {
                for dest in 0..=(n - len) {
                    if dest == i {
                        continue;
                    }
                    let next = apply_shift(&state, i, len, dest);
                    if next == state {
                        continue;
                    }
                    let next_shifts = shifts + 1;
                    match seen.get(&next) {
                        Some(&s) if s <= next_shifts => continue,
                        _ => {}
                    }
                    let d = levenshtein(&next, refr) as u64;
                    best = best.min(next_shifts + d);
                    seen.insert(next.clone(), next_shifts);
                    stack.push((next, next_shifts));
                }
            }
        }
    }
    best
}

fn multiset_lower_bound(hyp: &[u8], refr: &[u8]) -> u64 {
    let mut counts: HashMap<u8, i64> = HashMap::new();
    for &t in hyp {
        *counts.entry(t).or_default() += 1;
    }
    for &t in refr {
        *counts.entry(t).or_default() -= 1;
    }
    let surplus: i64 = counts.values().filter(|&&v| v > 0).sum();
    let deficit: i64 = -counts.values().filter(|&&v| v < 0).sum::<i64>();
    surplus.max(deficit) as u64
}

// ---------------------------------------------------------------------------
// ingredient, unit, and amount identification
// ---------------------------------------------------------------------------

fn trimmed_names(records: &[IngredientRecord]) -> Vec<String> {
    records.iter().map(|r| r.name.trim().to_string()).collect()
}

/// 1 iff every reference ingredient name appears among the hypothesis names
/// (multiset containment, exact matching). Extra hypothesis ingredients do
/// not lower this score; they show up in [`ingredient_diff`].
pub fn ingredient_score(
    reference: &[IngredientRecord],
    hypothesis: &[IngredientRecord],
) -> u8 {
    let (missing, _) = ingredient_diff(reference, hypothesis);
    u8::from(missing.is_empty())
}

/// Multiset difference of ingredient names, both sides in first-occurrence
/// order: reference names with no hypothesis match (false negatives) and
/// hypothesis names with no reference match (false positives).
pub fn ingredient_diff(
    reference: &[IngredientRecord],
    hypothesis: &[IngredientRecord],
) -> (Vec<String>, Vec<String>) {
    let ref_names = trimmed_names(reference);
    let hyp_names = trimmed_names(hypothesis);

    let mut hyp_counts: HashMap<&str, usize> = HashMap::new();
    for name in &hyp_names {
        *hyp_counts.entry(name).or_default() += 1;
    }
    let mut missing = Vec::new();
    for name in &ref_names {
        match hyp_counts.get_mut(name.as_str()) {
            Some(c) if *c > 0 => *c -= 1,
            _ => missing.push(name.clone()),
        }
    }

    let mut ref_counts: HashMap<&str, usize> = HashMap::new();
    for name in &ref_names {
        *ref_counts.entry(name).or_default() += 1;
    }
    let mut extra = Vec::new();
    for name in &hyp_names {
        match ref_counts.get_mut(name.as_str()) {
            Some(c) if *c > 0 => *c -= 1,
            _ => extra.push(name.clone()),
        }
    }

    (missing, extra)
}

/// 1 iff every reference ingredient finds a same-name hypothesis ingredient
/// with an identical unit string (absent matches absent). Any unmatched
/// reference name forces 0; an empty reference scores 1 vacuously.
pub fn unit_score(reference: &[IngredientRecord], hypothesis: &[IngredientRecord]) -> u8 {
    attribute_score(reference, hypothesis, |r| r.unit.clone())
}

/// Like [`unit_score`] but over raw amount strings, so `1/2` and `0.5`
/// count as different.
pub fn amount_score(reference: &[IngredientRecord], hypothesis: &[IngredientRecord]) -> u8 {
    attribute_score(reference, hypothesis, |r| {
        r.amount.as_ref().map(|q| q.raw.clone())
    })
}

fn attribute_score<F>(
    reference: &[IngredientRecord],
    hypothesis: &[IngredientRecord],
    attribute: F,
) -> u8
where
    F: Fn(&IngredientRecord) -> Option<String>,
{
    // Join multiset-wise by trimmed name, in order of occurrence.
    let mut by_name: HashMap<String, std::collections::VecDeque<&IngredientRecord>> =
        HashMap::new();
    for rec in hypothesis {
        by_name
            .entry(rec.name.trim().to_string())
            .or_default()
            .push_back(rec);
    }
    for rec in reference {
        let Some(matched) = by_name
            .get_mut(rec.name.trim())
            .and_then(|queue| queue.pop_front())
        else {
            return 0;
        };
        if attribute(rec) != attribute(matched) {
            return 0;
        }
    }
    1
}

// ---------------------------------------------------------------------------
// whole-sample scoring
// ---------------------------------------------------------------------------

/// Which token stream feeds the word error rate.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WerTokenization {
    /// Plain whitespace words (the default).
    #[default]
    Words,
    /// Cooklang-aware token surfaces.
    CooklangElements,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScoreOptions {
    #[serde(default)]
    pub wer_tokenization: WerTokenization,
}

/// Score one candidate against its reference across all metrics.
///
/// The reference must parse. When the candidate does not, text metrics are
/// still computed on the raw text, `parse_ok` is false, and the three
/// identification scores are 0.
pub fn score_sample(
    sample_id: &str,
    reference_cook: &str,
    candidate_cook: &str,
    options: &ScoreOptions,
) -> Result<MetricReport, MetricError> {
    let reference_ast = parse(reference_cook).map_err(MetricError::InvalidReference)?;
    let parse_ok = validate(candidate_cook).is_ok();

    let (ref_words, cand_words) = match options.wer_tokenization {
        WerTokenization::Words => (
            word_tokenize(reference_cook),
            word_tokenize(candidate_cook),
        ),
        WerTokenization::CooklangElements => (
            element_surfaces(reference_cook, SourceKind::Reference),
            element_surfaces(candidate_cook, SourceKind::Hypothesis),
        ),
    };
    let wer_value = wer(&ref_words, &cand_words)?;
    let rouge_value = rouge_l(&ref_words, &cand_words);

    let ref_tokens = tokenize(reference_cook, SourceKind::Reference);
    let cand_tokens = tokenize(candidate_cook, SourceKind::Hypothesis);
    let ter_value = ter(&ref_tokens, &cand_tokens)?;

    let ref_ingredients = parser::extract_ingredients(&reference_ast);
    let cand_ingredients = match parse(candidate_cook) {
        Ok(ast) => parser::extract_ingredients(&ast),
        Err(_) => Vec::new(),
    };
    let (missing, extra) = ingredient_diff(&ref_ingredients, &cand_ingredients);

    let (ing, unit, amount) = if parse_ok {
        (
            u8::from(missing.is_empty()),
            unit_score(&ref_ingredients, &cand_ingredients),
            amount_score(&ref_ingredients, &cand_ingredients),
        )
    } else {
        (0, 0, 0)
    };

    Ok(MetricReport {
        sample_id: sample_id.to_string(),
        wer: wer_value,
        rouge_l: rouge_value,
        ter: ter_value,
        ingredient_score: ing,
        unit_score: unit,
        amount_score: amount,
        parse_ok,
        missing_ingredients: missing,
        extra_ingredients: extra,
    })
}

fn element_surfaces(text: &str, kind: SourceKind) -> Vec<String> {
    tokenize(text, kind)
        .tokens
        .into_iter()
        .filter(|t| t.kind != TokenKind::StepBoundary)
        .map(|t| t.surface)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(items: &[&str]) -> Vec<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    fn seq(items: &[&str]) -> TokenSequence {
        TokenSequence {
            tokens: items.iter().map(|s| Token::word(*s)).collect(),
            source_kind: SourceKind::Reference,
        }
    }

    fn ing(name: &str) -> IngredientRecord {
        IngredientRecord::new(name)
    }

    #[test]
    fn wer_identity_is_zero() {
        let r = words(&["a", "b", "c"]);
        assert!(wer(&r, &r).unwrap().is_zero());
    }

    #[test]
    fn wer_single_deletion() {
        let r = words(&["mash", "the", "potato"]);
        let h = words(&["mash", "potato"]);
        assert_eq!(wer(&r, &h).unwrap(), Rational::ratio(1, 3));
    }

    #[test]
    fn wer_may_exceed_one() {
        let r = words(&["a"]);
        let h = words(&["b", "c", "d"]);
        assert_eq!(wer(&r, &h).unwrap(), Rational::from_integer(3));
    }

    #[test]
    fn wer_empty_conventions() {
        assert!(wer(&[], &[]).unwrap().is_zero());
        assert_eq!(
            wer(&[], &words(&["x"])),
            Err(MetricError::EmptyReference)
        );
    }

    #[test]
    fn rouge_identity_and_disjoint() {
        let a = words(&["one", "two"]);
        assert_eq!(rouge_l(&a, &a), Rational::one());
        assert!(rouge_l(&a, &words(&["three"])).is_zero());
        assert_eq!(rouge_l(&[], &[]), Rational::one());
    }

    #[test]
    fn rouge_f1_from_lcs() {
        let r = words(&["a", "b", "c", "d"]);
        let h = words(&["a", "c", "d"]);
        // L = 3, P = 1, R = 3/4, F1 = 6/7
        assert_eq!(rouge_l(&r, &h), Rational::ratio(6, 7));
    }

    #[test]
    fn rouge_is_symmetric() {
        let a = words(&["x", "y", "z"]);
        let b = words(&["y", "q", "z", "w"]);
        assert_eq!(rouge_l(&a, &b), rouge_l(&b, &a));
    }

    #[test]
    fn ter_identity_substitution_and_shift() {
        let r = seq(&["a", "b", "c", "d"]);
        assert!(ter(&r, &r).unwrap().is_zero());

        let sub = seq(&["a", "b", "x", "d"]);
        assert_eq!(ter(&r, &sub).unwrap(), Rational::ratio(1, 4));

        let rotated = seq(&["b", "c", "d", "a"]);
        assert_eq!(ter(&r, &rotated).unwrap(), Rational::ratio(1, 4));
        assert_eq!(ter_exact(&r, &rotated).unwrap(), Rational::ratio(1, 4));
    }

    #[test]
    fn greedy_ter_never_beats_plain_edit_distance() {
        let r = seq(&["a", "b", "a", "c", "b"]);
        let h = seq(&["b", "a", "b", "a", "c"]);
        let plain = levenshtein(&r.tokens, &h.tokens) as u64;
        let greedy = ter(&r, &h).unwrap();
        assert!(greedy <= Rational::ratio(plain, r.len() as u64));
        assert!(ter_exact(&r, &h).unwrap() <= greedy);
    }

    #[test]
    fn ter_exact_rejects_long_sequences() {
        let long: Vec<&str> = vec!["a"; 9];
        let r = seq(&long);
        assert!(matches!(
            ter_exact(&r, &r),
            Err(MetricError::SequenceTooLong { len: 9, .. })
        ));
    }

    #[test]
    fn ingredient_score_is_containment() {
        let r = [ing("potato"), ing("salt")];
        assert_eq!(ingredient_score(&r, &[ing("potato"), ing("salt")]), 1);
        assert_eq!(ingredient_score(&r, &[ing("potato")]), 0);
        // extras do not hurt
        assert_eq!(
            ingredient_score(&r, &[ing("potato"), ing("salt"), ing("pepper")]),
            1
        );
        // exact matching: case differs
        assert_eq!(ingredient_score(&[ing("potato")], &[ing("Potato")]), 0);
        // vacuous
        assert_eq!(ingredient_score(&[], &[ing("salt")]), 1);
    }

    #[test]
    fn duplicate_names_are_multiset_matched() {
        let r = [ing("salt"), ing("salt")];
        assert_eq!(ingredient_score(&r, &[ing("salt")]), 0);
        assert_eq!(ingredient_score(&r, &[ing("salt"), ing("salt")]), 1);
    }

    #[test]
    fn diff_lists_preserve_order() {
        let r = [ing("potato"), ing("salt")];
        let h = [ing("potato"), ing("pepper")];
        let (missing, extra) = ingredient_diff(&r, &h);
        assert_eq!(missing, vec!["salt"]);
        assert_eq!(extra, vec!["pepper"]);

        assert_eq!(ingredient_diff(&r, &r), (vec![], vec![]));
        let (missing, extra) = ingredient_diff(&[], &[ing("salt")]);
        assert!(missing.is_empty());
        assert_eq!(extra, vec!["salt"]);
    }

    #[test]
    fn unit_and_amount_scores() {
        let r = [ing("potato").with_amount("2")];
        let h = [ing("potato").with_amount("2")];
        assert_eq!(unit_score(&r, &h), 1);
        assert_eq!(amount_score(&r, &h), 1);

        // raw strings differ even though the value matches
        let r = [ing("syrup").with_amount("1/2").with_unit("tbsp")];
        let h = [ing("syrup").with_amount("0.5").with_unit("tbsp")];
        assert_eq!(amount_score(&r, &h), 0);
        assert_eq!(unit_score(&r, &h), 1);

        // unmatched reference forces both to 0
        let r = [ing("salt")];
        assert_eq!(unit_score(&r, &[]), 0);
        assert_eq!(amount_score(&r, &[]), 0);

        // vacuous on empty reference
        assert_eq!(unit_score(&[], &h), 1);
    }

    #[test]
    fn score_sample_echo_is_perfect() {
        let cook = "Mash @potato{2} with #masher{} for ~{5%minutes}";
        let report = score_sample("s", cook, cook, &ScoreOptions::default()).unwrap();
        assert!(report.wer.is_zero());
        assert_eq!(report.rouge_l, Rational::one());
        assert!(report.ter.is_zero());
        assert_eq!(report.ingredient_score, 1);
        assert_eq!(report.unit_score, 1);
        assert_eq!(report.amount_score, 1);
        assert!(report.parse_ok);
        assert!(report.missing_ingredients.is_empty());
        assert!(report.extra_ingredients.is_empty());
    }

    #[test]
    fn score_sample_empty_candidate() {
        let report =
            score_sample("s", "Add @salt now", "", &ScoreOptions::default()).unwrap();
        assert!(report.rouge_l.is_zero());
        assert_eq!(report.ingredient_score, 0);
        assert_eq!(report.missing_ingredients, vec!["salt"]);
    }

    #[test]
    fn score_sample_renamed_ingredient() {
        let report = score_sample(
            "s",
            "Add @salt and stir",
            "Add @sugar and stir",
            &ScoreOptions::default(),
        )
        .unwrap();
        assert_eq!(report.ingredient_score, 0);
        assert_eq!(report.missing_ingredients.len(), 1);
        assert_eq!(report.extra_ingredients.len(), 1);
    }

    #[test]
    fn score_sample_unparsable_candidate_is_penalized_not_fatal() {
        let report = score_sample(
            "s",
            "Add @salt now",
            "Add @syrup{1/2 now",
            &ScoreOptions::default(),
        )
        .unwrap();
        assert!(!report.parse_ok);
        assert_eq!(report.ingredient_score, 0);
        assert_eq!(report.unit_score, 0);
        assert_eq!(report.amount_score, 0);
        assert!(!report.wer.is_zero());
    }

    #[test]
    fn score_sample_requires_parsable_reference() {
        assert!(matches!(
            score_sample("s", "@broken{", "x", &ScoreOptions::default()),
            Err(MetricError::InvalidReference(_))
        ));
    }

    #[test]
    fn cooklang_element_wer_counts_marker_tokens_whole() {
        let reference = "Mash @potato{2} well";
        let candidate = "Mash @potato{3} well";
        let options = ScoreOptions {
            wer_tokenization: WerTokenization::CooklangElements,
        };
        let report = score_sample("s", reference, candidate, &options).unwrap();
        // one marker substituted out of three elements
        assert_eq!(report.wer, Rational::ratio(1, 3));

        let word_report =
            score_sample("s", reference, candidate, &ScoreOptions::default()).unwrap();
        assert_eq!(word_report.wer, Rational::ratio(1, 3));
    }

    #[test]
    fn score_sample_both_empty_is_perfect() {
        let report = score_sample("s", "", "", &ScoreOptions::default()).unwrap();
        assert!(report.wer.is_zero());
        assert_eq!(report.rouge_l, Rational::one());
        assert!(report.ter.is_zero());
        assert_eq!(report.ingredient_score, 1);
    }

    #[test]
    fn score_sample_empty_reference_with_candidate_is_an_error() {
        assert_eq!(
            score_sample("s", "", "@salt", &ScoreOptions::default()),
            Err(MetricError::EmptyReference)
        );
    }
}
