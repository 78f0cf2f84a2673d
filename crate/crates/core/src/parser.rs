//! Lenient Cooklang parser.
//!
//! Markers: `@` ingredients, `#` cookware, `~` timers. A brace-less marker
//! captures a single word; multi-word names end with a `{...}` block, whose
//! content is split on the first `%` into amount and unit. `-- ...` is a
//! line comment, `[- ... -]` a block comment, `>> key: value` a metadata
//! line. Blank lines separate steps.
//!
//! Only two inputs are rejected: a marker's `{` with no closing `}` on the
//! same line, and a `[-` with no closing `-]`. Everything else parses, with
//! unrecognized text kept as plain text items.

use crate::ast::*;
use thiserror::Error;
use unicode_normalization::UnicodeNormalization;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: unbalanced `{{` (missing `}}`)")]
    UnbalancedBrace { line: usize, column: usize },
    #[error("line {line}, column {column}: unterminated block comment (`[-` without `-]`)")]
    UnterminatedBlockComment { line: usize, column: usize },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match self {
            ParseError::UnbalancedBrace { line, .. }
            | ParseError::UnterminatedBlockComment { line, .. } => *line,
        }
    }

    pub fn column(&self) -> usize {
        match self {
            ParseError::UnbalancedBrace { column, .. }
            | ParseError::UnterminatedBlockComment { column, .. } => *column,
        }
    }
}

/// Result of [`validate`]: either the source parses or the diagnostics say
/// where it does not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationOutcome {
    Ok,
    Invalid(Vec<Diagnostic>),
}

impl ValidationOutcome {
    pub fn is_ok(&self) -> bool {
        matches!(self, ValidationOutcome::Ok)
    }

    pub fn diagnostics(&self) -> &[Diagnostic] {
        match self {
            ValidationOutcome::Ok => &[],
            ValidationOutcome::Invalid(d) => d,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

/// Check that `source` parses. This is the `recipe.cook` acceptance check:
/// ok exactly when [`parse`] succeeds.
pub fn validate(source: &str) -> ValidationOutcome {
    match parse(source) {
        Ok(_) => ValidationOutcome::Ok,
        Err(e) => ValidationOutcome::Invalid(vec![Diagnostic {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }]),
    }
}

/// Ingredients in first-occurrence order; duplicates kept.
pub fn extract_ingredients(ast: &RecipeAst) -> Vec<IngredientRecord> {
    ast.ingredients.clone()
}

pub fn extract_cookware(ast: &RecipeAst) -> Vec<CookwareRecord> {
    ast.cookwares.clone()
}

pub fn extract_timers(ast: &RecipeAst) -> Vec<TimerRecord> {
    ast.timers.clone()
}

/// Parse a Cooklang document.
pub fn parse(source: &str) -> Result<RecipeAst, ParseError> {
    let source = normalize_newlines(source);
    let (lines, raw_comments) = strip_comments(&source)?;

    let mut ast = RecipeAst::default();
    let mut paragraphs: Vec<Paragraph> = Vec::new();
    let mut current: Option<Paragraph> = None;

    for line in &lines {
        let trimmed = line.text.trim();
        if trimmed.is_empty() {
            if line.had_comment {
                // A line that was only a comment neither joins nor splits
                // a step.
                continue;
            }
            if let Some(p) = current.take() {
                paragraphs.push(p);
            }
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix(">>") {
            let (key, value) = match rest.split_once(':') {
                Some((k, v)) => (k.trim(), v.trim()),
                None => (rest.trim(), ""),
            };
            if !key.is_empty() {
                ast.metadata.insert(nfc(key), nfc(value));
            }
            continue;
        }
        let para = current.get_or_insert_with(|| Paragraph {
            lines: Vec::new(),
            last_line: line.number,
        });
        para.last_line = line.number;
        para.lines.push((line.number, trimmed.to_string()));
    }
    if let Some(p) = current.take() {
        paragraphs.push(p);
    }

    // One step per paragraph, so step indices line up with paragraph
    // indices for comment anchoring.
    for para in &paragraphs {
        let items = parse_step(para, &mut ast)?;
        ast.steps.push(Step { items });
    }

    // Anchor each comment to the step it appears in or immediately before.
    let step_last_lines: Vec<usize> = paragraphs.iter().map(|p| p.last_line).collect();
    for rc in raw_comments {
        let anchor = step_last_lines
            .iter()
            .filter(|&&last| last < rc.line)
            .count();
        ast.comments.push(Comment {
            kind: rc.kind,
            text: rc.text,
            anchor,
        });
    }

    Ok(ast)
}

fn normalize_newlines(source: &str) -> String {
    source.replace("\r\n", "\n").replace('\r', "\n")
}

fn nfc(s: &str) -> String {
    s.nfc().collect()
}

struct Paragraph {
    lines: Vec<(usize, String)>,
    last_line: usize,
}

struct CleanLine {
    text: String,
    number: usize,
    had_comment: bool,
}

struct RawComment {
    kind: CommentKind,
    text: String,
    line: usize,
}

/// Remove comments, keeping track of which lines contained them so that
/// comment-only lines can be dropped without acting as step separators.
fn strip_comments(source: &str) -> Result<(Vec<CleanLine>, Vec<RawComment>), ParseError> {
    let chars: Vec<char> = source.chars().collect();
    let mut lines = Vec::new();
    let mut comments = Vec::new();

    let mut buf = String::new();
    let mut had_comment = false;
    let mut line_no = 1usize;
    let mut col = 1usize;
    let mut line_start = 1usize;
    let mut i = 0usize;

    macro_rules! flush_line {
        () => {{
            lines.push(CleanLine {
                text: std::mem::take(&mut buf),
                number: line_start,
                had_comment,
            });
            #[allow(unused_assignments)]
            {
                had_comment = false;
            }
        }};
    }

    while i < chars.len() {
        let c = chars[i];
        if c == '-' && chars.get(i + 1) == Some(&'-') {
            let comment_line = line_no;
            i += 2;
            col += 2;
            let mut text = String::new();
            while i < chars.len() && chars[i] != '\n' {
                text.push(chars[i]);
                i += 1;
                col += 1;
            }
            comments.push(RawComment {
                kind: CommentKind::Line,
                text: text.trim().to_string(),
                line: comment_line,
            });
            had_comment = true;
            continue;
        }
        if c == '[' && chars.get(i + 1) == Some(&'-') {
            let (start_line, start_col) = (line_no, col);
            i += 2;
            col += 2;
            let mut text = String::new();
            loop {
                if i >= chars.len() {
                    return Err(ParseError::UnterminatedBlockComment {
                        line: start_line,
                        column: start_col,
                    });
                }
                if chars[i] == '-' && chars.get(i + 1) == Some(&']') {
                    i += 2;
                    col += 2;
                    break;
                }
                if chars[i] == '\n' {
                    line_no += 1;
                    col = 1;
                } else {
                    col += 1;
                }
                text.push(chars[i]);
                i += 1;
            }
            comments.push(RawComment {
                kind: CommentKind::Block,
                text: text.trim().to_string(),
                line: start_line,
            });
            had_comment = true;
            continue;
        }
        if c == '\n' {
            flush_line!();
            i += 1;
            line_no += 1;
            col = 1;
            line_start = line_no;
            continue;
        }
        buf.push(c);
        i += 1;
        col += 1;
    }
    if !buf.is_empty() || had_comment {
        flush_line!();
    }

    Ok((lines, comments))
}

// ---------------------------------------------------------------------------
// step parsing
// ---------------------------------------------------------------------------

const WORD_STOPS: &[char] = &[',', '.', ';', ':', '!', '?'];
const MARKER_CHARS: &[char] = &['@', '#', '~', '{', '}'];

#[derive(Clone, Copy)]
struct PosChar {
    c: char,
    line: usize,
    col: usize,
    /// Synthetic space inserted where source lines were joined; marker
    /// names and quantities may not cross it.
    join: bool,
}

fn parse_step(para: &Paragraph, ast: &mut RecipeAst) -> Result<Vec<StepItem>, ParseError> {
    let mut stream: Vec<PosChar> = Vec::new();
    for (idx, (line_no, text)) in para.lines.iter().enumerate() {
        if idx > 0 {
            stream.push(PosChar {
                c: ' ',
                line: *line_no,
                col: 0,
                join: true,
            });
        }
        for (col, c) in text.chars().enumerate() {
            stream.push(PosChar {
                c,
                line: *line_no,
                col: col + 1,
                join: false,
            });
        }
    }

    let mut items: Vec<StepItem> = Vec::new();
    let mut text_buf = String::new();
    let mut i = 0usize;

    macro_rules! flush_text {
        () => {{
            if !text_buf.is_empty() {
                let collapsed = collapse_whitespace(&text_buf);
                if !collapsed.is_empty() {
                    items.push(StepItem::Text(collapsed));
                }
                text_buf.clear();
            }
        }};
    }

    while i < stream.len() {
        let pc = stream[i];
        match pc.c {
            '@' | '#' | '~' => match parse_marker(&stream, i, ast)? {
                Some((item, next)) => {
                    flush_text!();
                    items.push(item);
                    i = next;
                }
                None => {
                    text_buf.push(pc.c);
                    i += 1;
                }
            },
            c => {
                text_buf.push(c);
                i += 1;
            }
        }
    }
    flush_text!();

    // Canonical step surface: no leading or trailing whitespace.
    if let Some(StepItem::Text(t)) = items.first_mut() {
        *t = t.trim_start().to_string();
    }
    if let Some(StepItem::Text(t)) = items.last_mut() {
        *t = t.trim_end().to_string();
    }
    items.retain(|it| !matches!(it, StepItem::Text(t) if t.is_empty()));

    Ok(items)
}

fn collapse_whitespace(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    let mut in_ws = false;
    for c in s.chars() {
        if c.is_whitespace() {
            if !in_ws {
                out.push(' ');
            }
            in_ws = true;
        } else {
            out.push(c);
            in_ws = false;
        }
    }
    out
}

/// Try to parse a marker starting at `start` (which holds `@`, `#`, or `~`).
/// Returns the produced item and the index just past it, or `None` when the
/// marker does not form a record and should stay literal text.
fn parse_marker(
    stream: &[PosChar],
    start: usize,
    ast: &mut RecipeAst,
) -> Result<Option<(StepItem, usize)>, ParseError> {
    let marker = stream[start].c;

    // Long form: scan for `{` before any other marker character or a line
    // join; punctuation is allowed inside multi-word names.
    let mut j = start + 1;
    while j < stream.len() {
        let pc = stream[j];
        if pc.join || MARKER_CHARS.contains(&pc.c) {
            break;
        }
        j += 1;
    }

    if j < stream.len() && stream[j].c == '{' {
        let name: String = stream[start + 1..j].iter().map(|p| p.c).collect();
        let name = nfc(name.trim());
        let (inner, next) = read_braced(stream, j)?;
        if marker != '~' && name.is_empty() {
            return Ok(None);
        }
        return Ok(build_record(marker, name, Some(inner), ast).map(|item| (item, next)));
    }

    // Single-word form: capture up to whitespace or sentence punctuation.
    if marker == '~' {
        // Timers always carry a braced duration.
        return Ok(None);
    }
    let mut k = start + 1;
    while k < stream.len() {
        let pc = stream[k];
        if pc.c.is_whitespace() || WORD_STOPS.contains(&pc.c) || MARKER_CHARS.contains(&pc.c) {
            break;
        }
        k += 1;
    }
    let word: String = stream[start + 1..k].iter().map(|p| p.c).collect();
    if word.is_empty() {
        return Ok(None);
    }
    Ok(build_record(marker, nfc(&word), None, ast).map(|item| (item, k)))
}

/// Read a `{...}` block starting at the `{`. Returns the inner text and the
/// index just past the `}`. The block must close on the same source line.
fn read_braced(stream: &[PosChar], open: usize) -> Result<(String, usize), ParseError> {
    let mut inner = String::new();
    let mut i = open + 1;
    while i < stream.len() {
        let pc = stream[i];
        if pc.join {
            break;
        }
        if pc.c == '}' {
            return Ok((inner, i + 1));
        }
        inner.push(pc.c);
        i += 1;
    }
    Err(ParseError::UnbalancedBrace {
        line: stream[open].line,
        column: stream[open].col,
    })
}

fn build_record(
    marker: char,
    name: String,
    braced: Option<String>,
    ast: &mut RecipeAst,
) -> Option<StepItem> {
    match marker {
        '@' => {
            let (amount, unit) = match braced {
                Some(inner) => split_quantity(&inner),
                None => (None, None),
            };
            ast.ingredients.push(IngredientRecord { name, amount, unit });
            Some(StepItem::IngredientRef(ast.ingredients.len() - 1))
        }
        '#' => {
            let quantity = braced
                .as_deref()
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(Quantity::from_raw);
            ast.cookwares.push(CookwareRecord { name, quantity });
            Some(StepItem::CookwareRef(ast.cookwares.len() - 1))
        }
        '~' => {
            let inner = braced?;
            let (amount, unit) = split_quantity(&inner);
            let duration = amount?;
            ast.timers.push(TimerRecord {
                name: Some(name).filter(|n| !n.is_empty()),
                duration,
                unit: unit.unwrap_or_default(),
            });
            Some(StepItem::TimerRef(ast.timers.len() - 1))
        }
        _ => unreachable!(),
    }
}

/// Split `{...}` content on the first `%`. An empty amount with a unit makes
/// no sense, so such content is kept whole as a free-text amount.
fn split_quantity(inner: &str) -> (Option<Quantity>, Option<String>) {
    match inner.split_once('%') {
        Some((amount, unit)) => {
            let amount = amount.trim();
            let unit = unit.trim();
            if amount.is_empty() {
                let whole = inner.trim();
                if whole.is_empty() {
                    (None, None)
                } else {
                    (Some(Quantity::from_raw(whole)), None)
                }
            } else {
                (
                    Some(Quantity::from_raw(amount)),
                    Some(nfc(unit)).filter(|u| !u.is_empty()),
                )
            }
        }
        None => {
            let amount = inner.trim();
            if amount.is_empty() {
                (None, None)
            } else {
                (Some(Quantity::from_raw(amount)), None)
            }
        }
    }
}
