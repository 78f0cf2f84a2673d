//! Canonical Cooklang serialization.
//!
//! The output is deterministic: metadata first, then one step per paragraph
//! with each comment emitted as its own paragraph before the step it is
//! anchored to. Ingredients render as `@name{amount%unit}`, with the braces
//! omitted only for single-word, quantity-free names. Line endings are LF.

use crate::ast::*;

/// Render an AST to canonical Cooklang text. Equal ASTs render to
/// byte-identical text, and re-parsing the output reproduces the AST.
pub fn render(ast: &RecipeAst) -> String {
    let mut paragraphs: Vec<String> = Vec::new();

    if !ast.metadata.is_empty() {
        let block: Vec<String> = ast
            .metadata
            .iter()
            .map(|(k, v)| format!(">> {k}: {v}"))
            .collect();
        paragraphs.push(block.join("\n"));
    }

    for idx in 0..=ast.steps.len() {
        for comment in ast.comments.iter().filter(|c| c.anchor == idx) {
            paragraphs.push(render_comment(comment));
        }
        if let Some(step) = ast.steps.get(idx) {
            paragraphs.push(render_step(step, ast));
        }
    }

    if paragraphs.is_empty() {
        return String::new();
    }
    let mut out = paragraphs.join("\n\n");
    out.push('\n');
    out
}

fn render_comment(comment: &Comment) -> String {
    match comment.kind {
        CommentKind::Line => format!("-- {}", comment.text),
        CommentKind::Block => format!("[- {} -]", comment.text),
    }
}

fn render_step(step: &Step, ast: &RecipeAst) -> String {
    let mut out = String::new();
    for item in &step.items {
        match item {
            StepItem::Text(t) => out.push_str(t),
            StepItem::IngredientRef(i) => out.push_str(&render_ingredient(&ast.ingredients[*i])),
            StepItem::CookwareRef(i) => out.push_str(&render_cookware(&ast.cookwares[*i])),
            StepItem::TimerRef(i) => out.push_str(&render_timer(&ast.timers[*i])),
        }
    }
    out
}

pub fn render_ingredient(ing: &IngredientRecord) -> String {
    if ing.amount.is_none() && is_single_word(&ing.name) {
        return format!("@{}", ing.name);
    }
    let inner = match (&ing.amount, &ing.unit) {
        (Some(q), Some(u)) => format!("{}%{u}", q.raw),
        (Some(q), None) => q.raw.clone(),
        (None, _) => String::new(),
    };
    format!("@{}{{{inner}}}", ing.name)
}

pub fn render_cookware(cw: &CookwareRecord) -> String {
    if cw.quantity.is_none() && is_single_word(&cw.name) {
        return format!("#{}", cw.name);
    }
    let inner = cw.quantity.as_ref().map(|q| q.raw.clone()).unwrap_or_default();
    format!("#{}{{{inner}}}", cw.name)
}

pub fn render_timer(timer: &TimerRecord) -> String {
    let name = timer.name.as_deref().unwrap_or_default();
    if timer.unit.is_empty() {
        format!("~{name}{{{}}}", timer.duration.raw)
    } else {
        format!("~{name}{{{}%{}}}", timer.duration.raw, timer.unit)
    }
}

// A name the single-word parse rule would capture whole.
fn is_single_word(name: &str) -> bool {
    !name.is_empty()
        && !name.chars().any(|c| {
            c.is_whitespace() || matches!(c, ',' | '.' | ';' | ':' | '!' | '?' | '@' | '#' | '~' | '{' | '}')
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;

    #[test]
    fn bare_ingredient_is_a_fixed_point() {
        let ast = parse("@salt").unwrap();
        assert_eq!(render(&ast), "@salt\n");
    }

    #[test]
    fn multi_word_names_keep_their_braces() {
        assert_eq!(
            render_ingredient(&IngredientRecord::new("ground black pepper")),
            "@ground black pepper{}"
        );
    }

    #[test]
    fn quantity_free_braces_are_dropped() {
        let ast = parse("@salt{}").unwrap();
        assert_eq!(render(&ast), "@salt\n");
    }

    #[test]
    fn quantity_rendering() {
        assert_eq!(
            render_ingredient(&IngredientRecord::new("syrup").with_amount("1/2").with_unit("tbsp")),
            "@syrup{1/2%tbsp}"
        );
        assert_eq!(
            render_ingredient(&IngredientRecord::new("potato").with_amount("2")),
            "@potato{2}"
        );
    }

    #[test]
    fn timer_rendering() {
        let ast = parse("boil ~eggs{3%minutes} then rest ~{5}").unwrap();
        assert_eq!(render(&ast), "boil ~eggs{3%minutes} then rest ~{5}\n");
    }

    #[test]
    fn metadata_and_comments_take_canonical_positions() {
        let src = "mix well -- thoroughly\n>> servings: 2\n\nbake";
        let ast = parse(src).unwrap();
        assert_eq!(render(&ast), ">> servings: 2\n\n-- thoroughly\n\nmix well\n\nbake\n");
    }

    #[test]
    fn empty_ast_renders_empty() {
        assert_eq!(render(&RecipeAst::default()), "");
    }

    #[test]
    fn rendering_is_stable_under_reparse() {
        let src = ">> source: test\n\nMash @potato{2} in the #pot.\n-- watch the heat\n\nAdd @ground black pepper{} and ~{10%minutes} rest.";
        let once = render(&parse(src).unwrap());
        let twice = render(&parse(&once).unwrap());
        assert_eq!(once, twice);
    }
}
