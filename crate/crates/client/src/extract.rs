//! Pull the Cooklang document out of a raw model completion.
//!
//! Models wrap output in code fences, label lines, or a short preamble
//! despite the return-only directive. Stripping is conservative: a leading
//! line is dropped only when it carries no Cooklang syntax and reads like a
//! label (ends with a colon), so genuine marker-free step text survives.

/// Extract Cooklang text from a raw completion. May return an empty string;
/// the conversion layer turns that into an error.
pub fn extract_cooklang(raw: &str) -> String {
    let mut text = raw.trim();

    // Fenced block: take the interior of the first fence.
    if let Some(rest) = text.strip_prefix("```") {
        let body = match rest.split_once('\n') {
            Some((_lang, body)) => body,
            None => "",
        };
        text = match body.find("\n```") {
            Some(end) => &body[..end],
            None => body.strip_suffix("```").unwrap_or(body),
        };
        text = text.trim();
    }

    let mut lines: Vec<&str> = text.lines().collect();

    // Drop leading chatter: blank lines and syntax-free label lines.
    while let Some(first) = lines.first() {
        let line = first.trim();
        if line.is_empty() {
            lines.remove(0);
            continue;
        }
        if line.eq_ignore_ascii_case("cooklang:") {
            lines.remove(0);
            continue;
        }
        if !has_cooklang_syntax(line) && line.ends_with(':') {
            lines.remove(0);
            continue;
        }
        break;
    }

    // An inline label on the first content line: "cooklang: @salt ...".
    if let Some(first) = lines.first_mut() {
        let lower = first.trim_start().to_ascii_lowercase();
        if lower.starts_with("cooklang:") {
            let idx = first.to_ascii_lowercase().find("cooklang:").unwrap();
            *first = first[idx + "cooklang:".len()..].trim_start();
        }
    }

    lines.join("\n").trim().to_string()
}

fn has_cooklang_syntax(line: &str) -> bool {
    line.contains('@')
        || line.contains('#')
        || line.contains('~')
        || line.trim_start().starts_with(">>")
        || line.contains("--")
        || line.contains("[-")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_text_is_identity() {
        assert_eq!(extract_cooklang("@salt"), "@salt");
    }

    #[test]
    fn fences_are_stripped() {
        assert_eq!(extract_cooklang("```\n@salt\n```"), "@salt");
        assert_eq!(extract_cooklang("```cooklang\n@salt\n```"), "@salt");
        // unterminated fence still yields the body
        assert_eq!(extract_cooklang("```\n@salt"), "@salt");
    }

    #[test]
    fn label_lines_are_dropped() {
        assert_eq!(extract_cooklang("cooklang:\n@salt"), "@salt");
        assert_eq!(extract_cooklang("Cooklang: @salt"), "@salt");
    }

    #[test]
    fn reasoning_prelude_is_dropped() {
        assert_eq!(extract_cooklang("Here is the recipe:\n@salt"), "@salt");
        assert_eq!(
            extract_cooklang("Sure! The converted recipe is:\n\nMash @potato{2}"),
            "Mash @potato{2}"
        );
    }

    #[test]
    fn marker_free_step_text_survives() {
        let recipe = "Preheat the oven to 200 degrees.\n\nAdd the @flour{200%g} and mix.";
        assert_eq!(extract_cooklang(recipe), recipe);
    }

    #[test]
    fn plain_sentences_without_colons_survive() {
        let text = "Boil water.\nServe hot.";
        assert_eq!(extract_cooklang(text), text);
    }

    #[test]
    fn empty_input_stays_empty() {
        assert_eq!(extract_cooklang(""), "");
        assert_eq!(extract_cooklang("```\n```"), "");
    }
}
