//! End-to-end CLI behavior: subcommands, output shapes, and exit codes
//! (0 success, 1 validation/operation failure, 2 configuration errors).

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cookeval"))
}

fn manifest() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus/manifest.jsonl")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn validate_accepts_corpus_references() {
    let reference = manifest().parent().unwrap().join("soups-01/reference.cook");
    let output = bin().arg("validate").arg(&reference).output().unwrap();
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("ok"));
}

#[test]
fn validate_rejects_malformed_files_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cook");
    std::fs::write(&bad, "Mash @syrup{1/2").unwrap();
    let output = bin().arg("validate").arg(&bad).output().unwrap();
    assert_eq!(output.status.code(), Some(1));
    assert!(stdout(&output).contains("line 1"));
    assert!(stdout(&output).contains("unbalanced"));
}

#[test]
fn validate_on_a_missing_file_is_a_config_error() {
    let output = bin().arg("validate").arg("/nonexistent.cook").output().unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn score_of_identical_files_prints_perfect_metrics() {
    let reference = manifest().parent().unwrap().join("baking-01/reference.cook");
    let output = bin()
        .args(["score", "--ref"])
        .arg(&reference)
        .args(["--hyp"])
        .arg(&reference)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert!(text.contains("wer 0.0000"), "{text}");
    assert!(text.contains("rouge_l 1.0000"), "{text}");
    assert!(text.contains("ter 0.0000"), "{text}");
    assert!(text.contains("ingredient_score 1"), "{text}");
    assert!(text.contains("parse_ok true"), "{text}");
}

#[test]
fn score_emits_parseable_json() {
    let dir = tempfile::tempdir().unwrap();
    let reference = dir.path().join("r.cook");
    let hypothesis = dir.path().join("h.cook");
    std::fs::write(&reference, "Add @salt and @pepper now").unwrap();
    std::fs::write(&hypothesis, "Add @salt now").unwrap();
    let output = bin()
        .args(["score", "--ref"])
        .arg(&reference)
        .args(["--hyp"])
        .arg(&hypothesis)
        .args(["--format", "json"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(report["ingredient_score"], 0);
    assert_eq!(report["missing_ingredients"][0], "pepper");
}

#[test]
fn score_exact_ter_handles_short_sequences() {
    let dir = tempfile::tempdir().unwrap();
    let reference = dir.path().join("r.cook");
    let hypothesis = dir.path().join("h.cook");
    std::fs::write(&reference, "one two three four").unwrap();
    std::fs::write(&hypothesis, "two three four one").unwrap();
    let output = bin()
        .args(["score", "--ref"])
        .arg(&reference)
        .args(["--hyp"])
        .arg(&hypothesis)
        .args(["--exact-ter"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    // one block shift out of five reference tokens (4 words + boundary)
    assert!(stdout(&output).contains("ter 0.2000"), "{}", stdout(&output));
}

#[test]
fn convert_with_echo_backend_prints_the_reference() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    std::fs::write(
        &config,
        serde_json::json!({
            "model_id": "echo-mock",
            "variant": "method_plus_ingredients",
            "strategy": "zero_shot",
            "backend": "echo"
        })
        .to_string(),
    )
    .unwrap();
    let output = bin()
        .args(["convert", "--manifest"])
        .arg(manifest())
        .args(["--sample", "lunches-03", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let expected = std::fs::read_to_string(
        manifest().parent().unwrap().join("lunches-03/reference.cook"),
    )
    .unwrap();
    assert_eq!(stdout(&output).trim(), expected.trim());
}

#[test]
fn convert_with_unknown_sample_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    std::fs::write(
        &config,
        r#"{"model_id": "m", "variant": "method_only", "strategy": "zero_shot", "backend": "echo"}"#,
    )
    .unwrap();
    let output = bin()
        .args(["convert", "--manifest"])
        .arg(manifest())
        .args(["--sample", "no-such-id", "--config"])
        .arg(&config)
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn run_with_malformed_grid_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("grid.json");
    std::fs::write(&grid, "{not json").unwrap();
    let output = bin()
        .args(["run", "--manifest"])
        .arg(manifest())
        .args(["--grid"])
        .arg(&grid)
        .args(["--out"])
        .arg(dir.path().join("out"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    let output = bin().arg("no-such-subcommand").output().unwrap();
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn derive_ingredients_prints_the_comma_list() {
    let reference = manifest().parent().unwrap().join("dinners-01/reference.cook");
    let output = bin().arg("derive-ingredients").arg(&reference).output().unwrap();
    assert_eq!(output.status.code(), Some(0));
    assert_eq!(
        stdout(&output).trim(),
        "floury potatoes, butter, warm milk, pork sausages, salt, ground black pepper"
    );
}

#[test]
fn derive_ingredients_on_malformed_input_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cook");
    std::fs::write(&bad, "@oops{").unwrap();
    let output = bin().arg("derive-ingredients").arg(&bad).output().unwrap();
    assert_eq!(output.status.code(), Some(1));
}
