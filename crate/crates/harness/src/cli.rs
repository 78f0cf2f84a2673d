//! Command-line front door.
//!
//! Exit codes: 0 on success, 1 when validation or the operation itself
//! fails, 2 on configuration and usage errors.

use crate::grid::{convert_sample, run_grid, ConvertConfigSpec, GridSpec, HarnessError, RunOptions};
use crate::manifest::RunManifest;
use crate::report::{emit_report, fmt4, render_markdown, ReportFormat};
use clap::{Parser, Subcommand, ValueEnum};
use cookeval_client::TranscriptStore;
use cookeval_core::{
    derive_ingredients, load_corpus, score_sample, validate, Corpus, CorpusError, MetricReport,
    ScoreOptions, WerTokenization,
};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "cookeval",
    version,
    about = "Convert plain-text recipes to Cooklang with LLM backends and score the results"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a Cooklang file parses; exits 1 with diagnostics otherwise
    Validate { file: PathBuf },
    /// Score a hypothesis file against a reference file
    Score {
        /// Reference .cook file
        #[arg(long = "ref")]
        reference: PathBuf,
        /// Hypothesis .cook file
        #[arg(long = "hyp")]
        hypothesis: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
        /// Exhaustive edit-plus-shift search instead of the greedy one
        /// (token sequences of at most 8)
        #[arg(long)]
        exact_ter: bool,
        /// Token stream for the word error rate
        #[arg(long, value_enum, default_value_t = WerTokens::Words)]
        wer_tokens: WerTokens,
    },
    /// Convert one corpus sample and print the candidate Cooklang
    Convert {
        #[arg(long)]
        manifest: PathBuf,
        /// Sample id from the corpus manifest
        #[arg(long)]
        sample: String,
        /// JSON config file (model, variant, strategy, backend)
        #[arg(long)]
        config: PathBuf,
        /// Transcript cache directory (hits replay, misses record)
        #[arg(long)]
        replay: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run a model × strategy × variant grid and write reports
    Run {
        #[arg(long)]
        manifest: PathBuf,
        /// JSON grid file
        #[arg(long)]
        grid: PathBuf,
        /// Report output directory
        #[arg(long)]
        out: PathBuf,
        /// Overrides the grid's split seed
        #[arg(long)]
        seed: Option<u64>,
        /// Transcript cache directory (hits replay, misses record)
        #[arg(long)]
        replay: Option<PathBuf>,
        /// Summary formats to write; the long CSV and per-sample JSON are
        /// always emitted
        #[arg(long, value_enum)]
        format: Vec<ReportFormatArg>,
    },
    /// Print the comma-separated ingredient list derived from a .cook file
    DeriveIngredients { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum WerTokens {
    Words,
    Cooklang,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormatArg {
    Md,
    Csv,
    Json,
}

impl From<ReportFormatArg> for ReportFormat {
    fn from(arg: ReportFormatArg) -> Self {
        match arg {
            ReportFormatArg::Md => ReportFormat::Markdown,
            ReportFormatArg::Csv => ReportFormat::Csv,
            ReportFormatArg::Json => ReportFormat::Json,
        }
    }
}

struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    fn config(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    fn failure(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<HarnessError> for CliError {
    fn from(e: HarnessError) -> Self {
        let code = match &e {
            HarnessError::Corpus(_)
            | HarnessError::Split(_)
            | HarnessError::Template(_)
            | HarnessError::Grid(_)
            | HarnessError::Io(_) => 2,
            HarnessError::Backend(b) if !b.is_retryable() => 2,
            _ => 1,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl From<CorpusError> for CliError {
    fn from(e: CorpusError) -> Self {
        CliError::config(e.to_string())
    }
}

pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Validate { file } => cmd_validate(&file),
        Command::Score {
            reference,
            hypothesis,
            format,
            exact_ter,
            wer_tokens,
        } => cmd_score(&reference, &hypothesis, format, exact_ter, wer_tokens),
        Command::Convert {
            manifest,
            sample,
            config,
            replay,
            seed,
        } => cmd_convert(&manifest, &sample, &config, replay, seed),
        Command::Run {
            manifest,
            grid,
            out,
            seed,
            replay,
            format,
        } => cmd_run(&manifest, &grid, &out, seed, replay, format),
        Command::DeriveIngredients { file } => cmd_derive(&file),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))
}

fn cmd_validate(file: &Path) -> Result<i32, CliError> {
    let source = read(file)?;
    let outcome = validate(&source);
    if outcome.is_ok() {
        println!("{}: ok", file.display());
        Ok(0)
    } else {
        for diagnostic in outcome.diagnostics() {
            println!("{}: {diagnostic}", file.display());
        }
        Ok(1)
    }
}

fn cmd_score(
    reference: &Path,
    hypothesis: &Path,
    format: OutputFormat,
    exact_ter: bool,
    wer_tokens: WerTokens,
) -> Result<i32, CliError> {
    let ref_text = read(reference)?;
    let hyp_text = read(hypothesis)?;
    let options = ScoreOptions {
        wer_tokenization: match wer_tokens {
            WerTokens::Words => WerTokenization::Words,
            WerTokens::Cooklang => WerTokenization::CooklangElements,
        },
    };
    let sample_id = hypothesis
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "sample".into());

    let mut report = score_sample(&sample_id, &ref_text, &hyp_text, &options)
        .map_err(|e| CliError::failure(e.to_string()))?;
    if exact_ter {
        use cookeval_core::{ter_exact, tokenize, SourceKind};
        let ref_tokens = tokenize(&ref_text, SourceKind::Reference);
        let hyp_tokens = tokenize(&hyp_text, SourceKind::Hypothesis);
        report.ter =
            ter_exact(&ref_tokens, &hyp_tokens).map_err(|e| CliError::failure(e.to_string()))?;
    }

    match format {
        OutputFormat::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("reports serialize")
        ),
        OutputFormat::Text => print_report_text(&report),
    }
    Ok(0)
}

fn print_report_text(report: &MetricReport) {
    println!("wer {}", fmt4(&report.wer));
    println!("rouge_l {}", fmt4(&report.rouge_l));
    println!("ter {}", fmt4(&report.ter));
    println!("ingredient_score {}", report.ingredient_score);
    println!("unit_score {}", report.unit_score);
    println!("amount_score {}", report.amount_score);
    println!("parse_ok {}", report.parse_ok);
    println!("missing_ingredients {}", report.missing_ingredients.join("; "));
    println!("extra_ingredients {}", report.extra_ingredients.join("; "));
}

fn load_corpus_with_warnings(manifest: &Path) -> Result<Corpus, CliError> {
    let corpus = load_corpus(manifest)?;
    for warning in &corpus.warnings {
        eprintln!("warning: {warning}");
    }
    Ok(corpus)
}

fn cmd_convert(
    manifest: &Path,
    sample: &str,
    config: &Path,
    replay: Option<PathBuf>,
    seed: Option<u64>,
) -> Result<i32, CliError> {
    let corpus = load_corpus_with_warnings(manifest)?;
    let spec = ConvertConfigSpec::load(config)?;
    let options = RunOptions {
        seed,
        replay_dir: replay,
    };
    let result = convert_sample(&corpus, &spec, sample, &options)?;
    println!("{}", result.candidate_cook);
    eprintln!(
        "retries {} latency_ms {} tokens {}",
        result.retries,
        result.latency.as_millis(),
        result.token_usage.total_tokens
    );
    Ok(0)
}

fn cmd_run(
    manifest: &Path,
    grid_path: &Path,
    out: &Path,
    seed: Option<u64>,
    replay: Option<PathBuf>,
    formats: Vec<ReportFormatArg>,
) -> Result<i32, CliError> {
    let corpus = load_corpus_with_warnings(manifest)?;
    let grid = GridSpec::load(grid_path)?;
    let options = RunOptions {
        seed,
        replay_dir: replay.clone(),
    };

    let reports = run_grid(&corpus, &grid, &options)?;

    let formats: Vec<ReportFormat> = if formats.is_empty() {
        ReportFormat::ALL.to_vec()
    } else {
        formats.into_iter().map(ReportFormat::from).collect()
    };
    emit_report(&reports, out, &formats).map_err(|e| CliError::config(e.to_string()))?;

    let transcript_digest = match &replay {
        Some(dir) => Some(
            TranscriptStore::open(dir)
                .and_then(|s| s.digest())
                .map_err(|e| CliError::config(format!("transcript cache: {e}")))?,
        ),
        None => None,
    };
    let split_seed = seed.unwrap_or(grid.options.seed);
    RunManifest::new(&corpus, &grid, split_seed, transcript_digest)
        .write(out)
        .map_err(|e| CliError::config(format!("cannot write manifest: {e}")))?;

    print!("{}", render_markdown(&reports));
    eprintln!(
        "run complete: {} configurations over {} test samples -> {}",
        reports.len(),
        reports.first().map(|r| r.n).unwrap_or(0),
        out.display()
    );
    Ok(0)
}

fn cmd_derive(file: &Path) -> Result<i32, CliError> {
    let source = read(file)?;
    let derived = derive_ingredients(&source).map_err(|e| CliError::failure(e.to_string()))?;
    println!("{derived}");
    Ok(0)
}
