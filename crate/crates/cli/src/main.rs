//! `grind`: train, tune, and apply review-score regression models from the
//! command line.

mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use grind_core::corpus::{
    clean, load_reviews, term_frequency_report, tokenize_reviews, CorpusSummary, InputFormat,
    Review, Stopwords, TokenizedReview,
};
use grind_core::evaluate::{eval_report, grid_search, kfold, split, CvResult, TunedFamily};
use grind_core::interpret::{
    round_score, top_terms, top_terms_by_impact, ExampleRow, SentimentRanking,
};
use grind_core::model::{self, Hyperparameters, Model, ModelSpec, TrainMeta};
use grind_core::Error as CoreError;

/// Environment variable that overrides the bundled stop word list.
const STOPWORDS_ENV: &str = "GRIND_STOPWORDS";

const RIDGE_DEFAULT_GRID: [f64; 7] = [0.0001, 0.001, 0.01, 0.1, 1.0, 10.0, 20.0];
const KNN_DEFAULT_GRID: [f64; 6] = [1.0, 11.0, 21.0, 51.0, 101.0, 201.0];

#[derive(Parser)]
#[command(
    name = "grind",
    version,
    about = "Predict 0-100 review scores from review text",
    long_about = "Predict 0-100 review scores from review text.\n\n\
        Pipeline: reviews are cleaned (records without a usable score or with \
        empty text are dropped), lowercased, split on runs of non-alphabetic \
        characters, stop-word filtered, and expanded into unigram/bigram \
        terms. Models regress scores on raw term counts or TF-IDF weights.\n\n\
        Corpus statistics use linear interpolation between closest ranks for \
        quartiles. All randomness is seeded and reproducible across platforms.\n\n\
        Exit codes: 0 success, 2 usage error, 3 data error, 4 numeric failure."
)]
struct Cli {
    /// Report format on stdout
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    /// Suppress wall-clock timestamps so outputs are byte-reproducible
    #[arg(long, global = true)]
    no_timestamp: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliInputFormat {
    Csv,
    Jsonl,
}

impl From<CliInputFormat> for InputFormat {
    fn from(f: CliInputFormat) -> Self {
        match f {
            CliInputFormat::Csv => InputFormat::Csv,
            CliInputFormat::Jsonl => InputFormat::Jsonl,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Naive,
    OlsBow,
    OlsTfidf,
    RidgeTfidf,
    KnnTfidf,
}

#[derive(Clone, Copy, ValueEnum)]
enum TunableFamily {
    RidgeTfidf,
    KnnTfidf,
}

#[derive(Clone, Copy, ValueEnum)]
enum PredictInputFormat {
    /// One raw review text per line
    Lines,
    /// One JSON object per line with a `text` field (optional `id`)
    Jsonl,
}

#[derive(Args)]
struct CorpusArgs {
    /// Review corpus file
    #[arg(long)]
    input: PathBuf,

    /// Corpus file format
    #[arg(long, value_enum)]
    input_format: CliInputFormat,

    /// Stop word file (one lowercase word per line, `#` comments); defaults
    /// to $GRIND_STOPWORDS or the bundled English list
    #[arg(long)]
    stopwords: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Cleaning report, score distribution, and most frequent terms
    Stats {
        #[command(flatten)]
        corpus: CorpusArgs,

        /// Entries per term ranking
        #[arg(long, default_value_t = 50)]
        top_k: usize,
    },

    /// Train one model family and report held-out MSE/MAE
    Train {
        #[command(flatten)]
        corpus: CorpusArgs,

        /// Model family
        #[arg(long, value_enum)]
        model: Family,

        /// N-gram orders: `1` or `1,2`
        #[arg(long, default_value = "1")]
        orders: String,

        /// Ridge strength (required for ridge-tfidf); larger C means less shrinkage
        #[arg(long)]
        c: Option<f64>,

        /// Neighbor count (required for knn-tfidf)
        #[arg(long)]
        k: Option<usize>,

        #[arg(long, default_value_t = 42)]
        seed: u64,

        /// Held-out share of the corpus
        #[arg(long, default_value_t = 0.2)]
        test_fraction: f64,

        /// Where to write the model file
        #[arg(long)]
        out: PathBuf,

        /// Include this many example predictions from the test split
        #[arg(long, default_value_t = 0)]
        examples: usize,
    },

    /// Cross-validated hyperparameter search on the training split
    Tune {
        #[command(flatten)]
        corpus: CorpusArgs,

        /// Model family to tune
        #[arg(long, value_enum)]
        model: TunableFamily,

        /// N-gram orders: `1` or `1,2`
        #[arg(long, default_value = "1")]
        orders: String,

        /// Comma-separated hyperparameter grid; defaults to the built-in
        /// grid of the family
        #[arg(long)]
        grid: Option<String>,

        /// Number of cross-validation folds
        #[arg(long, default_value_t = 5)]
        kf: usize,

        #[arg(long, default_value_t = 42)]
        seed: u64,

        /// Held-out share excluded from tuning
        #[arg(long, default_value_t = 0.2)]
        test_fraction: f64,

        /// Retrain on the full training split with the selected value and
        /// save the model here
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Score texts with a saved model
    Predict {
        /// Trained model file
        #[arg(long)]
        model_file: PathBuf,

        /// Texts to score
        #[arg(long)]
        input: PathBuf,

        #[arg(long, value_enum, default_value_t = PredictInputFormat::Lines)]
        input_format: PredictInputFormat,

        /// Clamp displayed predictions into [0, 100]
        #[arg(long)]
        clip: bool,
    },

    /// Strongest positive and negative terms of a linear model
    Explain {
        /// Trained model file
        #[arg(long)]
        model_file: PathBuf,

        /// Terms per side
        #[arg(long, default_value_t = 20)]
        k: usize,

        /// Rank by weight times mean training feature value instead of raw
        /// weight (extension; not the default reading of coefficients)
        #[arg(long)]
        impact: bool,
    },
}

enum CliError {
    Usage(String),
    Core(CoreError),
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Core(e)) => {
            eprintln!("error: {e}");
            let code = match e {
                CoreError::NonConvergence { .. } | CoreError::DimensionMismatch(_) => 4,
                _ => 3,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let format = cli.format;
    let timestamp = if cli.no_timestamp {
        None
    } else {
        Some(chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true))
    };
    match cli.command {
        Command::Stats { corpus, top_k } => cmd_stats(corpus, top_k, format),
        Command::Train {
            corpus,
            model,
            orders,
            c,
            k,
            seed,
            test_fraction,
            out,
            examples,
        } => cmd_train(
            corpus,
            model,
            &orders,
            c,
            k,
            seed,
            test_fraction,
            &out,
            examples,
            format,
            timestamp,
        ),
        Command::Tune {
            corpus,
            model,
            orders,
            grid,
            kf,
            seed,
            test_fraction,
            out,
        } => cmd_tune(
            corpus,
            model,
            &orders,
            grid.as_deref(),
            kf,
            seed,
            test_fraction,
            out.as_deref(),
            format,
            timestamp,
        ),
        Command::Predict {
            model_file,
            input,
            input_format,
            clip,
        } => cmd_predict(&model_file, &input, input_format, clip, format),
        Command::Explain {
            model_file,
            k,
            impact,
        } => cmd_explain(&model_file, k, impact, format),
    }
}

fn resolve_stopwords(flag: Option<&Path>) -> Result<Stopwords, CliError> {
    if let Some(path) = flag {
        return Ok(Stopwords::from_file(path)?);
    }
    if let Ok(path) = std::env::var(STOPWORDS_ENV) {
        if !path.is_empty() {
            return Ok(Stopwords::from_file(Path::new(&path))?);
        }
    }
    Ok(Stopwords::english())
}

fn parse_orders(s: &str) -> Result<Vec<usize>, CliError> {
    let mut orders: Vec<usize> = Vec::new();
    for part in s.split(',') {
        let n: usize = part
            .trim()
            .parse()
            .map_err(|_| usage(format!("invalid n-gram order `{part}` (use `1` or `1,2`)")))?;
        if n != 1 && n != 2 {
            return Err(usage(format!(
                "n-gram order {n} is not supported (orders must be 1 or 2)"
            )));
        }
        if !orders.contains(&n) {
            orders.push(n);
        }
    }
    if orders.is_empty() {
        return Err(usage("no n-gram orders given"));
    }
    orders.sort_unstable();
    Ok(orders)
}

fn parse_grid(s: &str) -> Result<Vec<f64>, CliError> {
    let mut grid = Vec::new();
    for part in s.split(',') {
        let v: f64 = part
            .trim()
            .parse()
            .map_err(|_| usage(format!("invalid grid value `{part}`")))?;
        if !v.is_finite() {
            return Err(usage(format!("grid value `{part}` is not finite")));
        }
        grid.push(v);
    }
    if grid.is_empty() {
        return Err(usage("empty hyperparameter grid"));
    }
    Ok(grid)
}

/// Loaded, cleaned, and tokenized corpus with extracted scores.
struct PreparedCorpus {
    reviews: Vec<Review>,
    summary: CorpusSummary,
    docs: Vec<TokenizedReview>,
    scores: Vec<f64>,
    stopwords: Stopwords,
}

fn prepare_corpus(args: &CorpusArgs, orders: &[usize]) -> Result<PreparedCorpus, CliError> {
    let stopwords = resolve_stopwords(args.stopwords.as_deref())?;
    let raw = load_reviews(&args.input, args.input_format.into())?;
    let (reviews, summary) = clean(&raw);
    if reviews.is_empty() {
        return Err(CoreError::EmptyCorpus.into());
    }
    let docs = tokenize_reviews(&reviews, &stopwords, orders)?;
    let scores = reviews
        .iter()
        .map(|r| r.score.expect("cleaned reviews have scores"))
        .collect();
    Ok(PreparedCorpus {
        reviews,
        summary,
        docs,
        scores,
        stopwords,
    })
}

fn print_json<T: Serialize>(value: &T) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("reports serialize")
    );
}

// ---------------------------------------------------------------------------
// stats

#[derive(Serialize)]
struct StatsReport {
    summary: CorpusSummary,
    top_unigrams: Vec<(String, usize)>,
    top_bigrams: Vec<(String, usize)>,
}

fn cmd_stats(corpus: CorpusArgs, top_k: usize, format: OutputFormat) -> Result<(), CliError> {
    if top_k == 0 {
        return Err(usage("--top-k must be at least 1"));
    }
    let prepared = prepare_corpus(&corpus, &[1])?;
    let unigram_docs = prepared.docs;
    let bigram_docs = tokenize_reviews(&prepared.reviews, &prepared.stopwords, &[2])?;

    let report = StatsReport {
        summary: prepared.summary,
        top_unigrams: term_frequency_report(&unigram_docs, top_k),
        top_bigrams: term_frequency_report(&bigram_docs, top_k),
    };
    match format {
        OutputFormat::Json => print_json(&report),
        OutputFormat::Text => {
            render::stats(&report.summary, &report.top_unigrams, &report.top_bigrams)
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// train

#[derive(Serialize)]
struct ParamsOut {
    orders: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<usize>,
}

#[derive(Serialize)]
struct TrainReport {
    model: String,
    params: ParamsOut,
    seed: u64,
    test_fraction: f64,
    n_train: usize,
    n_test: usize,
    mse: f64,
    mae: f64,
    model_path: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    examples: Option<Vec<ExampleRow>>,
}

struct SplitCorpus {
    train_docs: Vec<TokenizedReview>,
    train_scores: Vec<f64>,
    test_docs: Vec<TokenizedReview>,
    test_scores: Vec<f64>,
    test_reviews: Vec<Review>,
}

fn split_corpus(
    prepared: &PreparedCorpus,
    test_fraction: f64,
    seed: u64,
) -> Result<SplitCorpus, CliError> {
    let ids: Vec<String> = prepared.docs.iter().map(|d| d.id.clone()).collect();
    let plan = split(&ids, test_fraction, seed)?;
    let in_test: std::collections::HashSet<&str> =
        plan.test_ids.iter().map(String::as_str).collect();

    let mut out = SplitCorpus {
        train_docs: Vec::new(),
        train_scores: Vec::new(),
        test_docs: Vec::new(),
        test_scores: Vec::new(),
        test_reviews: Vec::new(),
    };
    for ((doc, &score), review) in prepared
        .docs
        .iter()
        .zip(&prepared.scores)
        .zip(&prepared.reviews)
    {
        if in_test.contains(doc.id.as_str()) {
            out.test_docs.push(doc.clone());
            out.test_scores.push(score);
            out.test_reviews.push(review.clone());
        } else {
            out.train_docs.push(doc.clone());
            out.train_scores.push(score);
        }
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn cmd_train(
    corpus: CorpusArgs,
    family: Family,
    orders: &str,
    c: Option<f64>,
    k: Option<usize>,
    seed: u64,
    test_fraction: f64,
    out: &Path,
    examples: usize,
    format: OutputFormat,
    timestamp: Option<String>,
) -> Result<(), CliError> {
    let orders = parse_orders(orders)?;
    let spec = match family {
        Family::Naive => ModelSpec::Naive,
        Family::OlsBow => ModelSpec::OlsBow,
        Family::OlsTfidf => ModelSpec::OlsTfidf,
        Family::RidgeTfidf => {
            let c = c.ok_or_else(|| usage("ridge-tfidf requires --c"))?;
            if c <= 0.0 || !c.is_finite() {
                return Err(usage(format!("--c must be positive and finite, got {c}")));
            }
            ModelSpec::RidgeTfidf { c }
        }
        Family::KnnTfidf => {
            let k = k.ok_or_else(|| usage("knn-tfidf requires --k"))?;
            if k == 0 {
                return Err(usage("--k must be at least 1"));
            }
            ModelSpec::KnnTfidf { k }
        }
    };
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(usage(format!(
            "--test-fraction must lie strictly between 0 and 1, got {test_fraction}"
        )));
    }

    let prepared = prepare_corpus(&corpus, &orders)?;
    let parts = split_corpus(&prepared, test_fraction, seed)?;

    let model = model::train(
        spec,
        &parts.train_docs,
        &parts.train_scores,
        &orders,
        &prepared.stopwords,
    )?;

    let preds: Vec<f64> = parts
        .test_docs
        .iter()
        .map(|d| model.predict_terms(&d.terms))
        .collect();
    let eval = eval_report(&parts.test_scores, &preds)?;

    let meta = TrainMeta {
        seed,
        n_train: parts.train_docs.len(),
        test_fraction: Some(test_fraction),
        timestamp: timestamp.clone(),
        hyperparameters: Hyperparameters {
            c: match spec {
                ModelSpec::RidgeTfidf { c } => Some(c),
                _ => None,
            },
            k: match spec {
                ModelSpec::KnnTfidf { k } => Some(k),
                _ => None,
            },
        },
    };
    model::save(out, &model, meta.clone())?;

    let example_rows = if examples > 0 {
        Some(example_rows(&model, &parts.test_reviews, examples))
    } else {
        None
    };

    let report = TrainReport {
        model: spec.name().to_string(),
        params: ParamsOut {
            orders,
            c: meta.hyperparameters.c,
            k: meta.hyperparameters.k,
        },
        seed,
        test_fraction,
        n_train: parts.train_docs.len(),
        n_test: parts.test_docs.len(),
        mse: eval.mse,
        mae: eval.mae,
        model_path: out.display().to_string(),
        timestamp,
        examples: example_rows,
    };
    match format {
        OutputFormat::Json => print_json(&report),
        OutputFormat::Text => render::train(&report),
    }
    Ok(())
}

fn example_rows(model: &Model, reviews: &[Review], limit: usize) -> Vec<ExampleRow> {
    reviews
        .iter()
        .take(limit)
        .filter_map(|r| {
            let true_score = r.score?;
            let pred = model.predict_text(&r.text);
            Some(ExampleRow {
                text: r.text.clone(),
                true_score,
                pred,
                pred_rounded: round_score(pred),
            })
        })
        .collect()
}

// ---------------------------------------------------------------------------
// tune

#[derive(Serialize)]
struct TuneReport {
    model: String,
    params: ParamsOut,
    seed: u64,
    test_fraction: f64,
    n_train: usize,
    cv: CvResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    model_path: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    test_mse: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    test_mae: Option<f64>,
}

#[allow(clippy::too_many_arguments)]
fn cmd_tune(
    corpus: CorpusArgs,
    family: TunableFamily,
    orders: &str,
    grid: Option<&str>,
    kf: usize,
    seed: u64,
    test_fraction: f64,
    out: Option<&Path>,
    format: OutputFormat,
    timestamp: Option<String>,
) -> Result<(), CliError> {
    let orders = parse_orders(orders)?;
    let tuned_family = match family {
        TunableFamily::RidgeTfidf => TunedFamily::RidgeTfidf,
        TunableFamily::KnnTfidf => TunedFamily::KnnTfidf,
    };
    let grid: Vec<f64> = match grid {
        Some(s) => parse_grid(s)?,
        None => match tuned_family {
            TunedFamily::RidgeTfidf => RIDGE_DEFAULT_GRID.to_vec(),
            TunedFamily::KnnTfidf => KNN_DEFAULT_GRID.to_vec(),
        },
    };
    match tuned_family {
        TunedFamily::RidgeTfidf => {
            if let Some(&bad) = grid.iter().find(|&&v| v <= 0.0) {
                return Err(usage(format!(
                    "ridge grid values must be positive, got {bad}"
                )));
            }
        }
        TunedFamily::KnnTfidf => {
            if let Some(&bad) = grid.iter().find(|&&v| v < 1.0 || v.fract() != 0.0) {
                return Err(usage(format!(
                    "k grid values must be positive integers, got {bad}"
                )));
            }
        }
    }
    if kf < 2 {
        return Err(usage(format!("--kf must be at least 2, got {kf}")));
    }
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(usage(format!(
            "--test-fraction must lie strictly between 0 and 1, got {test_fraction}"
        )));
    }

    let prepared = prepare_corpus(&corpus, &orders)?;
    let parts = split_corpus(&prepared, test_fraction, seed)?;

    let train_ids: Vec<String> = parts.train_docs.iter().map(|d| d.id.clone()).collect();
    let folds = kfold(&train_ids, kf, seed)?;
    let cv = grid_search(
        tuned_family,
        &grid,
        &folds,
        &parts.train_docs,
        &parts.train_scores,
    )?;

    let mut report = TuneReport {
        model: match tuned_family {
            TunedFamily::RidgeTfidf => "ridge-tfidf".to_string(),
            TunedFamily::KnnTfidf => "knn-tfidf".to_string(),
        },
        params: ParamsOut {
            orders: orders.clone(),
            c: None,
            k: None,
        },
        seed,
        test_fraction,
        n_train: parts.train_docs.len(),
        cv,
        timestamp: timestamp.clone(),
        model_path: None,
        test_mse: None,
        test_mae: None,
    };

    if let Some(out) = out {
        let spec = match tuned_family {
            TunedFamily::RidgeTfidf => ModelSpec::RidgeTfidf {
                c: report.cv.selected,
            },
            TunedFamily::KnnTfidf => ModelSpec::KnnTfidf {
                k: report.cv.selected as usize,
            },
        };
        let model = model::train(
            spec,
            &parts.train_docs,
            &parts.train_scores,
            &orders,
            &prepared.stopwords,
        )?;
        let preds: Vec<f64> = parts
            .test_docs
            .iter()
            .map(|d| model.predict_terms(&d.terms))
            .collect();
        let eval = eval_report(&parts.test_scores, &preds)?;
        let meta = TrainMeta {
            seed,
            n_train: parts.train_docs.len(),
            test_fraction: Some(test_fraction),
            timestamp,
            hyperparameters: Hyperparameters {
                c: match spec {
                    ModelSpec::RidgeTfidf { c } => Some(c),
                    _ => None,
                },
                k: match spec {
                    ModelSpec::KnnTfidf { k } => Some(k),
                    _ => None,
                },
            },
        };
        model::save(out, &model, meta.clone())?;
        report.params.c = meta.hyperparameters.c;
        report.params.k = meta.hyperparameters.k;
        report.model_path = Some(out.display().to_string());
        report.test_mse = Some(eval.mse);
        report.test_mae = Some(eval.mae);
    }

    match format {
        OutputFormat::Json => print_json(&report),
        OutputFormat::Text => render::tune(&report),
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// predict

#[derive(Serialize)]
struct Prediction {
    id: String,
    pred: f64,
    pred_rounded: i64,
}

fn read_texts(path: &Path, format: PredictInputFormat) -> Result<Vec<(String, String)>, CliError> {
    let content = fs::read_to_string(path).map_err(|source| CoreError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let mut texts = Vec::new();
    match format {
        PredictInputFormat::Lines => {
            for (i, line) in content.lines().enumerate() {
                texts.push(((i + 1).to_string(), line.to_string()));
            }
        }
        PredictInputFormat::Jsonl => {
            for (i, line) in content.lines().enumerate() {
                if line.trim().is_empty() {
                    continue;
                }
                let value: serde_json::Value =
                    serde_json::from_str(line).map_err(|e| CoreError::Parse {
                        path: path.to_path_buf(),
                        line: i + 1,
                        message: e.to_string(),
                    })?;
                let text = value
                    .get("text")
                    .and_then(|v| v.as_str())
                    .ok_or_else(|| CoreError::Parse {
                        path: path.to_path_buf(),
                        line: i + 1,
                        message: "missing string field `text`".into(),
                    })?
                    .to_string();
                let id = value
                    .get("id")
                    .and_then(|v| v.as_str())
                    .map(str::to_string)
                    .unwrap_or_else(|| (texts.len() + 1).to_string());
                texts.push((id, text));
            }
        }
    }
    Ok(texts)
}

fn cmd_predict(
    model_file: &Path,
    input: &Path,
    input_format: PredictInputFormat,
    clip: bool,
    format: OutputFormat,
) -> Result<(), CliError> {
    let (model, _meta) = model::load(model_file)?;
    let texts = read_texts(input, input_format)?;
    let predictions: Vec<Prediction> = texts
        .into_iter()
        .map(|(id, text)| {
            let mut pred = model.predict_text(&text);
            if clip {
                pred = pred.clamp(0.0, 100.0);
            }
            Prediction {
                id,
                pred,
                pred_rounded: round_score(pred),
            }
        })
        .collect();

    match format {
        OutputFormat::Json => {
            for p in &predictions {
                println!(
                    "{}",
                    serde_json::to_string(p).expect("predictions serialize")
                );
            }
        }
        OutputFormat::Text => render::predictions(
            &predictions
                .iter()
                .map(|p| (p.id.as_str(), p.pred, p.pred_rounded))
                .collect::<Vec<_>>(),
        ),
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// explain

fn cmd_explain(
    model_file: &Path,
    k: usize,
    impact: bool,
    format: OutputFormat,
) -> Result<(), CliError> {
    if k == 0 {
        return Err(usage("--k must be at least 1"));
    }
    let (model, _meta) = model::load(model_file)?;
    let linear = model.linear().ok_or_else(|| {
        CoreError::ModelFile(format!(
            "model has no coefficients ({} models cannot be explained)",
            model.kind_name()
        ))
    })?;
    let ranking: SentimentRanking = if impact {
        let means = model
            .feature_means()
            .ok_or_else(|| CoreError::ModelFile("model file lacks feature means".into()))?;
        top_terms_by_impact(linear, k, means)
    } else {
        top_terms(linear, k)
    };
    match format {
        OutputFormat::Json => print_json(&ranking),
        OutputFormat::Text => render::ranking(&ranking, impact),
    }
    Ok(())
}
