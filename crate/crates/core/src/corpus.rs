//! Review corpus loading, cleaning, tokenization, and summary statistics.
//!
//! A corpus is a list of [`Review`]s: raw text paired with a 0–100 quality
//! score. Cleaning drops records without a usable score and records whose
//! text is empty; tokenization lowercases, splits on runs of non-alphabetic
//! characters, removes stop words, and expands the surviving tokens into
//! unigram/bigram terms.

use std::collections::{BTreeSet, HashMap};
use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// Default English stop word list bundled with the crate.
const BUNDLED_STOPWORDS: &str = include_str!("../data/stopwords_en.txt");

/// One scored review document.
///
/// `score` is `None` when the source record had no score (or a null one);
/// after [`clean`] every surviving review has a finite score in `[0, 100]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Review {
    /// Stable identifier, unique within one loaded corpus.
    pub id: String,
    /// Raw review text as read from the input file.
    pub text: String,
    pub score: Option<f64>,
}

/// A review reduced to its ordered list of n-gram terms.
///
/// Terms are lowercase and whitespace-trimmed; a bigram term is exactly two
/// unigrams joined by a single space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TokenizedReview {
    pub id: String,
    pub terms: Vec<String>,
}

/// Distribution statistics of the surviving scores.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScoreStats {
    pub mean: f64,
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
}

/// Cleaning report plus score distribution for a corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusSummary {
    /// Number of reviews surviving the cleaning rules.
    pub count: usize,
    /// Records dropped because the score was absent, non-finite, or outside `[0, 100]`.
    pub dropped_missing_score: usize,
    /// Records dropped because the text was empty after trimming.
    pub dropped_empty_text: usize,
    /// Present whenever `count > 0`.
    #[serde(flatten)]
    pub stats: Option<ScoreStats>,
}

/// Supported corpus file formats.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    /// RFC-4180 CSV with a header containing `text` and `score` columns.
    Csv,
    /// One JSON object per line with keys `text` (string) and `score` (number or null).
    Jsonl,
}

impl std::str::FromStr for InputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(InputFormat::Csv),
            "jsonl" => Ok(InputFormat::Jsonl),
            other => Err(Error::UnknownFormat(other.to_string())),
        }
    }
}

/// Lowercase stop word set.
///
/// The bundled default is the standard English list shipped under
/// `data/stopwords_en.txt`; custom lists are plain UTF-8 files with one word
/// per line and `#` comment lines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Stopwords(BTreeSet<String>);

impl Stopwords {
    /// The bundled standard English list.
    pub fn english() -> Self {
        Self::parse(BUNDLED_STOPWORDS)
    }

    /// An empty set (no tokens removed).
    pub fn none() -> Self {
        Stopwords(BTreeSet::new())
    }

    pub fn from_words<I: IntoIterator<Item = S>, S: AsRef<str>>(words: I) -> Self {
        Stopwords(
            words
                .into_iter()
                .map(|w| w.as_ref().trim().to_lowercase())
                .filter(|w| !w.is_empty())
                .collect(),
        )
    }

    /// Parses the one-word-per-line format. Blank lines and lines starting
    /// with `#` are ignored; words are lowercased.
    pub fn parse(text: &str) -> Self {
        Self::from_words(text.lines().filter(|l| !l.trim_start().starts_with('#')))
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let mut text = String::new();
        File::open(path)
            .and_then(|mut f| f.read_to_string(&mut text))
            .map_err(|source| Error::Io {
                path: path.to_path_buf(),
                source,
            })?;
        Ok(Self::parse(&text))
    }

    pub fn contains(&self, token: &str) -> bool {
        self.0.contains(token)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }

    /// SHA-256 of the sorted word list joined by `\n`, as lowercase hex.
    /// Recorded in model files so a list mismatch is detectable.
    pub fn sha256_hex(&self) -> String {
        let mut hasher = Sha256::new();
        let mut first = true;
        for word in &self.0 {
            if !first {
                hasher.update(b"\n");
            }
            hasher.update(word.as_bytes());
            first = false;
        }
        let digest = hasher.finalize();
        let mut hex = String::with_capacity(64);
        for byte in digest {
            hex.push_str(&format!("{byte:02x}"));
        }
        hex
    }
}

/// Loads reviews from `path` in the declared format, one [`Review`] per
/// record in file order. No cleaning is applied; ids are the 1-based record
/// ordinals.
pub fn load_reviews(path: &Path, format: InputFormat) -> Result<Vec<Review>> {
    let file = File::open(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    match format {
        InputFormat::Jsonl => load_jsonl(path, file),
        InputFormat::Csv => load_csv(path, file),
    }
}

fn load_jsonl(path: &Path, file: File) -> Result<Vec<Review>> {
    let reader = BufReader::new(file);
    let mut reviews = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let value: serde_json::Value =
            serde_json::from_str(&line).map_err(|e| parse_error(path, line_no, e.to_string()))?;
        let obj = value
            .as_object()
            .ok_or_else(|| parse_error(path, line_no, "expected a JSON object".into()))?;
        let text = obj
            .get("text")
            .and_then(|v| v.as_str())
            .ok_or_else(|| parse_error(path, line_no, "missing string field `text`".into()))?
            .to_string();
        let score = match obj.get("score") {
            None | Some(serde_json::Value::Null) => None,
            Some(serde_json::Value::Number(n)) => n.as_f64(),
            Some(other) => {
                return Err(parse_error(
                    path,
                    line_no,
                    format!("field `score` must be a number or null, got {other}"),
                ))
            }
        };
        reviews.push(Review {
            id: (reviews.len() + 1).to_string(),
            text,
            score,
        });
    }
    Ok(reviews)
}

fn load_csv(path: &Path, file: File) -> Result<Vec<Review>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(file);
    let headers = reader
        .headers()
        .map_err(|e| parse_error(path, 1, e.to_string()))?
        .clone();
    let text_col = headers.iter().position(|h| h == "text");
    let score_col = headers.iter().position(|h| h == "score");
    let (text_col, score_col) = match (text_col, score_col) {
        (Some(t), Some(s)) => (t, s),
        _ => {
            return Err(parse_error(
                path,
                1,
                "header must contain `text` and `score` columns".into(),
            ))
        }
    };

    let mut reviews = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e
                .position()
                .map(|p| p.line() as usize)
                .unwrap_or(reviews.len() + 2);
            parse_error(path, line, e.to_string())
        })?;
        let line = record
            .position()
            .map(|p| p.line() as usize)
            .unwrap_or(reviews.len() + 2);
        let text = record
            .get(text_col)
            .ok_or_else(|| parse_error(path, line, "missing `text` field".into()))?
            .to_string();
        let raw_score = record
            .get(score_col)
            .ok_or_else(|| parse_error(path, line, "missing `score` field".into()))?
            .trim();
        let score = if raw_score.is_empty() {
            None
        } else {
            Some(
                raw_score
                    .parse::<f64>()
                    .map_err(|_| parse_error(path, line, format!("invalid score `{raw_score}`")))?,
            )
        };
        reviews.push(Review {
            id: (reviews.len() + 1).to_string(),
            text,
            score,
        });
    }
    Ok(reviews)
}

fn parse_error(path: &Path, line: usize, message: String) -> Error {
    Error::Parse {
        path: PathBuf::from(path),
        line,
        message,
    }
}

/// Applies the cleaning rules and reports what was dropped.
///
/// A review survives when its score is finite and within `[0, 100]` and its
/// text is non-empty after trimming. An unusable score is counted as
/// `dropped_missing_score` (checked first when both rules fail); surviving
/// order is preserved. Cleaning is total and idempotent.
pub fn clean(reviews: &[Review]) -> (Vec<Review>, CorpusSummary) {
    let mut survivors = Vec::with_capacity(reviews.len());
    let mut dropped_missing_score = 0usize;
    let mut dropped_empty_text = 0usize;

    for review in reviews {
        let score_ok =
            matches!(review.score, Some(s) if s.is_finite() && (0.0..=100.0).contains(&s));
        if !score_ok {
            dropped_missing_score += 1;
            continue;
        }
        if review.text.trim().is_empty() {
            dropped_empty_text += 1;
            continue;
        }
        survivors.push(review.clone());
    }

    let mut scores: Vec<f64> = survivors.iter().filter_map(|r| r.score).collect();
    scores.sort_by(|a, b| a.partial_cmp(b).expect("cleaned scores are finite"));
    let stats = if scores.is_empty() {
        None
    } else {
        let mean = scores.iter().sum::<f64>() / scores.len() as f64;
        Some(ScoreStats {
            mean,
            min: scores[0],
            q1: quantile(&scores, 0.25),
            median: quantile(&scores, 0.5),
            q3: quantile(&scores, 0.75),
            max: scores[scores.len() - 1],
        })
    };

    let summary = CorpusSummary {
        count: survivors.len(),
        dropped_missing_score,
        dropped_empty_text,
        stats,
    };
    (survivors, summary)
}

/// Quantile by linear interpolation between closest ranks.
///
/// For sorted values `x[0..n]` and `q` in `[0, 1]`, the rank is
/// `h = q * (n - 1)` and the result interpolates between `x[floor(h)]` and
/// `x[floor(h) + 1]`.
///
/// # Panics
///
/// Panics when `values` is empty.
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    assert!(!sorted.is_empty(), "quantile of empty slice");
    let h = q.clamp(0.0, 1.0) * (sorted.len() - 1) as f64;
    let lo = h.floor() as usize;
    if lo + 1 >= sorted.len() {
        return sorted[sorted.len() - 1];
    }
    sorted[lo] + (h - lo as f64) * (sorted[lo + 1] - sorted[lo])
}

/// Lowercases `text`, splits it on every maximal run of non-alphabetic
/// characters, and removes stop words. Order is preserved.
pub fn tokenize(text: &str, stopwords: &Stopwords) -> Vec<String> {
    text.to_lowercase()
        .split(|c: char| !c.is_alphabetic())
        .filter(|t| !t.is_empty() && !stopwords.contains(t))
        .map(str::to_string)
        .collect()
}

/// Expands tokens into contiguous n-gram terms for each requested order.
///
/// Orders outside `{1, 2}` are rejected. All n-grams of the lower order come
/// first; bigrams join their constituents with a single space.
pub fn extract_ngrams(tokens: &[String], orders: &[usize]) -> Result<Vec<String>> {
    let mut want_unigrams = false;
    let mut want_bigrams = false;
    for &order in orders {
        match order {
            1 => want_unigrams = true,
            2 => want_bigrams = true,
            other => return Err(Error::NgramOrder(other)),
        }
    }

    let mut terms = Vec::new();
    if want_unigrams {
        terms.extend(tokens.iter().cloned());
    }
    if want_bigrams {
        terms.extend(tokens.windows(2).map(|w| format!("{} {}", w[0], w[1])));
    }
    Ok(terms)
}

/// Total corpus counts of the most frequent terms.
///
/// Terms are ranked by count descending with ties broken lexicographically
/// ascending; at most `top_k` entries are returned.
pub fn term_frequency_report(tokenized: &[TokenizedReview], top_k: usize) -> Vec<(String, usize)> {
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for doc in tokenized {
        for term in &doc.terms {
            *counts.entry(term.as_str()).or_insert(0) += 1;
        }
    }
    let mut ranked: Vec<(String, usize)> = counts
        .into_iter()
        .map(|(term, count)| (term.to_string(), count))
        .collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ranked.truncate(top_k);
    ranked
}

/// Tokenizes a batch of reviews into n-gram term lists under one recipe.
pub fn tokenize_reviews(
    reviews: &[Review],
    stopwords: &Stopwords,
    orders: &[usize],
) -> Result<Vec<TokenizedReview>> {
    reviews
        .iter()
        .map(|r| {
            let tokens = tokenize(&r.text, stopwords);
            Ok(TokenizedReview {
                id: r.id.clone(),
                terms: extract_ngrams(&tokens, orders)?,
            })
        })
        .collect()
}
