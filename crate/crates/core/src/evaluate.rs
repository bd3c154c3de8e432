//! Train/test splitting, k-fold cross-validation, error metrics, and
//! hyperparameter grid search.
//!
//! All shuffling is a Fisher–Yates pass driven by the raw ChaCha20 keystream
//! (`j = next_u64() mod (i + 1)`), so split and fold assignments are
//! identical on every platform for a given seed. Nothing depends on a
//! library's sampling internals.

use std::collections::{HashMap, HashSet};

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::corpus::TokenizedReview;
use crate::error::{Error, Result};
use crate::featurize::{
    build_vocabulary, count_matrix, count_vector, fit_idf, tfidf_matrix, tfidf_transform,
};
use crate::regress::{fit_knn, fit_ridge};

/// Deterministic in-place Fisher–Yates shuffle seeded with `seed`.
pub fn shuffle_seeded<T>(items: &mut [T], seed: u64) {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    for i in (1..items.len()).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        items.swap(i, j);
    }
}

/// A reproducible train/test partition of review ids.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitPlan {
    pub train_ids: Vec<String>,
    pub test_ids: Vec<String>,
    pub seed: u64,
    pub test_fraction: f64,
}

/// Shuffles the ids under `seed` and takes the first `ceil(fraction * n)` as
/// the test set; the rest train.
pub fn split(ids: &[String], test_fraction: f64, seed: u64) -> Result<SplitPlan> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(Error::InvalidArgument(format!(
            "test fraction must lie strictly between 0 and 1, got {test_fraction}"
        )));
    }
    if ids.len() < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 reviews to split, got {}",
            ids.len()
        )));
    }
    let mut shuffled: Vec<String> = ids.to_vec();
    shuffle_seeded(&mut shuffled, seed);
    let n_test = (test_fraction * ids.len() as f64).ceil() as usize;
    if n_test == 0 || n_test >= ids.len() {
        return Err(Error::InvalidArgument(format!(
            "test fraction {test_fraction} leaves an empty side of the split for {} reviews",
            ids.len()
        )));
    }
    let train_ids = shuffled.split_off(n_test);
    Ok(SplitPlan {
        train_ids,
        test_ids: shuffled,
        seed,
        test_fraction,
    })
}

/// A partition of the training ids into `kf` folds of near-equal size.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FoldPlan {
    pub kf: usize,
    pub folds: Vec<Vec<String>>,
    pub seed: u64,
}

/// Shuffles the training ids under `seed` and deals them round-robin into
/// `kf` folds, so fold sizes differ by at most one.
pub fn kfold(train_ids: &[String], kf: usize, seed: u64) -> Result<FoldPlan> {
    if kf < 2 || kf > train_ids.len() {
        return Err(Error::InvalidArgument(format!(
            "kf must satisfy 2 <= kf <= {} training ids, got {kf}",
            train_ids.len()
        )));
    }
    let mut shuffled: Vec<String> = train_ids.to_vec();
    shuffle_seeded(&mut shuffled, seed);
    let mut folds: Vec<Vec<String>> = vec![Vec::new(); kf];
    for (i, id) in shuffled.into_iter().enumerate() {
        folds[i % kf].push(id);
    }
    Ok(FoldPlan { kf, folds, seed })
}

/// Held-out error metrics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub mse: f64,
    pub mae: f64,
    pub n: usize,
}

fn check_lengths(y_true: &[f64], y_pred: &[f64]) -> Result<()> {
    if y_true.len() != y_pred.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} true scores but {} predictions",
            y_true.len(),
            y_pred.len()
        )));
    }
    if y_true.is_empty() {
        return Err(Error::InvalidArgument(
            "cannot evaluate on an empty set".into(),
        ));
    }
    Ok(())
}

/// Mean squared error `(1/n) Σ (y_i - ŷ_i)²`.
pub fn mse(y_true: &[f64], y_pred: &[f64]) -> Result<f64> {
    check_lengths(y_true, y_pred)?;
    let total: f64 = y_true
        .iter()
        .zip(y_pred)
        .map(|(t, p)| (t - p) * (t - p))
        .sum();
    Ok(total / y_true.len() as f64)
}

/// Mean absolute error `(1/n) Σ |y_i - ŷ_i|`.
pub fn mae(y_true: &[f64], y_pred: &[f64]) -> Result<f64> {
    check_lengths(y_true, y_pred)?;
    let total: f64 = y_true.iter().zip(y_pred).map(|(t, p)| (t - p).abs()).sum();
    Ok(total / y_true.len() as f64)
}

/// Both metrics at once.
pub fn eval_report(y_true: &[f64], y_pred: &[f64]) -> Result<EvalReport> {
    Ok(EvalReport {
        mse: mse(y_true, y_pred)?,
        mae: mae(y_true, y_pred)?,
        n: y_true.len(),
    })
}

/// Model family a grid search can tune.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TunedFamily {
    RidgeTfidf,
    KnnTfidf,
}

/// Cross-validation outcome for one grid value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub value: f64,
    pub fold_mse: Vec<f64>,
    pub mean_mse: f64,
    pub std_mse: f64,
}

/// Full grid-search result: per-value fold errors plus the selected value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CvResult {
    pub family: TunedFamily,
    pub kf: usize,
    pub seed: u64,
    pub points: Vec<GridPoint>,
    pub selected: f64,
}

/// Sample standard deviation (n-1 denominator); zero for a single value.
fn sample_std(values: &[f64], mean: f64) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let ss: f64 = values.iter().map(|v| (v - mean) * (v - mean)).sum();
    (ss / (values.len() - 1) as f64).sqrt()
}

/// Cross-validated grid search over TF-IDF ridge or k-NN models.
///
/// For every fold the vocabulary and IDF are refit on the kf−1 training
/// folds alone; the held-out fold is transformed with those and scored by
/// MSE. The selected value attains the minimum mean MSE, with exact ties
/// resolved toward stronger regularization: the smaller `C` for ridge, the
/// larger `k` for k-NN.
///
/// `docs`/`scores` are parallel arrays covering (at least) every id in the
/// fold plan; rows outside the plan are ignored, so held-out test data never
/// influences the result.
pub fn grid_search(
    family: TunedFamily,
    grid: &[f64],
    folds: &FoldPlan,
    docs: &[TokenizedReview],
    scores: &[f64],
) -> Result<CvResult> {
    if grid.is_empty() {
        return Err(Error::InvalidArgument(
            "hyperparameter grid is empty".into(),
        ));
    }
    if docs.len() != scores.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} documents but {} scores",
            docs.len(),
            scores.len()
        )));
    }
    if family == TunedFamily::KnnTfidf {
        for &g in grid {
            if g < 1.0 || g.fract() != 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "k grid values must be positive integers, got {g}"
                )));
            }
        }
    }

    let row_of: HashMap<&str, usize> = docs
        .iter()
        .enumerate()
        .map(|(i, d)| (d.id.as_str(), i))
        .collect();
    for fold in &folds.folds {
        for id in fold {
            if !row_of.contains_key(id.as_str()) {
                return Err(Error::InvalidArgument(format!(
                    "fold id `{id}` has no document"
                )));
            }
        }
    }

    let mut fold_errors: Vec<Vec<f64>> = vec![Vec::with_capacity(folds.kf); grid.len()];
    for held_out in 0..folds.kf {
        let held_ids: HashSet<&str> = folds.folds[held_out].iter().map(String::as_str).collect();
        let in_plan: HashSet<&str> = folds.folds.iter().flatten().map(String::as_str).collect();

        // training rows in document order, excluding the held-out fold and
        // anything outside the plan (e.g. a test split)
        let train_docs: Vec<&TokenizedReview> = docs
            .iter()
            .filter(|d| in_plan.contains(d.id.as_str()) && !held_ids.contains(d.id.as_str()))
            .collect();
        let train_scores: Vec<f64> = docs
            .iter()
            .enumerate()
            .filter(|(_, d)| in_plan.contains(d.id.as_str()) && !held_ids.contains(d.id.as_str()))
            .map(|(i, _)| scores[i])
            .collect();
        let owned_train: Vec<TokenizedReview> = train_docs.iter().map(|d| (*d).clone()).collect();

        let vocab = build_vocabulary(&owned_train)?;
        let counts = count_matrix(&owned_train, &vocab);
        let idf = fit_idf(&counts, &vocab)?;
        let z_train = tfidf_matrix(&counts, &idf)?;

        let mut held_rows = Vec::new();
        let mut held_scores = Vec::new();
        for (i, d) in docs.iter().enumerate() {
            if held_ids.contains(d.id.as_str()) {
                let c = count_vector(&d.terms, &vocab);
                held_rows.push(tfidf_transform(&c, &idf)?);
                held_scores.push(scores[i]);
            }
        }

        for (gi, &value) in grid.iter().enumerate() {
            let preds: Vec<f64> = match family {
                TunedFamily::RidgeTfidf => {
                    let fit = fit_ridge(&z_train, &train_scores, value).map_err(|e| {
                        Error::InvalidArgument(format!(
                            "grid value C={value}, fold {held_out}: {e}"
                        ))
                    })?;
                    held_rows.iter().map(|z| fit.predict(z)).collect()
                }
                TunedFamily::KnnTfidf => {
                    let model = fit_knn(z_train.clone(), train_scores.clone(), value as usize)
                        .map_err(|e| {
                            Error::InvalidArgument(format!(
                                "grid value k={value}, fold {held_out}: {e}"
                            ))
                        })?;
                    held_rows.iter().map(|z| model.predict(z)).collect()
                }
            };
            fold_errors[gi].push(mse(&held_scores, &preds)?);
        }
    }

    let points: Vec<GridPoint> = grid
        .iter()
        .zip(fold_errors)
        .map(|(&value, fold_mse)| {
            let mean_mse = fold_mse.iter().sum::<f64>() / fold_mse.len() as f64;
            let std_mse = sample_std(&fold_mse, mean_mse);
            GridPoint {
                value,
                fold_mse,
                mean_mse,
                std_mse,
            }
        })
        .collect();

    let selected = select_value(family, &points);
    Ok(CvResult {
        family,
        kf: folds.kf,
        seed: folds.seed,
        points,
        selected,
    })
}

/// Argmin of mean MSE; exact ties go to the smaller C (ridge) or larger k
/// (k-NN).
fn select_value(family: TunedFamily, points: &[GridPoint]) -> f64 {
    let best_mean = points
        .iter()
        .map(|p| p.mean_mse)
        .fold(f64::INFINITY, f64::min);
    let tied = points.iter().filter(|p| p.mean_mse == best_mean);
    match family {
        TunedFamily::RidgeTfidf => tied.fold(f64::INFINITY, |acc, p| acc.min(p.value)),
        TunedFamily::KnnTfidf => tied.fold(f64::NEG_INFINITY, |acc, p| acc.max(p.value)),
    }
}
