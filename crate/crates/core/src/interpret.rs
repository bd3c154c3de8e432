//! Coefficient-based sentiment rankings and example prediction tables.
//!
//! A positive weight means an occurrence of the term pushes the predicted
//! score up; a negative weight pulls it down. Rankings use the raw weights;
//! an impact-weighted variant (weight times mean feature value) is available
//! as an explicitly labeled extension.

use serde::{Deserialize, Serialize};

use crate::corpus::Review;
use crate::regress::LinearModel;

/// Strongest positive and negative terms of a linear model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentimentRanking {
    /// `(term, weight)` sorted by weight descending; all weights positive.
    pub positive: Vec<(String, f64)>,
    /// `(term, weight)` sorted by weight ascending; all weights negative.
    pub negative: Vec<(String, f64)>,
    /// Requested entries per side (either side may have fewer).
    pub k: usize,
}

/// Ranks the top-k terms by signed weight on each side.
///
/// Zero weights are excluded; ties break lexicographically ascending.
pub fn top_terms(model: &LinearModel, k: usize) -> SentimentRanking {
    rank_by(model, k, |_, w| w)
}

// rank_by exists so the plain and impact-weighted rankings share the
// sort/tie logic; value_of computes the score a term is ranked by.
fn rank_by(
    model: &LinearModel,
    k: usize,
    value_of: impl Fn(usize, f64) -> f64,
) -> SentimentRanking {
    let vocab = &model.recipe().vocabulary;
    let mut positive: Vec<(String, f64)> = Vec::new();
    let mut negative: Vec<(String, f64)> = Vec::new();
    for (j, &w) in model.weights().iter().enumerate() {
        let v = value_of(j, w);
        if v > 0.0 {
            positive.push((vocab.term(j).to_string(), v));
        } else if v < 0.0 {
            negative.push((vocab.term(j).to_string(), v));
        }
    }
    positive.sort_by(|a, b| {
        b.1.partial_cmp(&a.1)
            .expect("weights are finite")
            .then_with(|| a.0.cmp(&b.0))
    });
    negative.sort_by(|a, b| {
        a.1.partial_cmp(&b.1)
            .expect("weights are finite")
            .then_with(|| a.0.cmp(&b.0))
    });
    positive.truncate(k);
    negative.truncate(k);
    SentimentRanking {
        positive,
        negative,
        k,
    }
}

/// Impact-weighted variant: terms are ranked by `weight_j * mean_z_j`, the
/// average contribution of the term over the training set.
pub fn top_terms_by_impact(
    model: &LinearModel,
    k: usize,
    feature_means: &[f64],
) -> SentimentRanking {
    rank_by(model, k, |j, w| w * feature_means[j])
}

/// Rounds a prediction half-away-from-zero to the nearest integer.
pub fn round_score(pred: f64) -> i64 {
    pred.round() as i64
}

/// One row of an example prediction table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExampleRow {
    pub text: String,
    pub true_score: f64,
    pub pred: f64,
    pub pred_rounded: i64,
}

/// Predicts each review and reports truth as stored alongside the rounded
/// prediction. Reviews without a score are skipped (the table is meant for
/// cleaned corpora).
pub fn example_table(model: &LinearModel, reviews: &[Review]) -> Vec<ExampleRow> {
    reviews
        .iter()
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
