//! Plain-text rendering of reports (`--format text`).

use grind_core::corpus::CorpusSummary;
use grind_core::interpret::SentimentRanking;

use crate::{TrainReport, TuneReport};

pub fn stats(summary: &CorpusSummary, unigrams: &[(String, usize)], bigrams: &[(String, usize)]) {
    println!("reviews:              {}", summary.count);
    println!("dropped (no score):   {}", summary.dropped_missing_score);
    println!("dropped (empty text): {}", summary.dropped_empty_text);
    if let Some(stats) = &summary.stats {
        println!();
        println!(
            "scores: mean {:.3}  min {:.1}  q1 {:.3}  median {:.3}  q3 {:.3}  max {:.1}",
            stats.mean, stats.min, stats.q1, stats.median, stats.q3, stats.max
        );
    }
    print_term_table("top unigrams", unigrams);
    print_term_table("top bigrams", bigrams);
}

fn print_term_table(title: &str, terms: &[(String, usize)]) {
    println!();
    println!("{title}:");
    let width = terms.iter().map(|(t, _)| t.len()).max().unwrap_or(0).max(4);
    for (term, count) in terms {
        println!("  {term:<width$}  {count}");
    }
}

pub fn train(report: &TrainReport) {
    println!("model:         {}", report.model);
    println!("orders:        {:?}", report.params.orders);
    if let Some(c) = report.params.c {
        println!("C:             {c}");
    }
    if let Some(k) = report.params.k {
        println!("k:             {k}");
    }
    println!("seed:          {}", report.seed);
    println!("test fraction: {}", report.test_fraction);
    println!("train size:    {}", report.n_train);
    println!("test size:     {}", report.n_test);
    println!("test MSE:      {:.6}", report.mse);
    println!("test MAE:      {:.6}", report.mae);
    println!("model file:    {}", report.model_path);
    if let Some(examples) = &report.examples {
        println!();
        println!("{:>6}  {:>6}  text", "true", "pred");
        for row in examples {
            let shortened: String = if row.text.len() > 60 {
                format!("{}...", &row.text[..57])
            } else {
                row.text.clone()
            };
            println!(
                "{:>6.1}  {:>6}  {shortened}",
                row.true_score, row.pred_rounded
            );
        }
    }
}

pub fn tune(report: &TuneReport) {
    println!("model:         {}", report.model);
    println!("orders:        {:?}", report.params.orders);
    println!("folds:         {}", report.cv.kf);
    println!("seed:          {}", report.seed);
    println!("train size:    {}", report.n_train);
    println!();
    println!(
        "{:>12}  {:>12}  {:>12}  per-fold MSE",
        "value", "mean MSE", "std MSE"
    );
    for point in &report.cv.points {
        let folds: Vec<String> = point.fold_mse.iter().map(|v| format!("{v:.4}")).collect();
        println!(
            "{:>12}  {:>12.6}  {:>12.6}  [{}]",
            point.value,
            point.mean_mse,
            point.std_mse,
            folds.join(", ")
        );
    }
    println!();
    println!("selected:      {}", report.cv.selected);
    if let Some(path) = &report.model_path {
        println!("model file:    {path}");
    }
    if let (Some(mse), Some(mae)) = (report.test_mse, report.test_mae) {
        println!("test MSE:      {mse:.6}");
        println!("test MAE:      {mae:.6}");
    }
}

pub fn predictions(rows: &[(&str, f64, i64)]) {
    let width = rows
        .iter()
        .map(|(id, _, _)| id.len())
        .max()
        .unwrap_or(2)
        .max(2);
    println!("{:>width$}  {:>12}  {:>8}", "id", "pred", "rounded");
    for (id, pred, rounded) in rows {
        println!("{id:>width$}  {pred:>12.4}  {rounded:>8}");
    }
}

pub fn ranking(ranking: &SentimentRanking, impact: bool) {
    let label = if impact { "impact" } else { "weight" };
    println!("strongest positive terms ({label}):");
    print_side(&ranking.positive);
    println!();
    println!("strongest negative terms ({label}):");
    print_side(&ranking.negative);
}

fn print_side(side: &[(String, f64)]) {
    if side.is_empty() {
        println!("  (none)");
        return;
    }
    let width = side.iter().map(|(t, _)| t.len()).max().unwrap_or(4).max(4);
    for (term, weight) in side {
        println!("  {term:<width$}  {weight:>12.6}");
    }
}
