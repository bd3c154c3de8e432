//! Black-box tests of the `grind` binary: command behavior, report shapes,
//! and exit codes (0 success, 2 usage, 3 data, 4 numeric).

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn grind() -> Command {
    Command::new(env!("CARGO_BIN_EXE_grind"))
}

struct Fixture {
    _dir: tempfile::TempDir,
    root: PathBuf,
}

impl Fixture {
    fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        let root = dir.path().to_path_buf();
        Fixture { _dir: dir, root }
    }

    fn write(&self, name: &str, content: &str) -> PathBuf {
        let path = self.root.join(name);
        std::fs::write(&path, content).unwrap();
        path
    }

    fn path(&self, name: &str) -> PathBuf {
        self.root.join(name)
    }
}

const CORPUS: &str = r#"{"text":"Syrupy mouthfeel, sweet chocolate, long finish.","score":94}
{"text":"Flat and woody, bitter edge.","score":80}
{"text":"Sweet floral aroma, crisp acidity, silky body.","score":93}
{"text":"Salty, meaty, leanish mouthfeel.","score":77}
{"text":"Balanced sweet cup, chocolate notes, syrupy.","score":92}
{"text":"Harsh rubbery cup, flat aroma.","score":79}
{"text":"Buoyant mouthfeel, black currant, honey sweetness.","score":95}
{"text":"Papery and dull, short bitter finish.","score":81}
{"text":"Rich syrupy body, resonant sweet finish.","score":94}
{"text":"Thin astringent cup with char notes.","score":78}
{"text":"Juicy apricot, velvety mouthfeel, sweet finish.","score":93}
{"text":"Musty earthy notes, lean body.","score":82}
"#;

fn stdout_json(output: &Output) -> serde_json::Value {
    assert!(
        output.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is a JSON document")
}

fn train_model(fixture: &Fixture, corpus: &Path, args: &[&str], out_name: &str) -> PathBuf {
    let out = fixture.path(out_name);
    let mut cmd = grind();
    cmd.args([
        "--no-timestamp",
        "train",
        "--input",
        corpus.to_str().unwrap(),
        "--input-format",
        "jsonl",
        "--seed",
        "3",
        "--out",
        out.to_str().unwrap(),
    ]);
    cmd.args(args);
    let output = cmd.output().unwrap();
    assert!(
        output.status.success(),
        "train failed: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    out
}

#[test]
fn stats_reports_summary_and_term_rankings() {
    let fixture = Fixture::new();
    let corpus = fixture.write(
        "three.jsonl",
        "{\"text\":\"sweet cup\",\"score\":90}\n\
         {\"text\":\"bitter cup\",\"score\":94}\n\
         {\"text\":\"flat cup\",\"score\":86}\n",
    );
    let output = grind()
        .args([
            "stats",
            "--input",
            corpus.to_str().unwrap(),
            "--input-format",
            "jsonl",
        ])
        .output()
        .unwrap();
    let report = stdout_json(&output);
    assert_eq!(report["summary"]["count"], 3);
    // quartiles of [86, 90, 94] under linear rank interpolation
    assert_eq!(report["summary"]["q1"], 88.0);
    assert_eq!(report["summary"]["median"], 90.0);
    assert_eq!(report["summary"]["q3"], 92.0);
    assert_eq!(report["summary"]["mean"], 90.0);
    // "cup" appears three times and leads the unigram ranking
    assert_eq!(report["top_unigrams"][0][0], "cup");
    assert_eq!(report["top_unigrams"][0][1], 3);
    assert_eq!(report["top_bigrams"][0][1], 1);
}

#[test]
fn stats_counts_dropped_records() {
    let fixture = Fixture::new();
    let corpus = fixture.write(
        "drops.jsonl",
        "{\"text\":\"good cup\",\"score\":90}\n\
         {\"text\":\"\",\"score\":91}\n\
         {\"text\":\"fine cup\",\"score\":88}\n",
    );
    let output = grind()
        .args([
            "stats",
            "--input",
            corpus.to_str().unwrap(),
            "--input-format",
            "jsonl",
        ])
        .output()
        .unwrap();
    let report = stdout_json(&output);
    assert_eq!(report["summary"]["dropped_empty_text"], 1);
    assert_eq!(report["summary"]["count"], 2);
}

#[test]
fn stats_on_empty_corpus_is_a_data_error() {
    let fixture = Fixture::new();
    let corpus = fixture.write("empty.jsonl", "");
    let output = grind()
        .args([
            "stats",
            "--input",
            corpus.to_str().unwrap(),
            "--input-format",
            "jsonl",
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("no valid reviews"), "{stderr}");
}

#[test]
fn stats_accepts_csv_with_quoting() {
    let fixture = Fixture::new();
    let corpus = fixture.write(
        "r.csv",
        "text,score\n\"sweet, syrupy cup\",94\nbitter cup,80\n",
    );
    let output = grind()
        .args([
            "stats",
            "--input",
            corpus.to_str().unwrap(),
            "--input-format",
            "csv",
        ])
        .output()
        .unwrap();
    let report = stdout_json(&output);
    assert_eq!(report["summary"]["count"], 2);
}

#[test]
fn malformed_record_reports_line_number_and_exits_3() {
    let fixture = Fixture::new();
    let corpus = fixture.write("bad.jsonl", "{\"text\":\"ok\",\"score\":90}\nnot-json\n");
    let output = grind()
        .args([
            "stats",
            "--input",
            corpus.to_str().unwrap(),
            "--input-format",
            "jsonl",
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&output.stderr).contains("line 2"));
}

#[test]
fn train_reports_eval_and_writes_model() {
    let fixture = Fixture::new();
    let corpus = fixture.write("c.jsonl", CORPUS);
    let out = fixture.path("model.json");
    let output = grind()
        .args([
            "--no-timestamp",
            "train",
            "--input",
            corpus.to_str().unwrap(),
            "--input-format",
            "jsonl",
            "--model",
            "ridge-tfidf",
            "--c",
            "1",
            "--orders",
            "1,2",
            "--seed",
            "9",
            "--out",
            out.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    let report = stdout_json(&output);
    assert_eq!(report["model"], "ridge-tfidf");
    assert_eq!(report["params"]["c"], 1.0);
    assert_eq!(report["params"]["orders"], serde_json::json!([1, 2]));
    assert_eq!(report["seed"], 9);
    assert_eq!(report["n_train"], 9);
    assert_eq!(report["n_test"], 3);
    assert!(report["mse"].as_f64().unwrap() >= 0.0);
    assert!(report["mae"].as_f64().unwrap() >= 0.0);
    assert!(report.get("timestamp").is_none());

    let saved: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(saved["format_version"], 1);
    assert_eq!(saved["model"]["kind"], "ridge");
    assert_eq!(saved["model"]["recipe"]["feature_space"], "tfidf");
    assert_eq!(saved["metadata"]["hyperparameters"]["c"], 1.0);
}

#[test]
fn train_examples_flag_emits_rounded_test_rows() {
    let fixture = Fixture::new();
    let corpus = fixture.write("c.jsonl", CORPUS);
    let out = fixture.path("model.json");
    let output = grind()
        .args([
            "--no-timestamp",
            "train",
            "--input",
            corpus.to_str().unwrap(),
            "--input-format",
            "jsonl",
            "--model",
            "ols-tfidf",
            "--seed",
            "9",
            "--out",
            out.to_str().unwrap(),
            "--examples",
            "2",
        ])
        .output()
        .unwrap();
    let report = stdout_json(&output);
    let rows = report["examples"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    for row in rows {
        let pred = row["pred"].as_f64().unwrap();
        let rounded = row["pred_rounded"].as_f64().unwrap();
        assert!((pred - rounded).abs() <= 0.5);
        assert!(row["true_score"].as_f64().is_some());
        assert!(!row["text"].as_str().unwrap().is_empty());
    }
}

#[test]
fn train_without_required_hyperparameter_is_a_usage_error() {
    let fixture = Fixture::new();
    let corpus = fixture.write("c.jsonl", CORPUS);
    for (model, flagless) in [("knn-tfidf", "--k"), ("ridge-tfidf", "--c")] {
        let output = grind()
            .args([
                "train",
                "--input",
                corpus.to_str().unwrap(),
                "--input-format",
                "jsonl",
                "--model",
                model,
                "--out",
                fixture.path("m.json").to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert_eq!(output.status.code(), Some(2), "{model} without {flagless}");
        assert!(String::from_utf8_lossy(&output.stderr).contains(flagless));
    }
}

#[test]
fn train_naive_test_mse_equals_score_variance_about_train_mean() {
    let fixture = Fixture::new();
    let corpus = fixture.write("c.jsonl", CORPUS);
    let out = fixture.path("naive.json");
    let output = grind()
        .args([
            "--no-timestamp",
            "train",
            "--input",
            corpus.to_str().unwrap(),
            "--input-format",
            "jsonl",
            "--model",
            "naive",
            "--seed",
            "5",
            "--test-fraction",
            "0.25",
            "--out",
            out.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    let report = stdout_json(&output);

    // recompute from the model file: the saved mean plus the split plan
    let saved: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let mean = saved["model"]["mean_score"].as_f64().unwrap();

    // replicate the deterministic split through the library
    let reviews: Vec<serde_json::Value> = CORPUS
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    let ids: Vec<String> = (1..=reviews.len()).map(|i| i.to_string()).collect();
    let plan = grind_core::evaluate::split(&ids, 0.25, 5).unwrap();
    let direct: f64 = plan
        .test_ids
        .iter()
        .map(|id| {
            let idx: usize = id.parse::<usize>().unwrap() - 1;
            let y = reviews[idx]["score"].as_f64().unwrap();
            (y - mean) * (y - mean)
        })
        .sum::<f64>()
        / plan.test_ids.len() as f64;
    let reported = report["mse"].as_f64().unwrap();
    assert!(
        (reported - direct).abs() <= 1e-12,
        "cli mse {reported} vs direct {direct}"
    );
}

#[test]
fn predict_round_trips_training_texts() {
    let fixture = Fixture::new();
    let corpus = fixture.write("c.jsonl", CORPUS);
    let model = train_model(&fixture, &corpus, &["--model", "ols-tfidf"], "ols.json");

    let texts: Vec<String> = CORPUS
        .lines()
        .map(|l| {
            serde_json::from_str::<serde_json::Value>(l).unwrap()["text"]
                .as_str()
                .unwrap()
                .to_string()
        })
        .collect();
    let input = fixture.write("texts.txt", &(texts.join("\n") + "\n"));

    let run = || {
        let output = grind()
            .args([
                "predict",
                "--model-file",
                model.to_str().unwrap(),
                "--input",
                input.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert!(output.status.success());
        output.stdout
    };
    let a = run();
    let b = run();
    assert_eq!(a, b, "predictions must be deterministic");

    let lines: Vec<serde_json::Value> = String::from_utf8(a)
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines.len(), texts.len(), "one output line per input line");
    for (i, line) in lines.iter().enumerate() {
        assert_eq!(line["id"], (i + 1).to_string());
        let pred = line["pred"].as_f64().unwrap();
        let rounded = line["pred_rounded"].as_f64().unwrap();
        assert!((pred - rounded).abs() <= 0.5);
    }
}

#[test]
fn predict_on_empty_text_returns_the_intercept() {
    let fixture = Fixture::new();
    let corpus = fixture.write("c.jsonl", CORPUS);
    let model = train_model(&fixture, &corpus, &["--model", "ols-bow"], "bow.json");
    let saved: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&model).unwrap()).unwrap();
    let intercept = saved["model"]["intercept"].as_f64().unwrap();

    let input = fixture.write("texts.txt", "\n");
    let output = grind()
        .args([
            "predict",
            "--model-file",
            model.to_str().unwrap(),
            "--input",
            input.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(output.status.success());
    let line: serde_json::Value = serde_json::from_str(
        String::from_utf8_lossy(&output.stdout)
            .lines()
            .next()
            .unwrap(),
    )
    .unwrap();
    assert_eq!(line["pred"].as_f64().unwrap(), intercept);
}

#[test]
fn predict_clip_clamps_display_values() {
    let fixture = Fixture::new();
    // two-point corpus forces an extreme slope; an exaggerated text then
    // pushes the raw prediction far above 100
    let corpus = fixture.write(
        "tiny.jsonl",
        "{\"text\":\"sweet\",\"score\":100}\n\
         {\"text\":\"bitter\",\"score\":0}\n\
         {\"text\":\"sweet bitter\",\"score\":50}\n",
    );
    let model = train_model(&fixture, &corpus, &["--model", "ols-bow"], "m.json");
    let input = fixture.write("t.txt", "sweet sweet sweet sweet sweet sweet\n");

    let raw = grind()
        .args([
            "predict",
            "--model-file",
            model.to_str().unwrap(),
            "--input",
            input.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    let raw_line: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&raw.stdout).lines().next().unwrap()).unwrap();

    let clipped = grind()
        .args([
            "predict",
            "--model-file",
            model.to_str().unwrap(),
            "--input",
            input.to_str().unwrap(),
            "--clip",
        ])
        .output()
        .unwrap();
    let clip_line: serde_json::Value = serde_json::from_str(
        String::from_utf8_lossy(&clipped.stdout)
            .lines()
            .next()
            .unwrap(),
    )
    .unwrap();

    let raw_pred = raw_line["pred"].as_f64().unwrap();
    let clip_pred = clip_line["pred"].as_f64().unwrap();
    assert!(raw_pred > 100.0, "fixture should overshoot, got {raw_pred}");
    assert_eq!(clip_pred, 100.0);
    assert_eq!(clip_line["pred_rounded"], 100);
}

#[test]
fn predict_jsonl_input_keeps_ids() {
    let fixture = Fixture::new();
    let corpus = fixture.write("c.jsonl", CORPUS);
    let model = train_model(&fixture, &corpus, &["--model", "naive"], "naive.json");
    let input = fixture.write(
        "texts.jsonl",
        "{\"id\":\"alpha\",\"text\":\"sweet cup\"}\n{\"text\":\"bitter cup\"}\n",
    );
    let output = grind()
        .args([
            "predict",
            "--model-file",
            model.to_str().unwrap(),
            "--input",
            input.to_str().unwrap(),
            "--input-format",
            "jsonl",
        ])
        .output()
        .unwrap();
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    let lines: Vec<serde_json::Value> = text
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines[0]["id"], "alpha");
    assert_eq!(lines[1]["id"], "2");
}

#[test]
fn tune_selects_from_singleton_grid_and_saves_winner() {
    let fixture = Fixture::new();
    let corpus = fixture.write("c.jsonl", CORPUS);
    let out = fixture.path("tuned.json");
    let output = grind()
        .args([
            "--no-timestamp",
            "tune",
            "--input",
            corpus.to_str().unwrap(),
            "--input-format",
            "jsonl",
            "--model",
            "ridge-tfidf",
            "--grid",
            "2.5",
            "--kf",
            "3",
            "--seed",
            "4",
            "--out",
            out.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    let report = stdout_json(&output);
    assert_eq!(report["cv"]["selected"], 2.5);
    assert_eq!(report["cv"]["kf"], 3);
    assert_eq!(
        report["cv"]["points"][0]["fold_mse"]
            .as_array()
            .unwrap()
            .len(),
        3
    );
    assert!(report["test_mse"].as_f64().unwrap() >= 0.0);

    let saved: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(saved["metadata"]["hyperparameters"]["c"], 2.5);
}

#[test]
fn tune_rejects_bad_grids() {
    let fixture = Fixture::new();
    let corpus = fixture.write("c.jsonl", CORPUS);
    for (model, grid) in [
        ("ridge-tfidf", "1,abc"),
        ("ridge-tfidf", "-1"),
        ("knn-tfidf", "2.5"),
        ("knn-tfidf", "0"),
    ] {
        let output = grind()
            .args([
                "tune",
                "--input",
                corpus.to_str().unwrap(),
                "--input-format",
                "jsonl",
                "--model",
                model,
                "--grid",
                grid,
            ])
            .output()
            .unwrap();
        assert_eq!(output.status.code(), Some(2), "{model} grid `{grid}`");
    }
}

#[test]
fn explain_ranks_signed_weights() {
    let fixture = Fixture::new();
    let corpus = fixture.write("c.jsonl", CORPUS);
    let model = train_model(
        &fixture,
        &corpus,
        &["--model", "ridge-tfidf", "--c", "10", "--orders", "1,2"],
        "ridge.json",
    );
    let output = grind()
        .args([
            "explain",
            "--model-file",
            model.to_str().unwrap(),
            "--k",
            "5",
        ])
        .output()
        .unwrap();
    let ranking = stdout_json(&output);
    let positive = ranking["positive"].as_array().unwrap();
    let negative = ranking["negative"].as_array().unwrap();
    assert!(!positive.is_empty() && !negative.is_empty());
    assert!(positive.len() <= 5 && negative.len() <= 5);
    for pair in positive.windows(2) {
        assert!(pair[0][1].as_f64().unwrap() >= pair[1][1].as_f64().unwrap());
    }
    for pair in negative.windows(2) {
        assert!(pair[0][1].as_f64().unwrap() <= pair[1][1].as_f64().unwrap());
    }
    assert!(positive.iter().all(|e| e[1].as_f64().unwrap() > 0.0));
    assert!(negative.iter().all(|e| e[1].as_f64().unwrap() < 0.0));

    // impact weighting is available as a labeled extension
    let output = grind()
        .args([
            "explain",
            "--model-file",
            model.to_str().unwrap(),
            "--k",
            "5",
            "--impact",
        ])
        .output()
        .unwrap();
    assert!(output.status.success());
}

#[test]
fn explain_rejects_models_without_coefficients() {
    let fixture = Fixture::new();
    let corpus = fixture.write("c.jsonl", CORPUS);
    for model_name in ["knn-tfidf", "naive"] {
        let extra: &[&str] = if model_name == "knn-tfidf" {
            &["--model", "knn-tfidf", "--k", "3"]
        } else {
            &["--model", "naive"]
        };
        let model = train_model(&fixture, &corpus, extra, &format!("{model_name}.json"));
        let output = grind()
            .args(["explain", "--model-file", model.to_str().unwrap()])
            .output()
            .unwrap();
        assert_eq!(output.status.code(), Some(3));
        assert!(String::from_utf8_lossy(&output.stderr).contains("model has no coefficients"));
    }
}

// Model file written by hand: two-term TF-IDF vocabulary with known
// weights, so the expected score is pure arithmetic.
#[test]
fn predict_matches_hand_computation_on_a_handwritten_model() {
    let fixture = Fixture::new();
    // sha256 of the empty stopword list is the empty-input digest
    let model_json = r#"{
  "format_version": 1,
  "metadata": {
    "seed": 0,
    "n_train": 2,
    "hyperparameters": {}
  },
  "model": {
    "kind": "ols",
    "intercept": 90.0,
    "weights": [2.0, -3.0],
    "feature_means": [0.0, 0.0],
    "recipe": {
      "feature_space": "tfidf",
      "orders": [1],
      "log_base": "natural",
      "standardized": false,
      "stopword_sha256": "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855",
      "stopwords": [],
      "vocabulary": {
        "terms": ["sweet", "bitter"],
        "doc_freq": [1, 1],
        "n_docs": 2
      },
      "idf": [0.6931471805599453, 0.5]
    }
  }
}"#;
    let model = fixture.write("hand.json", model_json);
    let input = fixture.write("t.txt", "Sweet SWEET bitter\n");
    let output = grind()
        .args([
            "predict",
            "--model-file",
            model.to_str().unwrap(),
            "--input",
            input.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(
        output.status.success(),
        "{}",
        String::from_utf8_lossy(&output.stderr)
    );
    let line: serde_json::Value = serde_json::from_str(
        String::from_utf8_lossy(&output.stdout)
            .lines()
            .next()
            .unwrap(),
    )
    .unwrap();
    // counts (2, 1), total 3; z = ((2/3)*ln2, (1/3)*0.5);
    // score = 90 + 2*z0 - 3*z1
    let ln_2 = std::f64::consts::LN_2;
    let expected = 90.0 + 2.0 * ((2.0 / 3.0) * ln_2) - 3.0 * ((1.0 / 3.0) * 0.5);
    let pred = line["pred"].as_f64().unwrap();
    assert!(
        (pred - expected).abs() <= 1e-12,
        "pred {pred} vs hand value {expected}"
    );
}

#[test]
fn unknown_model_file_version_fails_cleanly() {
    let fixture = Fixture::new();
    let corpus = fixture.write("c.jsonl", CORPUS);
    let model = train_model(&fixture, &corpus, &["--model", "naive"], "naive.json");
    let bumped = std::fs::read_to_string(&model)
        .unwrap()
        .replace("\"format_version\": 1", "\"format_version\": 2");
    let tampered = fixture.write("tampered.json", &bumped);

    let input = fixture.write("t.txt", "anything\n");
    let output = grind()
        .args([
            "predict",
            "--model-file",
            tampered.to_str().unwrap(),
            "--input",
            input.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&output.stderr).contains("format_version"));
}

#[test]
fn stopword_file_flag_and_env_override() {
    let fixture = Fixture::new();
    let corpus = fixture.write(
        "c.jsonl",
        "{\"text\":\"sweet zorp cup\",\"score\":90}\n{\"text\":\"zorp bitter\",\"score\":80}\n{\"text\":\"third cup\",\"score\":85}\n",
    );
    let stopfile = fixture.write("stops.txt", "# custom list\nzorp\n");

    let by_flag = grind()
        .args([
            "stats",
            "--input",
            corpus.to_str().unwrap(),
            "--input-format",
            "jsonl",
            "--stopwords",
            stopfile.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    let report = stdout_json(&by_flag);
    let unigrams = report["top_unigrams"].as_array().unwrap();
    assert!(
        unigrams.iter().all(|e| e[0] != "zorp"),
        "stopword leaked into ranking: {unigrams:?}"
    );

    let by_env = grind()
        .env("GRIND_STOPWORDS", stopfile.to_str().unwrap())
        .args([
            "stats",
            "--input",
            corpus.to_str().unwrap(),
            "--input-format",
            "jsonl",
        ])
        .output()
        .unwrap();
    assert_eq!(by_flag.stdout, by_env.stdout);
}

#[test]
fn text_format_renders_tables() {
    let fixture = Fixture::new();
    let corpus = fixture.write("c.jsonl", CORPUS);
    let output = grind()
        .args([
            "--format",
            "text",
            "stats",
            "--input",
            corpus.to_str().unwrap(),
            "--input-format",
            "jsonl",
            "--top-k",
            "3",
        ])
        .output()
        .unwrap();
    assert!(output.status.success());
    let text = String::from_utf8(output.stdout).unwrap();
    assert!(text.contains("reviews:"));
    assert!(text.contains("top unigrams:"));
    assert!(serde_json::from_str::<serde_json::Value>(&text).is_err());
}
