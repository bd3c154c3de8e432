//! Trained-model wrapper and self-contained JSON persistence.
//!
//! A model file is a single JSON document carrying everything prediction
//! needs: the featurization recipe (n-gram orders, feature space, stop word
//! list and its SHA-256, vocabulary, IDF values), the fitted parameters, and
//! training metadata. Reloading a file and predicting gives bit-identical
//! results to the in-memory model; JSON floats are written in shortest
//! round-trip form.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::corpus::{Stopwords, TokenizedReview};
use crate::error::{Error, Result};
use crate::featurize::{
    build_vocabulary, count_matrix, fit_idf, tfidf_matrix, FeatureMatrix, FeatureSpace, IdfModel,
    Recipe, SparseVector, Vocabulary,
};
use crate::regress::{
    fit_knn, fit_least_squares, fit_naive, fit_ridge, KnnModel, LinearFit, LinearModel, NaiveModel,
};

/// Version stamp written into every model file.
pub const FORMAT_VERSION: u32 = 1;

/// Which regression family to train.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelSpec {
    Naive,
    OlsBow,
    OlsTfidf,
    RidgeTfidf { c: f64 },
    KnnTfidf { k: usize },
}

impl ModelSpec {
    /// CLI-facing family name.
    pub fn name(&self) -> &'static str {
        match self {
            ModelSpec::Naive => "naive",
            ModelSpec::OlsBow => "ols-bow",
            ModelSpec::OlsTfidf => "ols-tfidf",
            ModelSpec::RidgeTfidf { .. } => "ridge-tfidf",
            ModelSpec::KnnTfidf { .. } => "knn-tfidf",
        }
    }
}

/// Linear fits come in two flavors that share a payload.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinearKind {
    Ols,
    Ridge,
}

/// A trained model of any family, ready to predict from raw text.
#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Naive(NaiveModel),
    Linear {
        kind: LinearKind,
        model: LinearModel,
        /// Column means of the training feature matrix, kept for
        /// impact-weighted coefficient rankings.
        feature_means: Vec<f64>,
    },
    Knn {
        model: KnnModel,
        recipe: Recipe,
    },
}

impl Model {
    /// Predicts a score from raw review text.
    pub fn predict_text(&self, text: &str) -> f64 {
        match self {
            Model::Naive(naive) => naive.predict(),
            Model::Linear { model, .. } => model.predict_text(text),
            Model::Knn { model, recipe } => model.predict(&recipe.vectorize(text)),
        }
    }

    /// Predicts from an already-tokenized term list.
    pub fn predict_terms(&self, terms: &[String]) -> f64 {
        match self {
            Model::Naive(naive) => naive.predict(),
            Model::Linear { model, .. } => model.predict_terms(terms),
            Model::Knn { model, recipe } => model.predict(&recipe.vectorize_terms(terms)),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Model::Naive(_) => "naive",
            Model::Linear {
                kind: LinearKind::Ols,
                ..
            } => "ols",
            Model::Linear {
                kind: LinearKind::Ridge,
                ..
            } => "ridge",
            Model::Knn { .. } => "knn",
        }
    }

    /// The linear model, when this family has coefficients.
    pub fn linear(&self) -> Option<&LinearModel> {
        match self {
            Model::Linear { model, .. } => Some(model),
            _ => None,
        }
    }

    /// Training-set feature means for linear families.
    pub fn feature_means(&self) -> Option<&[f64]> {
        match self {
            Model::Linear { feature_means, .. } => Some(feature_means),
            _ => None,
        }
    }
}

/// Trains a model of the requested family on tokenized documents.
///
/// For TF-IDF families the vocabulary and IDF are fit on `docs` (the
/// training split) and stored in the recipe; `orders` and `stopwords`
/// describe how `docs` were tokenized and are recorded for prediction-time
/// reuse.
pub fn train(
    spec: ModelSpec,
    docs: &[TokenizedReview],
    scores: &[f64],
    orders: &[usize],
    stopwords: &Stopwords,
) -> Result<Model> {
    if docs.len() != scores.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} documents but {} scores",
            docs.len(),
            scores.len()
        )));
    }
    if let ModelSpec::Naive = spec {
        return Ok(Model::Naive(fit_naive(scores)?));
    }

    let vocab = build_vocabulary(docs)?;
    let counts = count_matrix(docs, &vocab);
    let space = match spec {
        ModelSpec::OlsBow => FeatureSpace::Counts,
        _ => FeatureSpace::Tfidf,
    };
    let (features, idf) = match space {
        FeatureSpace::Counts => (counts, None),
        FeatureSpace::Tfidf => {
            let idf = fit_idf(&counts, &vocab)?;
            (tfidf_matrix(&counts, &idf)?, Some(idf))
        }
    };
    let recipe = Recipe::new(space, orders.to_vec(), stopwords.clone(), vocab, idf)?;

    match spec {
        ModelSpec::Naive => unreachable!("handled above"),
        ModelSpec::OlsBow | ModelSpec::OlsTfidf => {
            let feature_means = features.column_means();
            let fit = fit_least_squares(&features, scores)?;
            Ok(Model::Linear {
                kind: LinearKind::Ols,
                model: LinearModel::new(fit, recipe)?,
                feature_means,
            })
        }
        ModelSpec::RidgeTfidf { c } => {
            let feature_means = features.column_means();
            let fit = fit_ridge(&features, scores, c)?;
            Ok(Model::Linear {
                kind: LinearKind::Ridge,
                model: LinearModel::new(fit, recipe)?,
                feature_means,
            })
        }
        ModelSpec::KnnTfidf { k } => Ok(Model::Knn {
            model: fit_knn(features, scores.to_vec(), k)?,
            recipe,
        }),
    }
}

/// Hyperparameters recorded in the model file.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Hyperparameters {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub c: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
}

/// Training provenance stored alongside the model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainMeta {
    pub seed: u64,
    pub n_train: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub test_fraction: Option<f64>,
    /// RFC 3339 wall-clock time; omitted under `--no-timestamp`.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timestamp: Option<String>,
    pub hyperparameters: Hyperparameters,
}

/// Featurization recipe as persisted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SavedRecipe {
    pub feature_space: FeatureSpace,
    pub orders: Vec<usize>,
    /// Base of the logarithm inside the IDF values ("natural").
    pub log_base: String,
    /// Whether feature columns were standardized before fitting (never).
    pub standardized: bool,
    pub stopword_sha256: String,
    pub stopwords: Vec<String>,
    pub vocabulary: Vocabulary,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub idf: Option<Vec<f64>>,
}

impl SavedRecipe {
    fn from_recipe(recipe: &Recipe) -> Self {
        SavedRecipe {
            feature_space: recipe.space,
            orders: recipe.orders.clone(),
            log_base: "natural".to_string(),
            standardized: false,
            stopword_sha256: recipe.stopwords.sha256_hex(),
            stopwords: recipe.stopwords.iter().map(str::to_string).collect(),
            vocabulary: recipe.vocabulary.clone(),
            idf: recipe.idf.as_ref().map(|i| i.values().to_vec()),
        }
    }

    fn into_recipe(self) -> Result<Recipe> {
        if self.log_base != "natural" {
            return Err(Error::ModelFile(format!(
                "unsupported log base `{}`",
                self.log_base
            )));
        }
        let stopwords = Stopwords::from_words(&self.stopwords);
        if stopwords.sha256_hex() != self.stopword_sha256 {
            return Err(Error::ModelFile(
                "stopword list does not match its recorded sha256".into(),
            ));
        }
        Recipe::new(
            self.feature_space,
            self.orders,
            stopwords,
            self.vocabulary,
            self.idf.map(IdfModel::from_values),
        )
    }
}

/// Sparse training matrix in coordinate form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SavedMatrix {
    pub dim: usize,
    pub row_ids: Vec<String>,
    /// `(row, column, value)` triplets, sorted by row then column.
    pub coords: Vec<(usize, usize, f64)>,
}

impl SavedMatrix {
    fn from_matrix(m: &FeatureMatrix) -> Self {
        let mut coords = Vec::new();
        for (i, row) in m.rows().iter().enumerate() {
            for &(j, v) in row.entries() {
                coords.push((i, j, v));
            }
        }
        SavedMatrix {
            dim: m.dim(),
            row_ids: m.row_ids().to_vec(),
            coords,
        }
    }

    fn into_matrix(self) -> Result<FeatureMatrix> {
        let n_rows = self.row_ids.len();
        let mut per_row: BTreeMap<usize, Vec<(usize, f64)>> = BTreeMap::new();
        for (i, j, v) in self.coords {
            if i >= n_rows {
                return Err(Error::ModelFile(format!(
                    "coordinate row {i} out of range for {n_rows} rows"
                )));
            }
            per_row.entry(i).or_default().push((j, v));
        }
        let mut matrix = FeatureMatrix::new(self.dim);
        for (i, id) in self.row_ids.into_iter().enumerate() {
            let pairs = per_row.remove(&i).unwrap_or_default();
            let row = SparseVector::from_pairs(self.dim, pairs)
                .map_err(|e| Error::ModelFile(format!("row {i}: {e}")))?;
            matrix.push_row(id, row)?;
        }
        Ok(matrix)
    }
}

/// Family-specific payload, tagged by `kind`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModelPayload {
    Naive {
        mean_score: f64,
    },
    Ols {
        intercept: f64,
        weights: Vec<f64>,
        feature_means: Vec<f64>,
        recipe: SavedRecipe,
    },
    Ridge {
        intercept: f64,
        weights: Vec<f64>,
        feature_means: Vec<f64>,
        recipe: SavedRecipe,
    },
    Knn {
        k: usize,
        train: SavedMatrix,
        train_scores: Vec<f64>,
        recipe: SavedRecipe,
    },
}

/// The complete on-disk document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelFile {
    pub format_version: u32,
    pub metadata: TrainMeta,
    pub model: ModelPayload,
}

impl ModelFile {
    pub fn new(model: &Model, metadata: TrainMeta) -> Self {
        let payload = match model {
            Model::Naive(naive) => ModelPayload::Naive {
                mean_score: naive.mean_score,
            },
            Model::Linear {
                kind,
                model,
                feature_means,
            } => {
                let recipe = SavedRecipe::from_recipe(model.recipe());
                match kind {
                    LinearKind::Ols => ModelPayload::Ols {
                        intercept: model.intercept(),
                        weights: model.weights().to_vec(),
                        feature_means: feature_means.clone(),
                        recipe,
                    },
                    LinearKind::Ridge => ModelPayload::Ridge {
                        intercept: model.intercept(),
                        weights: model.weights().to_vec(),
                        feature_means: feature_means.clone(),
                        recipe,
                    },
                }
            }
            Model::Knn { model, recipe } => ModelPayload::Knn {
                k: model.k(),
                train: SavedMatrix::from_matrix(model.train_matrix()),
                train_scores: model.train_scores().to_vec(),
                recipe: SavedRecipe::from_recipe(recipe),
            },
        };
        ModelFile {
            format_version: FORMAT_VERSION,
            metadata,
            model: payload,
        }
    }

    pub fn into_model(self) -> Result<(Model, TrainMeta)> {
        let model = match self.model {
            ModelPayload::Naive { mean_score } => {
                if !mean_score.is_finite() {
                    return Err(Error::ModelFile("naive mean score is not finite".into()));
                }
                Model::Naive(NaiveModel { mean_score })
            }
            ModelPayload::Ols {
                intercept,
                weights,
                feature_means,
                recipe,
            } => linear_from_parts(LinearKind::Ols, intercept, weights, feature_means, recipe)?,
            ModelPayload::Ridge {
                intercept,
                weights,
                feature_means,
                recipe,
            } => linear_from_parts(LinearKind::Ridge, intercept, weights, feature_means, recipe)?,
            ModelPayload::Knn {
                k,
                train,
                train_scores,
                recipe,
            } => {
                let matrix = train.into_matrix()?;
                let knn = fit_knn(matrix, train_scores, k)
                    .map_err(|e| Error::ModelFile(e.to_string()))?;
                Model::Knn {
                    model: knn,
                    recipe: recipe.into_recipe()?,
                }
            }
        };
        Ok((model, self.metadata))
    }
}

fn linear_from_parts(
    kind: LinearKind,
    intercept: f64,
    weights: Vec<f64>,
    feature_means: Vec<f64>,
    recipe: SavedRecipe,
) -> Result<Model> {
    let recipe = recipe.into_recipe()?;
    if feature_means.len() != weights.len() {
        return Err(Error::ModelFile(format!(
            "{} feature means for {} weights",
            feature_means.len(),
            weights.len()
        )));
    }
    let model = LinearModel::new(LinearFit { intercept, weights }, recipe)
        .map_err(|e| Error::ModelFile(e.to_string()))?;
    Ok(Model::Linear {
        kind,
        model,
        feature_means,
    })
}

/// Serializes a model file as pretty-printed JSON.
pub fn to_json(file: &ModelFile) -> String {
    serde_json::to_string_pretty(file).expect("model files serialize")
}

/// Parses and validates a model file, checking `format_version` first so
/// files from a newer layout fail with a clear message.
pub fn from_json(json: &str) -> Result<ModelFile> {
    #[derive(Deserialize)]
    struct Probe {
        format_version: Option<u32>,
    }
    let probe: Probe = serde_json::from_str(json)
        .map_err(|e| Error::ModelFile(format!("not a model file: {e}")))?;
    match probe.format_version {
        Some(FORMAT_VERSION) => {}
        Some(other) => {
            return Err(Error::ModelFile(format!(
                "unsupported format_version {other} (this build reads {FORMAT_VERSION})"
            )))
        }
        None => return Err(Error::ModelFile("missing format_version".into())),
    }
    serde_json::from_str(json).map_err(|e| Error::ModelFile(format!("corrupt model file: {e}")))
}

pub fn save(path: &Path, model: &Model, metadata: TrainMeta) -> Result<()> {
    let file = ModelFile::new(model, metadata);
    fs::write(path, to_json(&file) + "\n").map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load(path: &Path) -> Result<(Model, TrainMeta)> {
    let json = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    from_json(&json)?.into_model()
}
