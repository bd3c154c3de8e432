//! Vocabulary construction and sparse count / TF-IDF predictors.
//!
//! The vocabulary maps each distinct term to a column index (first-appearance
//! order) and records per-term document frequencies over the training
//! documents. Count vectors hold raw occurrence counts; the TF-IDF transform
//! rescales each document's counts to term shares and weights them by
//! `ln(N / (1 + df))`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::corpus::{extract_ngrams, tokenize, Stopwords, TokenizedReview};
use crate::error::{Error, Result};

/// Term-to-column map with training document frequencies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawVocabulary", into = "RawVocabulary")]
pub struct Vocabulary {
    terms: Vec<String>,
    doc_freq: Vec<usize>,
    n_docs: usize,
    index: HashMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
struct RawVocabulary {
    terms: Vec<String>,
    doc_freq: Vec<usize>,
    n_docs: usize,
}

impl From<Vocabulary> for RawVocabulary {
    fn from(v: Vocabulary) -> Self {
        RawVocabulary {
            terms: v.terms,
            doc_freq: v.doc_freq,
            n_docs: v.n_docs,
        }
    }
}

impl TryFrom<RawVocabulary> for Vocabulary {
    type Error = Error;

    fn try_from(raw: RawVocabulary) -> Result<Self> {
        if raw.terms.len() != raw.doc_freq.len() {
            return Err(Error::ModelFile(format!(
                "vocabulary has {} terms but {} document frequencies",
                raw.terms.len(),
                raw.doc_freq.len()
            )));
        }
        let mut index = HashMap::with_capacity(raw.terms.len());
        for (j, term) in raw.terms.iter().enumerate() {
            if index.insert(term.clone(), j).is_some() {
                return Err(Error::ModelFile(format!(
                    "duplicate vocabulary term `{term}`"
                )));
            }
        }
        Ok(Vocabulary {
            terms: raw.terms,
            doc_freq: raw.doc_freq,
            n_docs: raw.n_docs,
            index,
        })
    }
}

impl Vocabulary {
    /// Number of terms, i.e. the predictor dimension m.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Column index of `term`, if present.
    pub fn index_of(&self, term: &str) -> Option<usize> {
        self.index.get(term).copied()
    }

    pub fn term(&self, j: usize) -> &str {
        &self.terms[j]
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    /// Number of training documents containing term `j`.
    pub fn doc_freq(&self, j: usize) -> usize {
        self.doc_freq[j]
    }

    /// Number of training documents the vocabulary was built from.
    pub fn n_docs(&self) -> usize {
        self.n_docs
    }
}

/// Builds the vocabulary from tokenized training documents.
///
/// Terms are assigned columns in first-appearance order; `doc_freq` counts
/// documents containing each term (not occurrences).
pub fn build_vocabulary(tokenized: &[TokenizedReview]) -> Result<Vocabulary> {
    if tokenized.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut terms: Vec<String> = Vec::new();
    let mut doc_freq: Vec<usize> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut seen_in_doc: Vec<bool> = Vec::new();

    for doc in tokenized {
        let mut touched: Vec<usize> = Vec::new();
        for term in &doc.terms {
            let j = match index.get(term) {
                Some(&j) => j,
                None => {
                    let j = terms.len();
                    terms.push(term.clone());
                    doc_freq.push(0);
                    seen_in_doc.push(false);
                    index.insert(term.clone(), j);
                    j
                }
            };
            if !seen_in_doc[j] {
                seen_in_doc[j] = true;
                doc_freq[j] += 1;
                touched.push(j);
            }
        }
        for j in touched {
            seen_in_doc[j] = false;
        }
    }

    Ok(Vocabulary {
        terms,
        doc_freq,
        n_docs: tokenized.len(),
        index,
    })
}

/// Sparse vector with strictly increasing indices and nonzero values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparseVector {
    dim: usize,
    entries: Vec<(usize, f64)>,
}

impl SparseVector {
    /// An all-zero vector of dimension `dim`.
    pub fn zeros(dim: usize) -> Self {
        SparseVector {
            dim,
            entries: Vec::new(),
        }
    }

    /// Builds a vector from `(index, value)` pairs, sorting them and dropping
    /// zeros. Rejects out-of-range or duplicate indices.
    pub fn from_pairs(dim: usize, mut pairs: Vec<(usize, f64)>) -> Result<Self> {
        pairs.retain(|&(_, v)| v != 0.0);
        pairs.sort_by_key(|&(j, _)| j);
        for window in pairs.windows(2) {
            if window[0].0 == window[1].0 {
                return Err(Error::InvalidArgument(format!(
                    "duplicate sparse index {}",
                    window[0].0
                )));
            }
        }
        if let Some(&(j, _)) = pairs.last() {
            if j >= dim {
                return Err(Error::InvalidArgument(format!(
                    "sparse index {j} out of range for dimension {dim}"
                )));
            }
        }
        Ok(SparseVector {
            dim,
            entries: pairs,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, f64)] {
        &self.entries
    }

    /// Sum of all stored values.
    pub fn sum(&self) -> f64 {
        self.entries.iter().map(|&(_, v)| v).sum()
    }

    /// Dot product against a dense vector of length `dim`.
    pub fn dot_dense(&self, dense: &[f64]) -> f64 {
        debug_assert_eq!(dense.len(), self.dim);
        self.entries.iter().map(|&(j, v)| v * dense[j]).sum()
    }

    /// Accumulates `scale * self` into a dense buffer.
    pub fn add_scaled_into(&self, scale: f64, dense: &mut [f64]) {
        debug_assert_eq!(dense.len(), self.dim);
        for &(j, v) in &self.entries {
            dense[j] += scale * v;
        }
    }

    /// Squared Euclidean distance to `other`.
    ///
    /// Accumulates `(a_j - b_j)^2` over the union of stored indices in
    /// ascending index order, which makes the result bit-identical to a dense
    /// index-order loop (zero terms contribute exactly nothing).
    pub fn squared_distance(&self, other: &SparseVector) -> f64 {
        debug_assert_eq!(self.dim, other.dim);
        let mut total = 0.0;
        let (mut i, mut k) = (0, 0);
        let a = &self.entries;
        let b = &other.entries;
        while i < a.len() && k < b.len() {
            let d = match a[i].0.cmp(&b[k].0) {
                std::cmp::Ordering::Less => {
                    let d = a[i].1;
                    i += 1;
                    d
                }
                std::cmp::Ordering::Greater => {
                    let d = -b[k].1;
                    k += 1;
                    d
                }
                std::cmp::Ordering::Equal => {
                    let d = a[i].1 - b[k].1;
                    i += 1;
                    k += 1;
                    d
                }
            };
            total += d * d;
        }
        for &(_, v) in &a[i..] {
            total += v * v;
        }
        for &(_, v) in &b[k..] {
            total += v * v;
        }
        total
    }
}

/// Row-batch of sparse vectors sharing one dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    dim: usize,
    rows: Vec<SparseVector>,
    row_ids: Vec<String>,
}

impl FeatureMatrix {
    pub fn new(dim: usize) -> Self {
        FeatureMatrix {
            dim,
            rows: Vec::new(),
            row_ids: Vec::new(),
        }
    }

    pub fn push_row(&mut self, id: String, row: SparseVector) -> Result<()> {
        if row.dim() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "row has dimension {}, matrix has {}",
                row.dim(),
                self.dim
            )));
        }
        self.rows.push(row);
        self.row_ids.push(id);
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, i: usize) -> &SparseVector {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[SparseVector] {
        &self.rows
    }

    pub fn row_ids(&self) -> &[String] {
        &self.row_ids
    }

    /// Column means as a dense vector of length `dim`.
    pub fn column_means(&self) -> Vec<f64> {
        let mut means = vec![0.0; self.dim];
        if self.rows.is_empty() {
            return means;
        }
        for row in &self.rows {
            row.add_scaled_into(1.0, &mut means);
        }
        let inv = 1.0 / self.rows.len() as f64;
        for m in &mut means {
            *m *= inv;
        }
        means
    }
}

/// Per-term inverse document frequencies, `idf[j] = ln(N / (1 + df_j))`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IdfModel {
    values: Vec<f64>,
}

impl IdfModel {
    pub fn from_values(values: Vec<f64>) -> Self {
        IdfModel { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Counts in-vocabulary term occurrences; out-of-vocabulary terms are
/// ignored. The result has `dim = vocab.len()`.
pub fn count_vector(terms: &[String], vocab: &Vocabulary) -> SparseVector {
    let mut counts: HashMap<usize, f64> = HashMap::new();
    for term in terms {
        if let Some(j) = vocab.index_of(term) {
            *counts.entry(j).or_insert(0.0) += 1.0;
        }
    }
    let mut entries: Vec<(usize, f64)> = counts.into_iter().collect();
    entries.sort_by_key(|&(j, _)| j);
    SparseVector {
        dim: vocab.len(),
        entries,
    }
}

/// Batch [`count_vector`] over tokenized documents.
pub fn count_matrix(tokenized: &[TokenizedReview], vocab: &Vocabulary) -> FeatureMatrix {
    let mut matrix = FeatureMatrix::new(vocab.len());
    for doc in tokenized {
        let row = count_vector(&doc.terms, vocab);
        matrix
            .push_row(doc.id.clone(), row)
            .expect("count vectors share the vocabulary dimension");
    }
    matrix
}

/// Fits inverse document frequencies from training count rows.
///
/// `df_j` is the number of rows with a nonzero column `j` and
/// `idf[j] = ln(N / (1 + df_j))` with `N = vocab.n_docs()`. A term occurring
/// in every document gets a negative weight; that is kept as-is.
pub fn fit_idf(train_matrix: &FeatureMatrix, vocab: &Vocabulary) -> Result<IdfModel> {
    if vocab.len() != train_matrix.dim() {
        return Err(Error::DimensionMismatch(format!(
            "vocabulary has {} terms, matrix dimension is {}",
            vocab.len(),
            train_matrix.dim()
        )));
    }
    if vocab.n_docs() != train_matrix.n_rows() {
        return Err(Error::DimensionMismatch(format!(
            "vocabulary was built from {} documents, matrix has {} rows",
            vocab.n_docs(),
            train_matrix.n_rows()
        )));
    }
    let n = vocab.n_docs() as f64;
    let mut df = vec![0usize; train_matrix.dim()];
    for row in train_matrix.rows() {
        for &(j, _) in row.entries() {
            df[j] += 1;
        }
    }
    let values = df
        .into_iter()
        .map(|d| (n / (1.0 + d as f64)).ln())
        .collect();
    Ok(IdfModel { values })
}

/// Maps a count vector to TF-IDF weights.
///
/// `TF_j` is the document's term share `x_j / sum_k x_k` and
/// `z_j = TF_j * idf[j]`; zero products are dropped. An all-zero input maps
/// to an all-zero output.
pub fn tfidf_transform(counts: &SparseVector, idf: &IdfModel) -> Result<SparseVector> {
    if counts.dim() != idf.len() {
        return Err(Error::DimensionMismatch(format!(
            "counts have dimension {}, idf has {}",
            counts.dim(),
            idf.len()
        )));
    }
    let total = counts.sum();
    if total == 0.0 {
        return Ok(SparseVector::zeros(counts.dim()));
    }
    let entries = counts
        .entries()
        .iter()
        .map(|&(j, c)| (j, (c / total) * idf.values[j]))
        .filter(|&(_, z)| z != 0.0)
        .collect();
    Ok(SparseVector {
        dim: counts.dim(),
        entries,
    })
}

/// Batch [`tfidf_transform`] over count rows.
pub fn tfidf_matrix(counts: &FeatureMatrix, idf: &IdfModel) -> Result<FeatureMatrix> {
    let mut matrix = FeatureMatrix::new(counts.dim());
    for (row, id) in counts.rows().iter().zip(counts.row_ids()) {
        matrix.push_row(id.clone(), tfidf_transform(row, idf)?)?;
    }
    Ok(matrix)
}

/// Predictor space of a fitted model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureSpace {
    Counts,
    Tfidf,
}

/// Everything needed to map raw text onto a model's predictor space:
/// stop words, n-gram orders, vocabulary, and (for TF-IDF) the fitted IDF.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Recipe {
    pub space: FeatureSpace,
    pub orders: Vec<usize>,
    pub stopwords: Stopwords,
    pub vocabulary: Vocabulary,
    pub idf: Option<IdfModel>,
}

impl Recipe {
    pub fn new(
        space: FeatureSpace,
        orders: Vec<usize>,
        stopwords: Stopwords,
        vocabulary: Vocabulary,
        idf: Option<IdfModel>,
    ) -> Result<Self> {
        if orders.is_empty() || orders.iter().any(|&n| n != 1 && n != 2) {
            let bad = orders
                .iter()
                .find(|&&n| n != 1 && n != 2)
                .copied()
                .unwrap_or(0);
            return Err(Error::NgramOrder(bad));
        }
        match (space, &idf) {
            (FeatureSpace::Tfidf, None) => {
                return Err(Error::InvalidArgument(
                    "tfidf recipe requires an idf model".into(),
                ))
            }
            (FeatureSpace::Counts, Some(_)) => {
                return Err(Error::InvalidArgument(
                    "counts recipe must not carry an idf model".into(),
                ))
            }
            _ => {}
        }
        if let Some(idf) = &idf {
            if idf.len() != vocabulary.len() {
                return Err(Error::DimensionMismatch(format!(
                    "idf has {} values, vocabulary has {} terms",
                    idf.len(),
                    vocabulary.len()
                )));
            }
        }
        Ok(Recipe {
            space,
            orders,
            stopwords,
            vocabulary,
            idf,
        })
    }

    /// Tokenizes raw text and produces its predictor vector under this recipe.
    pub fn vectorize(&self, text: &str) -> SparseVector {
        let tokens = tokenize(text, &self.stopwords);
        let terms =
            extract_ngrams(&tokens, &self.orders).expect("orders validated at construction");
        self.vectorize_terms(&terms)
    }

    /// Predictor vector for an already-tokenized term list.
    pub fn vectorize_terms(&self, terms: &[String]) -> SparseVector {
        let counts = count_vector(terms, &self.vocabulary);
        match (self.space, &self.idf) {
            (FeatureSpace::Counts, _) => counts,
            (FeatureSpace::Tfidf, Some(idf)) => {
                tfidf_transform(&counts, idf).expect("idf length validated at construction")
            }
            (FeatureSpace::Tfidf, None) => unreachable!("validated at construction"),
        }
    }
}
