//! Regression model families: naive mean, least squares, ridge, and k-NN.
//!
//! Linear fits minimize the mean squared residual `(1/p) Σ (α + β·x_i - y_i)²`
//! with the intercept handled by centering and never penalized. The ridge fit
//! adds `(1/(2C)) Σ β_j²` and is solved in closed form through a Cholesky
//! factorization of whichever of the primal (m×m) or dual (p×p) system is
//! smaller. The unregularized fit uses CGLS started from zero, which yields
//! the minimum-norm solution when the system is under-determined.
//!
//! Every fit is certified: the objective gradient at the returned
//! coefficients must have norm at most `1e-8 * (1 + ‖y‖₂)`, otherwise the fit
//! reports non-convergence instead of returning a bad model.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::featurize::{FeatureMatrix, Recipe, SparseVector};
use crate::linalg::{
    cgls_min_norm, cholesky_factor, cholesky_solve, dot, l2_norm, mean, CenteredOp,
};

/// Scale of the gradient-norm optimality certificate: a fit is accepted when
/// `‖∇objective‖ ≤ GRADIENT_TOL_SCALE * (1 + ‖y‖₂)`.
pub const GRADIENT_TOL_SCALE: f64 = 1e-8;

/// Certificate tolerance for a given score vector.
pub fn gradient_tolerance(y: &[f64]) -> f64 {
    GRADIENT_TOL_SCALE * (1.0 + l2_norm(y))
}

/// Intercept and weight vector of a fitted linear predictor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearFit {
    pub intercept: f64,
    pub weights: Vec<f64>,
}

impl LinearFit {
    /// `α + β·v`
    pub fn predict(&self, v: &SparseVector) -> f64 {
        self.intercept + v.dot_dense(&self.weights)
    }
}

/// Predictor that always returns the training mean score.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NaiveModel {
    pub mean_score: f64,
}

impl NaiveModel {
    pub fn predict(&self) -> f64 {
        self.mean_score
    }
}

/// Fits the naive mean predictor.
pub fn fit_naive(y: &[f64]) -> Result<NaiveModel> {
    if y.is_empty() {
        return Err(Error::InvalidArgument(
            "cannot fit on an empty score vector".into(),
        ));
    }
    Ok(NaiveModel {
        mean_score: mean(y),
    })
}

fn check_design(x: &FeatureMatrix, y: &[f64]) -> Result<()> {
    if x.n_rows() != y.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} feature rows but {} scores",
            x.n_rows(),
            y.len()
        )));
    }
    if y.is_empty() {
        return Err(Error::InvalidArgument(
            "cannot fit on an empty training set".into(),
        ));
    }
    Ok(())
}

/// Norm of the objective gradient at `(intercept, weights)`.
///
/// The objective is `(1/p) Σ (α + β·x_i - y_i)²`, plus `(1/(2C)) Σ β_j²`
/// when `ridge_c` is given. Exposed so optimality can be audited from tests
/// and reports.
pub fn objective_gradient_norm(
    x: &FeatureMatrix,
    y: &[f64],
    intercept: f64,
    weights: &[f64],
    ridge_c: Option<f64>,
) -> f64 {
    let p = x.n_rows() as f64;
    let mut grad_w = vec![0.0; x.dim()];
    let mut grad_a = 0.0;
    for (row, &yi) in x.rows().iter().zip(y) {
        let r = intercept + row.dot_dense(weights) - yi;
        grad_a += r;
        row.add_scaled_into(r, &mut grad_w);
    }
    grad_a *= 2.0 / p;
    for g in &mut grad_w {
        *g *= 2.0 / p;
    }
    if let Some(c) = ridge_c {
        for (g, &w) in grad_w.iter_mut().zip(weights) {
            *g += w / c;
        }
    }
    (grad_a * grad_a + grad_w.iter().map(|g| g * g).sum::<f64>()).sqrt()
}

/// Ordinary least squares with an unpenalized intercept.
///
/// Fits on centered data and recovers `α = ȳ - β·x̄`. When the minimizer is
/// not unique (more features than rows), the minimum-norm weight vector is
/// returned.
pub fn fit_least_squares(x: &FeatureMatrix, y: &[f64]) -> Result<LinearFit> {
    check_design(x, y)?;
    let p = x.n_rows();
    let means = x.column_means();
    let y_bar = mean(y);
    let y_centered: Vec<f64> = y.iter().map(|&v| v - y_bar).collect();

    let op = CenteredOp::new(x, &means);
    let tol = gradient_tolerance(y);
    // internal target on ‖Aᵀr‖; the certificate below is the authority
    let target = 0.25 * tol * p as f64 / 2.0;
    let weights = cgls_min_norm(&op, &y_centered, target);
    let intercept = y_bar - dot(&weights, &means);

    let achieved = objective_gradient_norm(x, y, intercept, &weights, None);
    if achieved > tol {
        return Err(Error::NonConvergence {
            achieved,
            required: tol,
        });
    }
    Ok(LinearFit { intercept, weights })
}

/// Ridge regression: minimizes
/// `(1/p) Σ (α + β·z_i - y_i)² + (1/(2C)) Σ β_j²` with `α` unpenalized.
///
/// On centered data the weights solve
/// `(ZᵀZ + (p/(2C)) I) β = Zᵀ y`; when `m > p` the equivalent p×p dual
/// system is solved instead. Both routes are followed by iterative
/// refinement until the gradient certificate holds.
pub fn fit_ridge(z: &FeatureMatrix, y: &[f64], c: f64) -> Result<LinearFit> {
    check_design(z, y)?;
    if c <= 0.0 || !c.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "ridge hyperparameter C must be positive and finite, got {c}"
        )));
    }
    let p = z.n_rows();
    let m = z.dim();
    let lambda = p as f64 / (2.0 * c);
    let means = z.column_means();
    let y_bar = mean(y);
    let y_centered: Vec<f64> = y.iter().map(|&v| v - y_bar).collect();
    let op = CenteredOp::new(z, &means);

    let mut weights = if m <= p {
        ridge_primal(z, &op, &means, &y_centered, lambda)?
    } else {
        ridge_dual(z, &op, &means, &y_centered, lambda)?
    };

    let tol = gradient_tolerance(y);
    let mut intercept = y_bar - dot(&weights, &means);
    let mut achieved = objective_gradient_norm(z, y, intercept, &weights, Some(c));
    // refinement passes reuse the sparse operator, not the factor
    let mut refinements = 0;
    while achieved > tol && refinements < 4 {
        polish_ridge(&op, &y_centered, lambda, &mut weights);
        intercept = y_bar - dot(&weights, &means);
        achieved = objective_gradient_norm(z, y, intercept, &weights, Some(c));
        refinements += 1;
    }
    if achieved > tol {
        return Err(Error::NonConvergence {
            achieved,
            required: tol,
        });
    }
    Ok(LinearFit { intercept, weights })
}

/// Solves the m×m primal normal equations `(Z_cᵀZ_c + λI) β = Z_cᵀ y_c`.
fn ridge_primal(
    z: &FeatureMatrix,
    op: &CenteredOp<'_>,
    means: &[f64],
    y_centered: &[f64],
    lambda: f64,
) -> Result<Vec<f64>> {
    let m = z.dim();
    let p = z.n_rows() as f64;
    // G = ZᵀZ - p·z̄z̄ᵀ + λI, accumulated from sparse outer products
    let mut gram = vec![0.0; m * m];
    for row in z.rows() {
        for &(j, vj) in row.entries() {
            let base = j * m;
            for &(k, vk) in row.entries() {
                gram[base + k] += vj * vk;
            }
        }
    }
    for j in 0..m {
        for k in 0..m {
            gram[j * m + k] -= p * means[j] * means[k];
        }
        gram[j * m + j] += lambda;
    }
    let mut rhs = vec![0.0; m];
    op.rmatvec(y_centered, &mut rhs);
    if !cholesky_factor(&mut gram, m) {
        return Err(Error::NonConvergence {
            achieved: f64::INFINITY,
            required: 0.0,
        });
    }
    Ok(cholesky_solve(&gram, m, &rhs))
}

/// Solves the p×p dual system `(Z_cZ_cᵀ + λI) w = y_c`, then maps back with
/// `β = Z_cᵀ w`.
fn ridge_dual(
    z: &FeatureMatrix,
    op: &CenteredOp<'_>,
    means: &[f64],
    y_centered: &[f64],
    lambda: f64,
) -> Result<Vec<f64>> {
    let p = z.n_rows();
    let mean_sq = dot(means, means);
    let shifts: Vec<f64> = z.rows().iter().map(|r| r.dot_dense(means)).collect();
    let mut kernel = vec![0.0; p * p];
    for i in 0..p {
        for k in 0..=i {
            let v = sparse_dot(z.row(i), z.row(k)) - shifts[i] - shifts[k] + mean_sq;
            kernel[i * p + k] = v;
            kernel[k * p + i] = v;
        }
        kernel[i * p + i] += lambda;
    }
    if !cholesky_factor(&mut kernel, p) {
        return Err(Error::NonConvergence {
            achieved: f64::INFINITY,
            required: 0.0,
        });
    }
    let w = cholesky_solve(&kernel, p, y_centered);
    let mut weights = vec![0.0; z.dim()];
    op.rmatvec(&w, &mut weights);
    Ok(weights)
}

/// One conjugate-gradient pass on the ridge normal equations to sharpen a
/// Cholesky solution that fell short of the certificate.
fn polish_ridge(op: &CenteredOp<'_>, y_centered: &[f64], lambda: f64, weights: &mut [f64]) {
    let m = op.n_cols();
    let p = op.n_rows();
    let apply = |v: &[f64], out: &mut Vec<f64>, tmp: &mut Vec<f64>| {
        op.matvec(v, tmp);
        op.rmatvec(tmp, out);
        for (o, &vj) in out.iter_mut().zip(v) {
            *o += lambda * vj;
        }
    };
    let mut tmp = vec![0.0; p];
    let mut rhs = vec![0.0; m];
    op.rmatvec(y_centered, &mut rhs);
    let mut av = vec![0.0; m];
    apply(weights, &mut av, &mut tmp);
    let mut residual: Vec<f64> = rhs.iter().zip(&av).map(|(r, a)| r - a).collect();
    let mut direction = residual.clone();
    let mut gamma = dot(&residual, &residual);
    for _ in 0..(2 * m + 20) {
        if gamma == 0.0 {
            break;
        }
        apply(&direction, &mut av, &mut tmp);
        let denom = dot(&direction, &av);
        if denom <= 0.0 || !denom.is_finite() {
            break;
        }
        let alpha = gamma / denom;
        for (w, d) in weights.iter_mut().zip(&direction) {
            *w += alpha * d;
        }
        for (r, a) in residual.iter_mut().zip(&av) {
            *r -= alpha * a;
        }
        let gamma_new = dot(&residual, &residual);
        if gamma_new.sqrt() <= 1e-16 * (1.0 + gamma.sqrt()) {
            break;
        }
        let beta = gamma_new / gamma;
        gamma = gamma_new;
        for (d, r) in direction.iter_mut().zip(&residual) {
            *d = r + beta * *d;
        }
    }
}

fn sparse_dot(a: &SparseVector, b: &SparseVector) -> f64 {
    let mut total = 0.0;
    let (mut i, mut k) = (0, 0);
    let ae = a.entries();
    let be = b.entries();
    while i < ae.len() && k < be.len() {
        match ae[i].0.cmp(&be[k].0) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => k += 1,
            std::cmp::Ordering::Equal => {
                total += ae[i].1 * be[k].1;
                i += 1;
                k += 1;
            }
        }
    }
    total
}

/// A linear predictor packaged with the featurization recipe that maps raw
/// text into its predictor space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearModel {
    fit: LinearFit,
    recipe: Recipe,
}

impl LinearModel {
    pub fn new(fit: LinearFit, recipe: Recipe) -> Result<Self> {
        if fit.weights.len() != recipe.vocabulary.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} weights for a vocabulary of {} terms",
                fit.weights.len(),
                recipe.vocabulary.len()
            )));
        }
        Ok(LinearModel { fit, recipe })
    }

    pub fn intercept(&self) -> f64 {
        self.fit.intercept
    }

    pub fn weights(&self) -> &[f64] {
        &self.fit.weights
    }

    pub fn recipe(&self) -> &Recipe {
        &self.recipe
    }

    /// Applies the full recipe (tokenize → n-grams → counts → optional
    /// TF-IDF) and evaluates `α + β·v`. Out-of-vocabulary terms contribute
    /// nothing; empty text predicts `α`.
    pub fn predict_text(&self, text: &str) -> f64 {
        self.fit.predict(&self.recipe.vectorize(text))
    }

    /// As [`predict_text`](Self::predict_text) for pre-tokenized terms.
    pub fn predict_terms(&self, terms: &[String]) -> f64 {
        self.fit.predict(&self.recipe.vectorize_terms(terms))
    }

    /// `α + β·v` for an already-vectorized input.
    pub fn predict_vector(&self, v: &SparseVector) -> f64 {
        self.fit.predict(v)
    }
}

/// k-nearest-neighbor regressor over stored training rows.
#[derive(Debug, Clone, PartialEq)]
pub struct KnnModel {
    train_matrix: FeatureMatrix,
    train_scores: Vec<f64>,
    k: usize,
}

/// Stores the training data verbatim after validating `1 ≤ k ≤ rows`.
pub fn fit_knn(train_matrix: FeatureMatrix, train_scores: Vec<f64>, k: usize) -> Result<KnnModel> {
    if train_matrix.n_rows() != train_scores.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} feature rows but {} scores",
            train_matrix.n_rows(),
            train_scores.len()
        )));
    }
    if k == 0 || k > train_matrix.n_rows() {
        return Err(Error::InvalidArgument(format!(
            "k must satisfy 1 <= k <= {} training rows, got {k}",
            train_matrix.n_rows()
        )));
    }
    Ok(KnnModel {
        train_matrix,
        train_scores,
        k,
    })
}

impl KnnModel {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn train_matrix(&self) -> &FeatureMatrix {
        &self.train_matrix
    }

    pub fn train_scores(&self) -> &[f64] {
        &self.train_scores
    }

    /// Mean score of the k training rows nearest to `z` in Euclidean
    /// distance. Rows are ranked by squared distance with ties broken by
    /// ascending training-row index.
    pub fn predict(&self, z: &SparseVector) -> f64 {
        assert_eq!(
            z.dim(),
            self.train_matrix.dim(),
            "query dimension must match the training dimension"
        );
        let mut ranked: Vec<(f64, usize)> = self
            .train_matrix
            .rows()
            .iter()
            .enumerate()
            .map(|(i, row)| (row.squared_distance(z), i))
            .collect();
        ranked.sort_unstable_by(|a, b| {
            a.0.partial_cmp(&b.0)
                .expect("distances are finite")
                .then_with(|| a.1.cmp(&b.1))
        });
        let total: f64 = ranked[..self.k]
            .iter()
            .map(|&(_, i)| self.train_scores[i])
            .sum();
        total / self.k as f64
    }
}
