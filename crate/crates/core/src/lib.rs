//! Text-regression engine for scored review corpora.
//!
//! The pipeline turns review texts with numeric quality scores into sparse
//! n-gram predictors and fits a family of regressors on top of them:
//!
//! - [`corpus`]: loading, cleaning, tokenization, and corpus statistics
//! - [`featurize`]: vocabulary construction, count and TF-IDF vectors
//! - [`regress`]: naive mean, least-squares, ridge, and k-NN regression
//! - [`evaluate`]: train/test splits, k-fold cross-validation, MSE/MAE,
//!   hyperparameter grid search
//! - [`interpret`]: coefficient rankings and example prediction tables
//! - [`model`]: trained-model wrapper and JSON persistence
//!
//! All randomness is driven by explicit integer seeds through a fixed
//! generator (ChaCha20), so every split, fold assignment, and fit is
//! reproducible across platforms.

pub mod corpus;
pub mod error;
pub mod evaluate;
pub mod featurize;
pub mod interpret;
mod linalg;
pub mod model;
pub mod regress;

pub use error::{Error, Result};
