//! Nonuniform subsampled Metropolis–Hastings for tall data.
//!
//! The full-data log-likelihood `ℓ_n(θ) = (1/n) Σ log p(x_i | θ)` is replaced
//! inside the accept test by an inverse-probability-weighted subsample
//! estimate. Subsampling probabilities are proportional to `|log p(x_i | θ̂)|`
//! at the maximum likelihood estimate, which minimises the estimator's
//! variance near the posterior mode and only has to be computed once.
//!
//! The crate is organised bottom-up:
//!
//! * [`model`] – the [`Model`] trait and the Gaussian mean, Gaussian precision
//!   and logistic regression targets.
//! * [`weights`] – subsampling probabilities and the alias table used to draw
//!   indices with replacement.
//! * [`estimators`] – subsampled log-likelihoods, accept thresholds, analytic
//!   variances and the CLT-based subsample size rules.
//! * [`samplers`] – full-data, fixed-size subsampled and adaptive chains.
//! * [`diagnostics`] – burn-in/thinning, posterior summaries, HPD intervals and
//!   replication metrics.
//! * [`chain_io`] – CSV and binary serialisation of chain runs.

pub mod chain_io;
pub mod data;
pub mod diagnostics;
pub mod error;
pub mod estimators;
pub mod model;
pub mod samplers;
pub mod weights;

pub use data::DataMatrix;
pub use diagnostics::{PosteriorSummary, ReplicationReport};
pub use error::{Error, Result};
pub use estimators::SizeRule;
pub use model::{full_loglik, GaussianMeanModel, GaussianPrecisionModel, LogisticModel, Model};
pub use samplers::{ChainConfig, ChainRun, RandomWalkProposal};
pub use weights::{AliasTable, IndexSample, SubsampleWeights};
