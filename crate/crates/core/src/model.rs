//! Target models: per-observation log-density, log-prior and MLE.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use statrs::function::gamma::ln_gamma;

use crate::data::DataMatrix;
use crate::error::{Error, Result};

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

/// A likelihood for i.i.d. observations together with a prior.
///
/// Implementations are immutable after construction and shared freely across
/// chains and threads.
pub trait Model: Send + Sync {
    fn name(&self) -> &'static str;

    fn param_dim(&self) -> usize;

    /// `log p(x | θ)` for a single observation.
    fn log_density(&self, x: &[f64], theta: &[f64]) -> f64;

    /// Gradient of [`Model::log_density`] with respect to `θ`, written into `grad`.
    fn grad_log_density(&self, x: &[f64], theta: &[f64], grad: &mut [f64]);

    /// `log p(θ)`, possibly `-inf` outside the support.
    fn log_prior(&self, theta: &[f64]) -> f64;

    /// Maximiser of the full-data log-likelihood (the prior is ignored).
    fn mle(&self, data: &DataMatrix) -> Result<Vec<f64>>;

    /// Validates that `data` has the row layout this model expects.
    fn check_data(&self, data: &DataMatrix) -> Result<()>;

    /// Maps the sampled parameterisation to the one results are reported on.
    fn to_reported(&self, theta: &[f64]) -> Vec<f64> {
        theta.to_vec()
    }

    /// Inverse of [`Model::to_reported`].
    #[allow(clippy::wrong_self_convention)]
    fn from_reported(&self, reported: &[f64]) -> Result<Vec<f64>> {
        Ok(reported.to_vec())
    }
}

/// `ℓ_n(θ)`: the mean (not the sum) of per-observation log-densities.
pub fn full_loglik<M: Model + ?Sized>(model: &M, data: &DataMatrix, theta: &[f64]) -> f64 {
    let sum: f64 = data.rows().map(|x| model.log_density(x, theta)).sum();
    sum / data.n() as f64
}

/// Gradient of [`full_loglik`].
pub fn full_loglik_grad<M: Model + ?Sized>(model: &M, data: &DataMatrix, theta: &[f64]) -> Vec<f64> {
    let p = model.param_dim();
    let mut total = vec![0.0; p];
    let mut g = vec![0.0; p];
    for x in data.rows() {
        model.grad_log_density(x, theta, &mut g);
        for (t, gi) in total.iter_mut().zip(&g) {
            *t += gi;
        }
    }
    let n = data.n() as f64;
    total.iter_mut().for_each(|t| *t /= n);
    total
}

fn check_scalar(data: &DataMatrix) -> Result<()> {
    if data.arity() != 1 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: data.arity(),
        });
    }
    Ok(())
}

/// `x ~ N(μ, 1)` with a Gaussian prior on `μ`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianMeanModel {
    prior_mean: f64,
    prior_sd: f64,
}

impl GaussianMeanModel {
    pub fn new(prior_mean: f64, prior_sd: f64) -> Result<Self> {
        if !(prior_sd > 0.0 && prior_sd.is_finite()) || !prior_mean.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "gaussian mean prior needs finite mean and positive sd, got N({prior_mean}, {prior_sd}^2)"
            )));
        }
        Ok(Self {
            prior_mean,
            prior_sd,
        })
    }

    pub fn prior_mean(&self) -> f64 {
        self.prior_mean
    }

    pub fn prior_sd(&self) -> f64 {
        self.prior_sd
    }
}

impl Model for GaussianMeanModel {
    fn name(&self) -> &'static str {
        "gaussian_mean"
    }

    fn param_dim(&self) -> usize {
        1
    }

    #[inline]
    fn log_density(&self, x: &[f64], theta: &[f64]) -> f64 {
        let d = x[0] - theta[0];
        -HALF_LN_2PI - 0.5 * d * d
    }

    fn grad_log_density(&self, x: &[f64], theta: &[f64], grad: &mut [f64]) {
        grad[0] = x[0] - theta[0];
    }

    fn log_prior(&self, theta: &[f64]) -> f64 {
        let z = (theta[0] - self.prior_mean) / self.prior_sd;
        -HALF_LN_2PI - self.prior_sd.ln() - 0.5 * z * z
    }

    fn mle(&self, data: &DataMatrix) -> Result<Vec<f64>> {
        check_scalar(data)?;
        let mean = data.as_flat().iter().sum::<f64>() / data.n() as f64;
        Ok(vec![mean])
    }

    fn check_data(&self, data: &DataMatrix) -> Result<()> {
        check_scalar(data)
    }
}

/// `x ~ N(0, 1/τ)` with `τ ~ Gamma(shape, rate)`.
///
/// The chain runs on `ρ = log τ`; the log-prior carries the Jacobian `+ρ` so a
/// symmetric random walk in `ρ` targets the right posterior.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianPrecisionModel {
    shape: f64,
    rate: f64,
    log_norm: f64,
}

impl GaussianPrecisionModel {
    pub fn new(shape: f64, rate: f64) -> Result<Self> {
        if !(shape > 0.0 && rate > 0.0 && shape.is_finite() && rate.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "gamma prior needs positive shape and rate, got Gamma({shape}, {rate})"
            )));
        }
        Ok(Self {
            shape,
            rate,
            log_norm: shape * rate.ln() - ln_gamma(shape),
        })
    }
}

impl Model for GaussianPrecisionModel {
    fn name(&self) -> &'static str {
        "gaussian_precision"
    }

    fn param_dim(&self) -> usize {
        1
    }

    #[inline]
    fn log_density(&self, x: &[f64], theta: &[f64]) -> f64 {
        let rho = theta[0];
        0.5 * rho - 0.5 * rho.exp() * x[0] * x[0] - HALF_LN_2PI
    }

    fn grad_log_density(&self, x: &[f64], theta: &[f64], grad: &mut [f64]) {
        grad[0] = 0.5 - 0.5 * theta[0].exp() * x[0] * x[0];
    }

    fn log_prior(&self, theta: &[f64]) -> f64 {
        // Gamma density at τ = e^ρ times the Jacobian dτ/dρ = e^ρ.
        let rho = theta[0];
        self.log_norm + self.shape * rho - self.rate * rho.exp()
    }

    fn mle(&self, data: &DataMatrix) -> Result<Vec<f64>> {
        check_scalar(data)?;
        let ss: f64 = data.as_flat().iter().map(|x| x * x).sum();
        if ss <= 0.0 {
            return Err(Error::DegenerateData(
                "all observations are zero; precision MLE is infinite".into(),
            ));
        }
        Ok(vec![(data.n() as f64 / ss).ln()])
    }

    fn check_data(&self, data: &DataMatrix) -> Result<()> {
        check_scalar(data)
    }

    fn to_reported(&self, theta: &[f64]) -> Vec<f64> {
        vec![theta[0].exp()]
    }

    fn from_reported(&self, reported: &[f64]) -> Result<Vec<f64>> {
        match reported {
            [tau] if *tau > 0.0 && tau.is_finite() => Ok(vec![tau.ln()]),
            _ => Err(Error::InvalidArgument(format!(
                "precision must be a single positive number, got {reported:?}"
            ))),
        }
    }
}

/// Bernoulli regression with logit link and independent Gaussian priors.
///
/// Rows are `(z_1, …, z_k, y)`. With an intercept the parameter is
/// `(θ_0, θ_1, …, θ_k)` and the linear predictor is `θ_0 + Σ θ_j z_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogisticModel {
    num_covariates: usize,
    prior_sd: f64,
    with_intercept: bool,
}

/// Newton-Raphson settings for the logistic MLE.
pub const NEWTON_MAX_ITERS: usize = 100;
pub const NEWTON_GRAD_TOL: f64 = 1e-8;
pub const NEWTON_RIDGE: f64 = 1e-8;
pub const NEWTON_STEP_TOL: f64 = 1e-6;

/// `log(1 + e^t)` without overflow.
#[inline]
pub fn log1p_exp(t: f64) -> f64 {
    if t > 0.0 {
        t + (-t).exp().ln_1p()
    } else {
        t.exp().ln_1p()
    }
}

#[inline]
fn sigmoid(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + (-t).exp())
    } else {
        let e = t.exp();
        e / (1.0 + e)
    }
}

impl LogisticModel {
    pub fn new(num_covariates: usize, prior_sd: f64, with_intercept: bool) -> Result<Self> {
        if !(prior_sd > 0.0 && prior_sd.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "logistic prior sd must be positive, got {prior_sd}"
            )));
        }
        if num_covariates == 0 && !with_intercept {
            return Err(Error::InvalidArgument(
                "logistic model needs at least one covariate or an intercept".into(),
            ));
        }
        Ok(Self {
            num_covariates,
            prior_sd,
            with_intercept,
        })
    }

    pub fn num_covariates(&self) -> usize {
        self.num_covariates
    }

    #[inline]
    fn linear_predictor(&self, x: &[f64], theta: &[f64]) -> f64 {
        let z = &x[..self.num_covariates];
        if self.with_intercept {
            theta[0] + z.iter().zip(&theta[1..]).map(|(a, b)| a * b).sum::<f64>()
        } else {
            z.iter().zip(theta).map(|(a, b)| a * b).sum()
        }
    }

    /// Design row including the implicit intercept.
    fn design(&self, x: &[f64], out: &mut [f64]) {
        let z = &x[..self.num_covariates];
        if self.with_intercept {
            out[0] = 1.0;
            out[1..].copy_from_slice(z);
        } else {
            out.copy_from_slice(z);
        }
    }
}

impl Model for LogisticModel {
    fn name(&self) -> &'static str {
        "logistic"
    }

    fn param_dim(&self) -> usize {
        self.num_covariates + usize::from(self.with_intercept)
    }

    #[inline]
    fn log_density(&self, x: &[f64], theta: &[f64]) -> f64 {
        let eta = self.linear_predictor(x, theta);
        let y = x[self.num_covariates];
        y * eta - log1p_exp(eta)
    }

    fn grad_log_density(&self, x: &[f64], theta: &[f64], grad: &mut [f64]) {
        let eta = self.linear_predictor(x, theta);
        let resid = x[self.num_covariates] - sigmoid(eta);
        self.design(x, grad);
        grad.iter_mut().for_each(|g| *g *= resid);
    }

    fn log_prior(&self, theta: &[f64]) -> f64 {
        let p = theta.len() as f64;
        let ss: f64 = theta.iter().map(|t| t * t).sum();
        -p * (HALF_LN_2PI + self.prior_sd.ln()) - 0.5 * ss / (self.prior_sd * self.prior_sd)
    }

    fn mle(&self, data: &DataMatrix) -> Result<Vec<f64>> {
        self.check_data(data)?;
        let p = self.param_dim();
        let n = data.n() as f64;
        let mut theta = vec![0.0; p];
        let mut row = vec![0.0; p];
        let mut grad_norm = f64::INFINITY;
        let mut current = full_loglik(self, data, &theta);

        for _ in 0..NEWTON_MAX_ITERS {
            let mut grad = DVector::<f64>::zeros(p);
            let mut info = DMatrix::<f64>::zeros(p, p);
            for x in data.rows() {
                self.design(x, &mut row);
                let mu = sigmoid(self.linear_predictor(x, &theta));
                let resid = x[self.num_covariates] - mu;
                let w = mu * (1.0 - mu);
                for a in 0..p {
                    grad[a] += resid * row[a];
                    for b in 0..=a {
                        info[(a, b)] += w * row[a] * row[b];
                    }
                }
            }
            grad /= n;
            info /= n;
            for a in 0..p {
                for b in 0..a {
                    info[(b, a)] = info[(a, b)];
                }
                info[(a, a)] += NEWTON_RIDGE;
            }

            grad_norm = grad.amax();
            let step = match info.cholesky() {
                Some(chol) => chol.solve(&grad),
                None => break,
            };
            // Under separation the gradient vanishes while Newton keeps taking
            // unit-size steps towards infinity; only a settled step counts.
            if grad_norm < NEWTON_GRAD_TOL && step.amax() < NEWTON_STEP_TOL {
                return Ok(theta);
            }

            // Step halving keeps the ascent monotone when the quadratic model overshoots.
            let mut scale = 1.0;
            let mut accepted = false;
            for _ in 0..40 {
                let trial: Vec<f64> = theta
                    .iter()
                    .zip(step.iter())
                    .map(|(t, s)| t + scale * s)
                    .collect();
                let value = full_loglik(self, data, &trial);
                if value.is_finite() && value >= current - 1e-15 * current.abs() {
                    theta = trial;
                    current = value;
                    accepted = true;
                    break;
                }
                scale *= 0.5;
            }
            if !accepted || theta.iter().any(|t| !t.is_finite()) {
                break;
            }
        }

        Err(Error::MleDidNotConverge {
            iterations: NEWTON_MAX_ITERS,
            grad_norm,
        })
    }

    fn check_data(&self, data: &DataMatrix) -> Result<()> {
        let expected = self.num_covariates + 1;
        if data.arity() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: data.arity(),
            });
        }
        for (i, x) in data.rows().enumerate() {
            let y = x[self.num_covariates];
            if y != 0.0 && y != 1.0 {
                return Err(Error::DegenerateData(format!(
                    "row {i}: logistic label must be 0 or 1, got {y}"
                )));
            }
        }
        Ok(())
    }
}

/// Standard-normal log density, shared by tests and proposals.
#[inline]
pub(crate) fn std_normal_logpdf(z: f64) -> f64 {
    -0.5 * (2.0 * PI).ln() - 0.5 * z * z
}
