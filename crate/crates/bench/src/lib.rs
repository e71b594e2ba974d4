//! Shared fixtures for the benchmarks.

use mlo_core::{DataMatrix, LogisticModel, Model};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// A synthetic logistic-regression problem with its MLE.
pub struct LogisticProblem {
    pub model: LogisticModel,
    pub data: DataMatrix,
    pub theta_hat: Vec<f64>,
}

/// `n` rows with standard-normal covariates and Bernoulli labels drawn
/// from `theta`.
pub fn logistic_problem(n: usize, theta: &[f64], seed: u64) -> LogisticProblem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = theta.len();
    let mut values = Vec::with_capacity(n * (p + 1));
    for _ in 0..n {
        let z: Vec<f64> = (0..p).map(|_| StandardNormal.sample(&mut rng)).collect();
        let eta: f64 = z.iter().zip(theta).map(|(a, b)| a * b).sum();
        let y = rng.random_bool(1.0 / (1.0 + (-eta).exp()));
        values.extend(z);
        values.push(f64::from(y));
    }
    let data = DataMatrix::from_flat(values, p + 1).expect("finite data");
    let model = LogisticModel::new(p, 10f64.sqrt(), false).expect("valid prior");
    let theta_hat = model.mle(&data).expect("MLE exists for non-separable data");
    LogisticProblem {
        model,
        data,
        theta_hat,
    }
}
