//! Synthetic data generators and CSV ingestion.

use std::path::Path;

use mlo_core::DataMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, StandardNormal};

use crate::error::{HarnessError, Result};

/// `n` draws from `N(mu_true, 1)`.
pub fn generate_gaussian_mean_data(n: usize, mu_true: f64, seed: u64) -> Result<DataMatrix> {
    if n == 0 {
        return Err(HarnessError::Config("n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dist = Normal::new(mu_true, 1.0).map_err(|e| HarnessError::Config(e.to_string()))?;
    let xs: Vec<f64> = (0..n).map(|_| dist.sample(&mut rng)).collect();
    Ok(DataMatrix::from_scalars(&xs)?)
}

/// `n` draws from `N(0, 1/τ)`.
pub fn generate_gaussian_precision_data(n: usize, tau_true: f64, seed: u64) -> Result<DataMatrix> {
    if n == 0 || tau_true.is_nan() || tau_true <= 0.0 {
        return Err(HarnessError::Config(format!(
            "need n >= 1 and a positive precision, got n = {n}, tau = {tau_true}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dist = Normal::new(0.0, tau_true.sqrt().recip()).map_err(|e| HarnessError::Config(e.to_string()))?;
    let xs: Vec<f64> = (0..n).map(|_| dist.sample(&mut rng)).collect();
    Ok(DataMatrix::from_scalars(&xs)?)
}

/// Logistic regression rows `(z_1, …, z_p, y)` with `z_ij ~ N(0, 1)` and
/// `y_i ~ Bernoulli(1 / (1 + exp(−z_iᵀθ)))`.
pub fn generate_logistic_data(n: usize, theta_true: &[f64], seed: u64) -> Result<DataMatrix> {
    if n == 0 || theta_true.is_empty() {
        return Err(HarnessError::Config("logistic data needs n >= 1 and dim(theta) >= 1".into()));
    }
    let p = theta_true.len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = Vec::with_capacity(n * (p + 1));
    for _ in 0..n {
        let mut eta = 0.0;
        for t in theta_true {
            let z: f64 = StandardNormal.sample(&mut rng);
            eta += z * t;
            values.push(z);
        }
        let prob = 1.0 / (1.0 + (-eta).exp());
        values.push(if rng.random::<f64>() < prob { 1.0 } else { 0.0 });
    }
    Ok(DataMatrix::from_flat(values, p + 1)?)
}

/// Loads a logistic regression data set from a CSV file with a header row.
///
/// Rows come out as `([1,] z_1, …, z_k, y)`: the optional intercept column
/// goes first so that it becomes `θ_0`. Standardisation uses the sample SD.
pub fn load_csv_dataset(
    path: &Path,
    label_column: &str,
    covariate_columns: &[String],
    standardize: bool,
    add_intercept: bool,
) -> Result<DataMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
    let headers = reader
        .headers()
        .map_err(|e| HarnessError::Parse {
            row: 1,
            column: 0,
            message: e.to_string(),
        })?
        .clone();
    let position = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| HarnessError::MissingColumn(name.to_string()))
    };
    let label_at = position(label_column)?;
    let cov_at = covariate_columns
        .iter()
        .map(|c| position(c))
        .collect::<Result<Vec<_>>>()?;

    let k = cov_at.len();
    let mut covariates: Vec<Vec<f64>> = vec![Vec::new(); k];
    let mut labels = Vec::new();
    for (i, record) in reader.records().enumerate() {
        // Header is line 1, so data row i sits on line i + 2.
        let row = i + 2;
        let record = record.map_err(|e| HarnessError::Parse {
            row,
            column: 0,
            message: e.to_string(),
        })?;
        let field = |col: usize| -> Result<f64> {
            let raw = record.get(col).unwrap_or("");
            raw.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| HarnessError::Parse {
                    row,
                    column: col + 1,
                    message: format!("'{raw}' is not a finite number"),
                })
        };
        for (slot, &col) in covariates.iter_mut().zip(&cov_at) {
            slot.push(field(col)?);
        }
        let y = field(label_at)?;
        if y != 0.0 && y != 1.0 {
            return Err(HarnessError::NonBinaryLabel { row, value: y });
        }
        labels.push(y);
    }
    let n = labels.len();
    if n == 0 {
        return Err(HarnessError::Parse {
            row: 2,
            column: 0,
            message: "no data rows".into(),
        });
    }

    if standardize {
        if n < 2 {
            return Err(HarnessError::Config("standardisation needs at least 2 rows".into()));
        }
        for (col, name) in covariates.iter_mut().zip(covariate_columns) {
            let mean = col.iter().sum::<f64>() / n as f64;
            let sd = (col.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0)).sqrt();
            if sd == 0.0 {
                return Err(HarnessError::Config(format!("column '{name}' is constant")));
            }
            col.iter_mut().for_each(|v| *v = (*v - mean) / sd);
        }
    }

    let arity = k + 1 + usize::from(add_intercept);
    let mut values = Vec::with_capacity(n * arity);
    for i in 0..n {
        if add_intercept {
            values.push(1.0);
        }
        values.extend(covariates.iter().map(|c| c[i]));
        values.push(labels[i]);
    }
    Ok(DataMatrix::from_flat(values, arity)?)
}
