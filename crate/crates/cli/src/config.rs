//! Experiment configuration (TOML).

use std::path::{Path, PathBuf};

use mlo_core::{GaussianMeanModel, GaussianPrecisionModel, LogisticModel, Model};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

/// Environment variable that overrides `output_dir`.
pub const OUTPUT_DIR_ENV: &str = "MLO_OUTPUT_DIR";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    #[serde(default = "one")]
    pub replications: usize,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default = "default_output")]
    pub output_dir: PathBuf,
    #[serde(default = "default_alpha")]
    pub hpd_alpha: f64,
    /// Also write every chain as CSV (large).
    #[serde(default)]
    pub save_chains: bool,
    pub model: ModelConfig,
    pub data: DataConfig,
    pub chain: ChainSettings,
    pub arms: Vec<ArmConfig>,
}

fn one() -> usize {
    1
}

fn default_output() -> PathBuf {
    PathBuf::from("results")
}

fn default_alpha() -> f64 {
    0.05
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelConfig {
    GaussianMean {
        #[serde(default)]
        prior_mean: f64,
        prior_sd: f64,
    },
    GaussianPrecision {
        gamma_shape: f64,
        gamma_rate: f64,
    },
    Logistic {
        prior_sd: f64,
        #[serde(default)]
        with_intercept: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "snake_case", deny_unknown_fields)]
pub enum DataConfig {
    /// Fresh data for every replication, generated from `theta_true`
    /// (reported scale, e.g. `τ` for the precision model).
    Synthetic { n: usize, theta_true: Vec<f64> },
    /// One fixed data set shared by all replications.
    Csv {
        path: PathBuf,
        label_column: String,
        covariate_columns: Vec<String>,
        #[serde(default)]
        standardize: bool,
        #[serde(default)]
        add_intercept: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scale {
    Scalar(f64),
    PerCoordinate(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainSettings {
    pub iters: usize,
    #[serde(default)]
    pub burn: usize,
    #[serde(default = "one")]
    pub thin: usize,
    #[serde(default = "unit_scale")]
    pub proposal_scale: Scale,
    /// Starting point on the reported scale; the MLE when absent.
    #[serde(default)]
    pub init: Option<Vec<f64>>,
}

fn unit_scale() -> Scale {
    Scale::Scalar(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Full,
    Mlo,
    Uniform,
    Adaptive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArmConfig {
    pub name: String,
    pub method: Method,
    /// Subsample sizes (initial sizes for `adaptive`); ignored by `full`.
    #[serde(default)]
    pub r: Vec<usize>,
    /// Anchor for MLO weights on the reported scale; the MLE when absent.
    #[serde(default)]
    pub weights_at: Option<Vec<f64>>,
    #[serde(default = "default_r_max")]
    pub r_max: usize,
    #[serde(default = "default_delta")]
    pub delta: f64,
}

fn default_r_max() -> usize {
    5000
}

fn default_delta() -> f64 {
    mlo_core::estimators::DEFAULT_DELTA
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads a config file; relative CSV paths resolve against its directory
    /// and `MLO_OUTPUT_DIR` overrides the output directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Io(format!("{}: {e}", path.display())))?;
        let mut cfg = Self::from_toml(&text)?;
        if let DataConfig::Csv { path: csv, .. } = &mut cfg.data {
            if csv.is_relative() {
                if let Some(dir) = path.parent() {
                    *csv = dir.join(&*csv);
                }
            }
        }
        if let Some(dir) = std::env::var_os(OUTPUT_DIR_ENV) {
            cfg.output_dir = PathBuf::from(dir);
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let fail = |m: String| Err(HarnessError::Config(m));
        if self.replications == 0 {
            return fail("replications must be at least 1".into());
        }
        if self.arms.is_empty() {
            return fail("at least one arm is required".into());
        }
        if !(self.hpd_alpha > 0.0 && self.hpd_alpha < 1.0) {
            return fail(format!("hpd_alpha must lie in (0, 1), got {}", self.hpd_alpha));
        }
        if self.chain.iters == 0 || self.chain.thin == 0 || self.chain.burn >= self.chain.iters {
            return fail("chain needs iters >= 1, thin >= 1 and burn < iters".into());
        }
        let mut names: Vec<&str> = self.arms.iter().map(|a| a.name.as_str()).collect();
        names.sort_unstable();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return fail("arm names must be unique".into());
        }
        for arm in &self.arms {
            if arm.method != Method::Full && arm.r.is_empty() {
                return fail(format!("arm '{}' needs at least one subsample size r", arm.name));
            }
            if arm.r.contains(&0) {
                return fail(format!("arm '{}' has r = 0", arm.name));
            }
            if arm.method == Method::Adaptive && arm.r.iter().any(|&r| r > arm.r_max) {
                return fail(format!("arm '{}' has an initial r above r_max", arm.name));
            }
            if arm.weights_at.is_some() && arm.method != Method::Mlo && arm.method != Method::Adaptive {
                return fail(format!("arm '{}': weights_at only applies to mlo/adaptive arms", arm.name));
            }
        }
        match &self.data {
            DataConfig::Synthetic { n, theta_true } => {
                if *n == 0 || theta_true.is_empty() {
                    return fail("synthetic data needs n >= 1 and theta_true".into());
                }
                if !matches!(self.model, ModelConfig::Logistic { .. }) && theta_true.len() != 1 {
                    return fail("scalar models take a single theta_true".into());
                }
                if let ModelConfig::Logistic { with_intercept: true, .. } = self.model {
                    return fail("synthetic logistic data has no intercept column; set with_intercept = false".into());
                }
            }
            DataConfig::Csv {
                covariate_columns,
                add_intercept,
                ..
            } => {
                if !matches!(self.model, ModelConfig::Logistic { .. }) {
                    return fail("CSV data is only supported for the logistic model".into());
                }
                if let ModelConfig::Logistic { with_intercept: true, .. } = self.model {
                    if *add_intercept {
                        return fail("use either model.with_intercept or data.add_intercept, not both".into());
                    }
                }
                if covariate_columns.is_empty() {
                    return fail("CSV data needs covariate columns".into());
                }
            }
        }
        Ok(())
    }

    /// Builds the model for a data set with row arity `arity`.
    pub fn build_model(&self, arity: usize) -> Result<Box<dyn Model>> {
        Ok(match self.model {
            ModelConfig::GaussianMean { prior_mean, prior_sd } => {
                Box::new(GaussianMeanModel::new(prior_mean, prior_sd)?)
            }
            ModelConfig::GaussianPrecision {
                gamma_shape,
                gamma_rate,
            } => Box::new(GaussianPrecisionModel::new(gamma_shape, gamma_rate)?),
            ModelConfig::Logistic {
                prior_sd,
                with_intercept,
            } => Box::new(LogisticModel::new(arity.saturating_sub(1), prior_sd, with_intercept)?),
        })
    }

    pub fn parameter_names(&self, dim: usize) -> Vec<String> {
        match self.model {
            ModelConfig::GaussianMean { .. } => vec!["mu".into()],
            ModelConfig::GaussianPrecision { .. } => vec!["tau".into()],
            ModelConfig::Logistic { .. } => (0..dim).map(|j| format!("theta_{j}")).collect(),
        }
    }

    /// Per-coordinate proposal scales for a `dim`-dimensional parameter.
    pub fn proposal_scales(&self, dim: usize) -> Result<Vec<f64>> {
        match &self.chain.proposal_scale {
            Scale::Scalar(s) => Ok(vec![*s; dim]),
            Scale::PerCoordinate(v) if v.len() == dim => Ok(v.clone()),
            Scale::PerCoordinate(v) => Err(HarnessError::Config(format!(
                "proposal_scale has {} entries for a {dim}-dimensional parameter",
                v.len()
            ))),
        }
    }
}
