//! Chain post-processing and replication metrics.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::samplers::ChainRun;

/// Keeps draws `burn + thin, burn + 2·thin, …` (1-based iteration numbers).
pub fn burn_thin(run: &ChainRun, burn: usize, thin: usize) -> Result<Vec<Vec<f64>>> {
    if thin == 0 {
        return Err(Error::InvalidArgument("thin must be at least 1".into()));
    }
    if burn >= run.len() {
        return Err(Error::EmptyChain);
    }
    let kept: Vec<Vec<f64>> = run
        .draws
        .iter()
        .skip(burn + thin - 1)
        .step_by(thin)
        .cloned()
        .collect();
    if kept.is_empty() {
        return Err(Error::EmptyChain);
    }
    Ok(kept)
}

/// Applies `f` to every sample, e.g. to move from `log τ` to `τ`.
pub fn transform_samples<F: Fn(&[f64]) -> Vec<f64>>(samples: &[Vec<f64>], f: F) -> Vec<Vec<f64>> {
    samples.iter().map(|s| f(s)).collect()
}

/// Per-coordinate posterior mean, standard deviation and HPD interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PosteriorSummary {
    pub mean: Vec<f64>,
    pub sd: Vec<f64>,
    pub hpd_lo: Vec<f64>,
    pub hpd_hi: Vec<f64>,
    /// Nominal coverage `1 − α` of the HPD intervals.
    pub level: f64,
}

impl PosteriorSummary {
    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    /// CSV with columns `parameter,mean,sd,hpd_lo,hpd_hi`.
    pub fn write_csv<W: Write>(&self, mut out: W, names: &[String]) -> Result<()> {
        writeln!(out, "parameter,mean,sd,hpd_lo,hpd_hi")?;
        for j in 0..self.dim() {
            let name = names.get(j).cloned().unwrap_or_else(|| format!("theta_{j}"));
            writeln!(
                out,
                "{name},{},{},{},{}",
                self.mean[j], self.sd[j], self.hpd_lo[j], self.hpd_hi[j]
            )?;
        }
        Ok(())
    }
}

/// Number of sorted samples an HPD window at level `1 − α` must cover.
pub fn hpd_window_len(m: usize, alpha: f64) -> usize {
    // Guard against products like 0.95 * 100 = 95.00000000000001.
    let k = ((1.0 - alpha) * m as f64 - 1e-9).ceil() as usize;
    k.clamp(1, m)
}

/// Shortest interval covering `⌈(1 − α) m⌉` of the samples (Chen–Shao);
/// ties go to the leftmost window.
pub fn hpd_interval(values: &[f64], alpha: f64) -> Result<(f64, f64)> {
    if values.is_empty() {
        return Err(Error::EmptyChain);
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidArgument(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let k = hpd_window_len(sorted.len(), alpha);
    let (mut best, mut lo) = (f64::INFINITY, 0);
    for i in 0..=sorted.len() - k {
        let width = sorted[i + k - 1] - sorted[i];
        if width < best {
            best = width;
            lo = i;
        }
    }
    Ok((sorted[lo], sorted[lo + k - 1]))
}

pub fn posterior_summary(samples: &[Vec<f64>], alpha: f64) -> Result<PosteriorSummary> {
    if samples.len() < 2 {
        return Err(Error::InvalidArgument("posterior summary needs at least 2 samples".into()));
    }
    let p = samples[0].len();
    let m = samples.len() as f64;
    let mut summary = PosteriorSummary {
        mean: Vec::with_capacity(p),
        sd: Vec::with_capacity(p),
        hpd_lo: Vec::with_capacity(p),
        hpd_hi: Vec::with_capacity(p),
        level: 1.0 - alpha,
    };
    for j in 0..p {
        let column: Vec<f64> = samples.iter().map(|s| s[j]).collect();
        let mean = column.iter().sum::<f64>() / m;
        let var = column.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1.0);
        let (lo, hi) = hpd_interval(&column, alpha)?;
        summary.mean.push(mean);
        summary.sd.push(var.sqrt());
        summary.hpd_lo.push(lo);
        summary.hpd_hi.push(hi);
    }
    Ok(summary)
}

/// Empirical bias, SD and MSE of `B` replicated estimates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicationReport {
    pub bias: Vec<f64>,
    /// Sample SD of the estimates (`1/(B−1)` normalisation).
    pub sd: Vec<f64>,
    pub mse: Vec<f64>,
    pub replications: usize,
}

impl ReplicationReport {
    pub fn mse_sum(&self) -> f64 {
        self.mse.iter().sum()
    }
}

pub fn replication_metrics(estimates: &[Vec<f64>], truth: &[f64]) -> Result<ReplicationReport> {
    let b = estimates.len();
    if b < 2 {
        return Err(Error::InvalidArgument("replication metrics need B >= 2".into()));
    }
    if let Some(e) = estimates.iter().find(|e| e.len() != truth.len()) {
        return Err(Error::DimensionMismatch {
            expected: truth.len(),
            found: e.len(),
        });
    }
    let bf = b as f64;
    let mut report = ReplicationReport {
        bias: Vec::new(),
        sd: Vec::new(),
        mse: Vec::new(),
        replications: b,
    };
    for (j, &t) in truth.iter().enumerate() {
        let mean = estimates.iter().map(|e| e[j]).sum::<f64>() / bf;
        let ss = estimates.iter().map(|e| (e[j] - mean).powi(2)).sum::<f64>();
        let mse = estimates.iter().map(|e| (e[j] - t).powi(2)).sum::<f64>() / bf;
        report.bias.push(mean - t);
        report.sd.push((ss / (bf - 1.0)).sqrt());
        report.mse.push(mse);
    }
    Ok(report)
}

/// Effective sample size of a scalar series (Geyer's initial monotone
/// sequence estimator).
pub fn effective_sample_size(series: &[f64]) -> f64 {
    let m = series.len();
    if m < 4 {
        return m as f64;
    }
    let mean = series.iter().sum::<f64>() / m as f64;
    let centred: Vec<f64> = series.iter().map(|v| v - mean).collect();
    let c0 = centred.iter().map(|v| v * v).sum::<f64>() / m as f64;
    if c0 == 0.0 {
        return m as f64;
    }
    let rho = |lag: usize| -> f64 {
        centred[..m - lag]
            .iter()
            .zip(&centred[lag..])
            .map(|(a, b)| a * b)
            .sum::<f64>()
            / (m as f64 * c0)
    };
    let mut tau = -1.0;
    let mut prev_pair = f64::INFINITY;
    let mut lag = 0;
    while lag + 1 < m {
        let pair = rho(lag) + rho(lag + 1);
        if pair <= 0.0 {
            break;
        }
        let pair = pair.min(prev_pair);
        tau += 2.0 * pair;
        prev_pair = pair;
        lag += 2;
    }
    m as f64 / tau.max(1.0 / m as f64)
}
