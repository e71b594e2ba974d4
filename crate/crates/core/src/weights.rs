//! Subsampling probabilities and O(1) categorical draws.

use std::io::Write;

use rand::Rng;

use crate::data::DataMatrix;
use crate::error::{Error, Result};
use crate::model::Model;

/// Relative floor applied to zero scores, as a fraction of the mean score.
pub const SCORE_FLOOR_REL: f64 = 1e-12;

/// Walker/Vose alias table.
#[derive(Debug, Clone, PartialEq)]
pub struct AliasTable {
    prob: Vec<f64>,
    alias: Vec<usize>,
}

impl AliasTable {
    /// Builds a table from non-negative weights. The weights are normalised
    /// internally, so they only need to be proportional to the target
    /// probabilities.
    pub fn new(weights: &[f64]) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidArgument("alias table needs at least one weight".into()));
        }
        if let Some((index, &value)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !(w.is_finite() && **w >= 0.0))
        {
            return Err(Error::NonFiniteWeight { index, value });
        }
        let total: f64 = weights.iter().sum();
        if !(total > 0.0 && total.is_finite()) {
            return Err(Error::InvalidArgument(format!("weights sum to {total}")));
        }

        let n = weights.len();
        let scale = n as f64 / total;
        let mut scaled: Vec<f64> = weights.iter().map(|w| w * scale).collect();
        let mut prob = vec![1.0; n];
        let mut alias: Vec<usize> = (0..n).collect();

        let (mut small, mut large): (Vec<usize>, Vec<usize>) = (0..n).partition(|&i| scaled[i] < 1.0);
        while let (Some(&l), Some(&g)) = (small.last(), large.last()) {
            small.pop();
            large.pop();
            prob[l] = scaled[l];
            alias[l] = g;
            scaled[g] = (scaled[g] + scaled[l]) - 1.0;
            if scaled[g] < 1.0 {
                small.push(g);
            } else {
                large.push(g);
            }
        }
        // Leftovers on either stack are full columns up to rounding.
        for i in small.into_iter().chain(large) {
            prob[i] = 1.0;
            alias[i] = i;
        }
        Ok(Self { prob, alias })
    }

    pub fn len(&self) -> usize {
        self.prob.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prob.is_empty()
    }

    #[inline]
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let column = rng.random_range(0..self.prob.len());
        let u: f64 = rng.random();
        if u < self.prob[column] {
            column
        } else {
            self.alias[column]
        }
    }

    /// Exact probability of each outcome implied by the table.
    pub fn implied_probabilities(&self) -> Vec<f64> {
        let n = self.prob.len();
        let mut out = vec![0.0; n];
        for (column, (&p, &a)) in self.prob.iter().zip(&self.alias).enumerate() {
            out[column] += p;
            out[a] += 1.0 - p;
        }
        out.iter_mut().for_each(|v| *v /= n as f64);
        out
    }
}

/// Normalised subsampling probabilities `η` with their alias table.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsampleWeights {
    eta: Vec<f64>,
    /// `1 / (n η_i)`, the inverse-probability factor of each point.
    inv_n_eta: Vec<f64>,
    alias: AliasTable,
    floor_applied: bool,
}

impl SubsampleWeights {
    /// Wraps arbitrary positive probabilities (normalised here).
    pub fn from_probabilities(eta: &[f64]) -> Result<Self> {
        if let Some((index, &value)) = eta
            .iter()
            .enumerate()
            .find(|(_, w)| !(w.is_finite() && **w > 0.0))
        {
            return Err(Error::NonFiniteWeight { index, value });
        }
        Self::build(eta, false)
    }

    fn build(scores: &[f64], floor_applied: bool) -> Result<Self> {
        let total: f64 = scores.iter().sum();
        let eta: Vec<f64> = scores.iter().map(|s| s / total).collect();
        let n = eta.len() as f64;
        let inv_n_eta = eta.iter().map(|e| 1.0 / (n * e)).collect();
        let alias = AliasTable::new(&eta)?;
        Ok(Self {
            eta,
            inv_n_eta,
            alias,
            floor_applied,
        })
    }

    pub fn n(&self) -> usize {
        self.eta.len()
    }

    pub fn eta(&self) -> &[f64] {
        &self.eta
    }

    #[inline]
    pub fn inv_n_eta(&self, i: usize) -> f64 {
        self.inv_n_eta[i]
    }

    pub fn alias_table(&self) -> &AliasTable {
        &self.alias
    }

    /// Whether any score was raised to the zero-score floor.
    pub fn floor_applied(&self) -> bool {
        self.floor_applied
    }

    /// Writes `index,eta` rows.
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "index,eta")?;
        for (i, e) in self.eta.iter().enumerate() {
            writeln!(out, "{i},{e}")?;
        }
        Ok(())
    }
}

/// `|log p(x_i | θ)|` for every row, floored at [`SCORE_FLOOR_REL`] times the
/// mean score. Returns the scores and whether the floor was hit.
pub fn mlo_scores<M: Model + ?Sized>(
    model: &M,
    data: &DataMatrix,
    theta_hat: &[f64],
) -> Result<(Vec<f64>, bool)> {
    if theta_hat.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidArgument("anchor parameter must be finite".into()));
    }
    let mut scores: Vec<f64> = data
        .rows()
        .map(|x| model.log_density(x, theta_hat).abs())
        .collect();
    if let Some((index, &value)) = scores.iter().enumerate().find(|(_, s)| !s.is_finite()) {
        return Err(Error::NonFiniteWeight { index, value });
    }
    let mean = scores.iter().sum::<f64>() / scores.len() as f64;
    if mean == 0.0 {
        return Err(Error::AllZeroScores);
    }
    let floor = SCORE_FLOOR_REL * mean;
    let mut floor_applied = false;
    for s in &mut scores {
        if *s < floor {
            *s = floor;
            floor_applied = true;
        }
    }
    Ok((scores, floor_applied))
}

/// Variance-minimising probabilities `η_i ∝ |log p(x_i | θ)|` evaluated at a
/// fixed anchor, normally the MLE.
pub fn mlo_weights<M: Model + ?Sized>(
    model: &M,
    data: &DataMatrix,
    theta_hat: &[f64],
) -> Result<SubsampleWeights> {
    let (scores, floor_applied) = mlo_scores(model, data, theta_hat)?;
    SubsampleWeights::build(&scores, floor_applied)
}

pub fn uniform_weights(n: usize) -> Result<SubsampleWeights> {
    if n == 0 {
        return Err(Error::InvalidArgument("uniform weights need n >= 1".into()));
    }
    let eta = vec![1.0 / n as f64; n];
    let inv_n_eta = vec![1.0; n];
    let alias = AliasTable::new(&eta)?;
    Ok(SubsampleWeights {
        eta,
        inv_n_eta,
        alias,
        floor_applied: false,
    })
}

/// Indices of a subsample drawn with replacement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSample {
    pub indices: Vec<usize>,
}

impl IndexSample {
    pub fn r(&self) -> usize {
        self.indices.len()
    }
}

/// `r` i.i.d. draws from `weights`.
pub fn draw_subsample<R: Rng + ?Sized>(
    weights: &SubsampleWeights,
    r: usize,
    rng: &mut R,
) -> Result<IndexSample> {
    if r == 0 {
        return Err(Error::InvalidArgument("subsample size must be at least 1".into()));
    }
    let indices = (0..r).map(|_| weights.alias.draw(rng)).collect();
    Ok(IndexSample { indices })
}
