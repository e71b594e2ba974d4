//! Subsampled log-likelihood estimators, accept thresholds, analytic
//! variances and the subsample size rules.
//!
//! Everything is on the per-datum (`1/n`) scale: `ℓ_n`, `Λ_n`, `ψ` and the
//! bounds `c_r` all live on the same scale.

use statrs::distribution::{ContinuousCDF, Normal};

use crate::data::DataMatrix;
use crate::error::{Error, Result};
use crate::model::{full_loglik, Model};
use crate::samplers::RandomWalkProposal;
use crate::weights::{mlo_scores, IndexSample, SubsampleWeights};

pub const DEFAULT_DELTA: f64 = 0.05;

/// Error probability `δ`, its two-sided normal critical value and the cap on
/// subsample size used by the adaptive sampler.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SizeRule {
    delta: f64,
    z_crit: f64,
    r_max: usize,
}

impl SizeRule {
    pub fn new(delta: f64, r_max: usize) -> Result<Self> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidArgument(format!("delta must lie in (0, 1), got {delta}")));
        }
        if r_max == 0 {
            return Err(Error::InvalidArgument("r_max must be at least 1".into()));
        }
        let z_crit = Normal::standard().inverse_cdf(1.0 - delta / 2.0);
        Ok(Self {
            delta,
            z_crit,
            r_max,
        })
    }

    /// Overrides the critical value directly (mainly for tests).
    pub fn with_z_crit(mut self, z_crit: f64) -> Result<Self> {
        if !(z_crit > 0.0 && z_crit.is_finite()) {
            return Err(Error::InvalidArgument(format!("z_crit must be positive, got {z_crit}")));
        }
        self.z_crit = z_crit;
        Ok(self)
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn z_crit(&self) -> f64 {
        self.z_crit
    }

    pub fn r_max(&self) -> usize {
        self.r_max
    }
}

impl Default for SizeRule {
    fn default() -> Self {
        Self::new(DEFAULT_DELTA, 5000).expect("default size rule is valid")
    }
}

/// `ℓ*_r(θ) = (1/r) Σ log p(x*_i | θ) / (n η*_i)`.
pub fn subsampled_loglik<M: Model + ?Sized>(
    model: &M,
    data: &DataMatrix,
    idx: &IndexSample,
    weights: &SubsampleWeights,
    theta: &[f64],
) -> f64 {
    let sum: f64 = idx
        .indices
        .iter()
        .map(|&i| weights.inv_n_eta(i) * model.log_density(data.row(i), theta))
        .sum();
    sum / idx.r() as f64
}

/// `Λ_n(θ, θ') = ℓ_n(θ') − ℓ_n(θ)`.
pub fn lambda_full<M: Model + ?Sized>(
    model: &M,
    data: &DataMatrix,
    theta: &[f64],
    theta_prime: &[f64],
) -> f64 {
    full_loglik(model, data, theta_prime) - full_loglik(model, data, theta)
}

/// `Λ*(θ, θ') = ℓ*_r(θ') − ℓ*_r(θ)` with one shared subsample.
pub fn lambda_star<M: Model + ?Sized>(
    model: &M,
    data: &DataMatrix,
    idx: &IndexSample,
    weights: &SubsampleWeights,
    theta: &[f64],
    theta_prime: &[f64],
) -> f64 {
    if theta == theta_prime {
        return 0.0;
    }
    subsampled_loglik(model, data, idx, weights, theta_prime)
        - subsampled_loglik(model, data, idx, weights, theta)
}

/// `ψ(u, θ, θ') = (1/n) [log u + log p(θ) + log q(θ'|θ) − log p(θ') − log q(θ|θ')]`.
///
/// The proposal is accepted iff `Λ > ψ`.
pub fn psi_threshold<M: Model + ?Sized>(
    u: f64,
    model: &M,
    proposal: &RandomWalkProposal,
    theta: &[f64],
    theta_prime: &[f64],
    n: usize,
) -> Result<f64> {
    if !(u > 0.0 && u <= 1.0) {
        return Err(Error::InvalidArgument(format!("u must lie in (0, 1], got {u}")));
    }
    let prior_prime = model.log_prior(theta_prime);
    if prior_prime == f64::NEG_INFINITY {
        return Err(Error::PriorZero);
    }
    let log_ratio = u.ln() + model.log_prior(theta) + proposal.log_density(theta_prime, theta)
        - prior_prime
        - proposal.log_density(theta, theta_prime);
    Ok(log_ratio / n as f64)
}

/// Variance of a single weighted draw `t_I / (n η_I)` with `I ~ η`:
/// `(1/n²) Σ t_i² / η_i − ((1/n) Σ t_i)²`.
pub fn weighted_term_variance(terms: &[f64], weights: &SubsampleWeights) -> f64 {
    let n = terms.len() as f64;
    let mean = terms.iter().sum::<f64>() / n;
    let second: f64 = terms
        .iter()
        .enumerate()
        .map(|(i, t)| t * t * weights.inv_n_eta(i))
        .sum::<f64>()
        / n;
    (second - mean * mean).max(0.0)
}

/// `V*[ℓ*_1(θ)]`; divide by `r` for a subsample of size `r`.
pub fn estimator_variance<M: Model + ?Sized>(
    model: &M,
    data: &DataMatrix,
    weights: &SubsampleWeights,
    theta: &[f64],
) -> f64 {
    let terms: Vec<f64> = data.rows().map(|x| model.log_density(x, theta)).collect();
    weighted_term_variance(&terms, weights)
}

/// Spread of `Λ*` under MLO weights:
/// `(1/r) (1/n) Σ d_i² / |log p(x_i|θ̂)| × (1/n) Σ |log p(x_j|θ̂)|`
/// with `d_i = log p(x_i|θ) − log p(x_i|θ')`.
///
/// For MLO weights this equals `(1/(r n²)) Σ d_i² / η_i`, the second moment
/// of a weighted difference term; it omits the `−Λ_n²/r` centring term, which
/// is negligible when `θ'` is near `θ`.
pub fn lambda_star_variance<M: Model + ?Sized>(
    model: &M,
    data: &DataMatrix,
    weights_mlo: &SubsampleWeights,
    theta: &[f64],
    theta_prime: &[f64],
    r: usize,
) -> f64 {
    let n = data.n() as f64;
    let second: f64 = data
        .rows()
        .enumerate()
        .map(|(i, x)| {
            let d = model.log_density(x, theta) - model.log_density(x, theta_prime);
            d * d * weights_mlo.inv_n_eta(i)
        })
        .sum::<f64>()
        / n;
    second / r as f64
}

/// Integerises a required size: ceil, at least 1, saturating on overflow.
pub fn size_from_raw(raw: f64) -> usize {
    if raw.is_nan() || raw <= 1.0 {
        1
    } else if raw >= usize::MAX as f64 {
        usize::MAX
    } else {
        raw.ceil() as usize
    }
}

fn scaled_size(z_crit: f64, c_r: f64, second_moment: f64) -> f64 {
    if second_moment == 0.0 {
        0.0
    } else if c_r == 0.0 {
        f64::INFINITY
    } else {
        (z_crit / c_r).powi(2) * second_moment
    }
}

fn check_bound(c_r: f64) -> Result<()> {
    if c_r.is_nan() || c_r < 0.0 || c_r.is_infinite() {
        return Err(Error::InvalidArgument(format!("c_r must be finite and >= 0, got {c_r}")));
    }
    Ok(())
}

/// Pre-ceiling `r^a`, computed from the full data and the MLE anchor.
pub fn required_size_full_raw<M: Model + ?Sized>(
    model: &M,
    data: &DataMatrix,
    theta: &[f64],
    theta_prime: &[f64],
    theta_hat: &[f64],
    c_r: f64,
    rule: &SizeRule,
) -> Result<f64> {
    check_bound(c_r)?;
    let (scores, _) = mlo_scores(model, data, theta_hat)?;
    let n = data.n() as f64;
    let ratio: f64 = data
        .rows()
        .zip(&scores)
        .map(|(x, s)| {
            let d = model.log_density(x, theta) - model.log_density(x, theta_prime);
            d * d / s
        })
        .sum::<f64>()
        / n;
    let mean_score = scores.iter().sum::<f64>() / n;
    Ok(scaled_size(rule.z_crit(), c_r, ratio * mean_score))
}

/// `r^a`: subsample size needed so `|Λ* − Λ_n| ≤ c_r` with probability `1 − δ`.
pub fn required_size_full<M: Model + ?Sized>(
    model: &M,
    data: &DataMatrix,
    theta: &[f64],
    theta_prime: &[f64],
    theta_hat: &[f64],
    c_r: f64,
    rule: &SizeRule,
) -> Result<usize> {
    required_size_full_raw(model, data, theta, theta_prime, theta_hat, c_r, rule).map(size_from_raw)
}

/// Pre-ceiling `r^{a*} = (z/c_r)² (1/(r n²)) Σ d*_i² / (η*_i)²`.
#[allow(clippy::too_many_arguments)]
pub fn required_size_estimate_raw<M: Model + ?Sized>(
    model: &M,
    data: &DataMatrix,
    idx: &IndexSample,
    weights: &SubsampleWeights,
    theta: &[f64],
    theta_prime: &[f64],
    c_r: f64,
    rule: &SizeRule,
) -> Result<f64> {
    check_bound(c_r)?;
    let second: f64 = idx
        .indices
        .iter()
        .map(|&i| {
            let x = data.row(i);
            let wd = weights.inv_n_eta(i)
                * (model.log_density(x, theta) - model.log_density(x, theta_prime));
            wd * wd
        })
        .sum::<f64>()
        / idx.r() as f64;
    Ok(scaled_size(rule.z_crit(), c_r, second))
}

/// Subsample estimate of [`required_size_full`].
#[allow(clippy::too_many_arguments)]
pub fn required_size_estimate<M: Model + ?Sized>(
    model: &M,
    data: &DataMatrix,
    idx: &IndexSample,
    weights: &SubsampleWeights,
    theta: &[f64],
    theta_prime: &[f64],
    c_r: f64,
    rule: &SizeRule,
) -> Result<usize> {
    required_size_estimate_raw(model, data, idx, weights, theta, theta_prime, c_r, rule)
        .map(size_from_raw)
}

/// Concentration bound for the uniform without-replacement estimator:
/// `c_r = C √(2 (1 − f*_r) log(2/δ_r) / r)` with
/// `C = max_i |log p(x_i|θ') − log p(x_i|θ)|` and `f*_r = (r − 1)/n`.
///
/// Needs a full pass over the data, so it is only used as a baseline.
pub fn concentration_bound<M: Model + ?Sized>(
    model: &M,
    data: &DataMatrix,
    theta: &[f64],
    theta_prime: &[f64],
    r: usize,
    delta_r: f64,
) -> Result<f64> {
    let n = data.n();
    if r == 0 || r > n {
        return Err(Error::InvalidArgument(format!("need 1 <= r <= n = {n}, got r = {r}")));
    }
    if !(delta_r > 0.0 && delta_r < 1.0) {
        return Err(Error::InvalidArgument(format!("delta_r must lie in (0, 1), got {delta_r}")));
    }
    let range = data
        .rows()
        .map(|x| (model.log_density(x, theta_prime) - model.log_density(x, theta)).abs())
        .fold(0.0, f64::max);
    let used = (r - 1) as f64 / n as f64;
    Ok(range * (2.0 * (1.0 - used) * (2.0 / delta_r).ln() / r as f64).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{GaussianMeanModel, LogisticModel};
    use crate::weights::{mlo_weights, uniform_weights};

    fn gm() -> GaussianMeanModel {
        GaussianMeanModel::new(0.0, 3.0).unwrap()
    }

    /// All `n^r` index tuples with their probabilities under `eta`.
    fn tuples(eta: &[f64], r: usize) -> Vec<(IndexSample, f64)> {
        let n = eta.len();
        let total = n.pow(r as u32);
        (0..total)
            .map(|mut code| {
                let mut indices = Vec::with_capacity(r);
                let mut p = 1.0;
                for _ in 0..r {
                    indices.push(code % n);
                    p *= eta[code % n];
                    code /= n;
                }
                (IndexSample { indices }, p)
            })
            .collect()
    }

    #[test]
    fn uniform_weights_reduce_to_plain_mean() {
        let m = gm();
        let d = DataMatrix::from_scalars(&[0.5, 1.5, -0.2, 2.0]).unwrap();
        let w = uniform_weights(4).unwrap();
        let idx = IndexSample { indices: vec![1, 3, 3] };
        let plain = (m.log_density(&[1.5], &[0.7]) + 2.0 * m.log_density(&[2.0], &[0.7])) / 3.0;
        assert!((subsampled_loglik(&m, &d, &idx, &w, &[0.7]) - plain).abs() < 1e-15);
        let plain_diff = (m.log_density(&[1.5], &[0.9]) + 2.0 * m.log_density(&[2.0], &[0.9])) / 3.0 - plain;
        assert!((lambda_star(&m, &d, &idx, &w, &[0.7], &[0.9]) - plain_diff).abs() < 1e-14);
    }

    #[test]
    fn single_point_subsample_is_exact() {
        let m = gm();
        let d = DataMatrix::from_scalars(&[1.3]).unwrap();
        let w = uniform_weights(1).unwrap();
        let idx = IndexSample { indices: vec![0; 4] };
        let exact = full_loglik(&m, &d, &[0.2]);
        assert!((subsampled_loglik(&m, &d, &idx, &w, &[0.2]) - exact).abs() < 1e-15);
    }

    #[test]
    fn three_point_pair_enumeration_is_unbiased() {
        let m = gm();
        let d = DataMatrix::from_scalars(&[0.3, -1.2, 2.5]).unwrap();
        let w = mlo_weights(&m, &d, &m.mle(&d).unwrap()).unwrap();
        let (t, tp) = ([0.4], [1.1]);
        let mut mean_l = 0.0;
        let mut mean_lambda = 0.0;
        for (idx, p) in tuples(w.eta(), 2) {
            mean_l += p * subsampled_loglik(&m, &d, &idx, &w, &t);
            mean_lambda += p * lambda_star(&m, &d, &idx, &w, &t, &tp);
        }
        assert!((mean_l - full_loglik(&m, &d, &t)).abs() < 1e-12);
        assert!((mean_lambda - lambda_full(&m, &d, &t, &tp)).abs() < 1e-12);
    }

    #[test]
    fn lambda_full_identity_and_antisymmetry() {
        let m = gm();
        let d = DataMatrix::from_scalars(&[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(lambda_full(&m, &d, &[2.0], &[2.0]), 0.0);
        let a = lambda_full(&m, &d, &[2.0], &[2.5]);
        assert_eq!(a, -lambda_full(&m, &d, &[2.5], &[2.0]));
        // Σ (x−2)² = 2, Σ (x−2.5)² = 2.75 → Λ = −(2.75 − 2)/(2·3)
        assert!((a + 0.125).abs() < 1e-15);
    }

    #[test]
    fn lambda_star_same_parameter_is_zero() {
        let m = gm();
        let d = DataMatrix::from_scalars(&[1.0, 2.0, 3.0]).unwrap();
        let w = mlo_weights(&m, &d, &[2.0]).unwrap();
        let idx = IndexSample { indices: vec![0, 2, 2, 1] };
        assert_eq!(lambda_star(&m, &d, &idx, &w, &[0.3], &[0.3]), 0.0);
    }

    #[test]
    fn psi_values() {
        let m = LogisticModel::new(1, 1.0, false).unwrap();
        let q = RandomWalkProposal::isotropic(1, 1.0).unwrap();
        // Equal prior at ±θ and symmetric q: ψ = log(u)/n.
        assert_eq!(psi_threshold(1.0, &m, &q, &[0.3], &[-0.3], 10).unwrap(), 0.0);
        let psi = psi_threshold(0.5, &m, &q, &[0.3], &[-0.3], 100).unwrap();
        assert!((psi - 0.5f64.ln() / 100.0).abs() < 1e-17);
        let psi = psi_threshold(0.25, &m, &q, &[0.0], &[1.0], 4).unwrap();
        let expected = (0.25f64.ln() + m.log_prior(&[0.0]) - m.log_prior(&[1.0])) / 4.0;
        assert!((psi - expected).abs() < 1e-15);
        assert!(psi_threshold(0.0, &m, &q, &[0.0], &[1.0], 4).is_err());
    }

    struct NegativeHalfLine;
    impl Model for NegativeHalfLine {
        fn name(&self) -> &'static str {
            "half_line"
        }
        fn param_dim(&self) -> usize {
            1
        }
        fn log_density(&self, _: &[f64], _: &[f64]) -> f64 {
            -1.0
        }
        fn grad_log_density(&self, _: &[f64], _: &[f64], g: &mut [f64]) {
            g[0] = 0.0;
        }
        fn log_prior(&self, t: &[f64]) -> f64 {
            if t[0] <= 0.0 {
                0.0
            } else {
                f64::NEG_INFINITY
            }
        }
        fn mle(&self, _: &DataMatrix) -> Result<Vec<f64>> {
            Ok(vec![0.0])
        }
        fn check_data(&self, _: &DataMatrix) -> Result<()> {
            Ok(())
        }
    }

    #[test]
    fn psi_reports_zero_prior() {
        let q = RandomWalkProposal::isotropic(1, 1.0).unwrap();
        assert_eq!(
            psi_threshold(0.5, &NegativeHalfLine, &q, &[-1.0], &[1.0], 3),
            Err(Error::PriorZero)
        );
    }

    #[test]
    fn estimator_variance_edge_cases() {
        let m = gm();
        let one = DataMatrix::from_scalars(&[0.7]).unwrap();
        assert_eq!(estimator_variance(&m, &one, &uniform_weights(1).unwrap(), &[0.1]), 0.0);
        let same = DataMatrix::from_scalars(&[0.7; 5]).unwrap();
        assert!(estimator_variance(&m, &same, &uniform_weights(5).unwrap(), &[0.1]).abs() < 1e-15);
    }

    #[test]
    fn estimator_variance_matches_single_draw_enumeration() {
        let m = gm();
        let d = DataMatrix::from_scalars(&[0.3, -1.2, 2.5]).unwrap();
        let w = SubsampleWeights::from_probabilities(&[0.2, 0.5, 0.3]).unwrap();
        let theta = [0.8];
        let values: Vec<(f64, f64)> = tuples(w.eta(), 1)
            .into_iter()
            .map(|(idx, p)| (subsampled_loglik(&m, &d, &idx, &w, &theta), p))
            .collect();
        let mean: f64 = values.iter().map(|(v, p)| v * p).sum();
        let var: f64 = values.iter().map(|(v, p)| p * (v - mean).powi(2)).sum();
        assert!((estimator_variance(&m, &d, &w, &theta) - var).abs() < 1e-12);
    }

    #[test]
    fn lambda_star_variance_properties() {
        let m = gm();
        let d = DataMatrix::from_scalars(&[0.3, 1.9]).unwrap();
        let theta_hat = m.mle(&d).unwrap();
        let w = mlo_weights(&m, &d, &theta_hat).unwrap();
        assert_eq!(lambda_star_variance(&m, &d, &w, &[0.5], &[0.5], 3), 0.0);

        let (t, tp) = ([0.5], [0.9]);
        let v10 = lambda_star_variance(&m, &d, &w, &t, &tp, 10);
        let v50 = lambda_star_variance(&m, &d, &w, &t, &tp, 50);
        assert!((v10 - 5.0 * v50).abs() < 1e-15 * v10.max(1.0));

        // Algebraic route: the variance of the difference terms plus the
        // squared mean recovers the second-moment form.
        let diffs: Vec<f64> = d
            .rows()
            .map(|x| m.log_density(x, &t) - m.log_density(x, &tp))
            .collect();
        let lambda = lambda_full(&m, &d, &t, &tp);
        let second = weighted_term_variance(&diffs, &w) + lambda * lambda;
        assert!((v10 * 10.0 - second).abs() < 1e-13);

        // Paper-form evaluation straight from the scores.
        let s: Vec<f64> = d.rows().map(|x| m.log_density(x, &theta_hat).abs()).collect();
        let direct = diffs.iter().zip(&s).map(|(di, si)| di * di / si).sum::<f64>() / 2.0
            * (s.iter().sum::<f64>() / 2.0)
            / 10.0;
        assert!((v10 - direct).abs() < 1e-14);
    }

    #[test]
    fn required_size_full_rules() {
        let m = gm();
        let d = DataMatrix::from_scalars(&[0.3, -1.2, 2.5, 0.9, 1.4]).unwrap();
        let theta_hat = m.mle(&d).unwrap();
        let w = mlo_weights(&m, &d, &theta_hat).unwrap();
        let rule = SizeRule::default();
        assert_eq!(required_size_full(&m, &d, &[0.4], &[0.4], &theta_hat, 0.01, &rule).unwrap(), 1);

        let (t, tp) = ([0.4], [0.6]);
        let r1 = required_size_full_raw(&m, &d, &t, &tp, &theta_hat, 0.01, &rule).unwrap();
        let r2 = required_size_full_raw(&m, &d, &t, &tp, &theta_hat, 0.02, &rule).unwrap();
        assert!((r1 - 4.0 * r2).abs() < 1e-10 * r1);
        assert_eq!(required_size_full(&m, &d, &t, &tp, &theta_hat, 0.01, &rule).unwrap(), r1.ceil() as usize);

        let via_variance = (rule.z_crit() / 0.01).powi(2) * lambda_star_variance(&m, &d, &w, &t, &tp, 7) * 7.0;
        assert!((r1 - via_variance).abs() < 1e-10 * r1);

        let sat = required_size_full_raw(&m, &d, &t, &tp, &theta_hat, 0.0, &rule).unwrap();
        assert!(sat.is_infinite());
        assert_eq!(size_from_raw(sat), usize::MAX);
    }

    #[test]
    fn required_size_estimate_rules() {
        let m = gm();
        let d = DataMatrix::from_scalars(&[0.3, -1.2, 2.5]).unwrap();
        let theta_hat = m.mle(&d).unwrap();
        let w = mlo_weights(&m, &d, &theta_hat).unwrap();
        let rule = SizeRule::default();
        let idx = IndexSample { indices: vec![0, 1, 1] };
        assert_eq!(required_size_estimate(&m, &d, &idx, &w, &[0.1], &[0.1], 0.05, &rule).unwrap(), 1);
        let a = required_size_estimate_raw(&m, &d, &idx, &w, &[0.1], &[0.3], 0.05, &rule).unwrap();
        let b = required_size_estimate_raw(&m, &d, &idx, &w, &[0.1], &[0.3], 0.1, &rule).unwrap();
        assert!((a - 4.0 * b).abs() < 1e-10 * a);

        let (t, tp) = ([0.1], [0.6]);
        let mut mean = 0.0;
        for (idx, p) in tuples(w.eta(), 2) {
            mean += p * required_size_estimate_raw(&m, &d, &idx, &w, &t, &tp, 0.05, &rule).unwrap();
        }
        let full = required_size_full_raw(&m, &d, &t, &tp, &theta_hat, 0.05, &rule).unwrap();
        assert!((mean - full).abs() < 1e-12 * full.max(1.0), "{mean} vs {full}");
    }

    #[test]
    fn concentration_bound_cases() {
        let m = gm();
        let d = DataMatrix::from_scalars(&[0.0, 1.0, 2.0, 4.0]).unwrap();
        assert_eq!(concentration_bound(&m, &d, &[1.0], &[1.0], 2, 0.1).unwrap(), 0.0);
        assert!(concentration_bound(&m, &d, &[1.0], &[1.5], 5, 0.1).is_err());
        assert!(concentration_bound(&m, &d, &[1.0], &[1.5], 0, 0.1).is_err());
        assert!(concentration_bound(&m, &d, &[1.0], &[1.5], 2, 1.0).is_err());

        // d_i = ((x−1)² − (x−1.5)²)/2 = 0.5x − 0.625 → max |d| at x = 4: 1.375
        let c = concentration_bound(&m, &d, &[1.0], &[1.5], 2, 0.1).unwrap();
        let expected = 1.375 * (2.0 * (1.0 - 0.25) * 20f64.ln() / 2.0).sqrt();
        assert!((c - expected).abs() < 1e-14);
    }

    #[test]
    fn size_rule_defaults() {
        let rule = SizeRule::default();
        assert!((rule.z_crit() - 1.959_964).abs() < 1e-6);
        assert_eq!(rule.r_max(), 5000);
        assert!(SizeRule::new(0.0, 10).is_err());
        assert!(SizeRule::new(0.05, 0).is_err());
    }

    #[test]
    fn required_size_is_monotone() {
        let m = gm();
        let d = DataMatrix::from_scalars(&[0.3, -1.2, 2.5, 0.9]).unwrap();
        let theta_hat = m.mle(&d).unwrap();
        let base = SizeRule::default();
        let mut prev = usize::MAX;
        for c in [0.001, 0.01, 0.05, 0.2, 1.0] {
            let r = required_size_full(&m, &d, &[0.2], &[0.7], &theta_hat, c, &base).unwrap();
            assert!(r <= prev);
            prev = r;
        }
        let mut prev = 0;
        for z in [0.5, 1.0, 1.96, 3.0] {
            let rule = base.with_z_crit(z).unwrap();
            let r = required_size_full(&m, &d, &[0.2], &[0.7], &theta_hat, 0.01, &rule).unwrap();
            assert!(r >= prev);
            prev = r;
        }
    }
}
