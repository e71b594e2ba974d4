//! Chain drivers: full-data MH, fixed-size subsampled MH (MLO or uniform
//! weights) and adaptive-size MLO subsampled MH.
//!
//! Every chain owns two ChaCha8 streams derived from `ChainConfig::seed`:
//! stream 0 drives the proposal and the uniform `u` (drawn in that order each
//! iteration), stream 1 drives subsample indices. Keeping them apart means the
//! proposal path does not depend on how many indices a sampler consumes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::data::DataMatrix;
use crate::error::{Error, Result};
use crate::estimators::{psi_threshold, size_from_raw, SizeRule};
use crate::model::{full_loglik, std_normal_logpdf, Model};
use crate::weights::{uniform_weights, SubsampleWeights};

/// Gaussian random walk `θ' = θ + scale ⊙ ε`, `ε ~ N(0, I)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RandomWalkProposal {
    scale: Vec<f64>,
}

impl RandomWalkProposal {
    pub fn new(scale: Vec<f64>) -> Result<Self> {
        if scale.is_empty() || scale.iter().any(|s| !(*s > 0.0 && s.is_finite())) {
            return Err(Error::InvalidArgument(format!(
                "proposal scales must be positive and finite, got {scale:?}"
            )));
        }
        Ok(Self { scale })
    }

    pub fn isotropic(dim: usize, scale: f64) -> Result<Self> {
        Self::new(vec![scale; dim])
    }

    pub fn scale(&self) -> &[f64] {
        &self.scale
    }

    pub fn dim(&self) -> usize {
        self.scale.len()
    }

    pub fn propose<R: Rng + ?Sized>(&self, theta: &[f64], rng: &mut R) -> Vec<f64> {
        theta
            .iter()
            .zip(&self.scale)
            .map(|(t, s)| {
                let eps: f64 = rng.sample(StandardNormal);
                t + s * eps
            })
            .collect()
    }

    /// `log q(to | from)`.
    pub fn log_density(&self, to: &[f64], from: &[f64]) -> f64 {
        to.iter()
            .zip(from)
            .zip(&self.scale)
            .map(|((a, b), s)| std_normal_logpdf((a - b) / s) - s.ln())
            .sum()
    }
}

/// Chain length, start, seed and subsample settings.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainConfig {
    pub num_iters: usize,
    /// Starting point; `None` starts at the MLE.
    pub init_theta: Option<Vec<f64>>,
    pub seed: u64,
    /// Fixed subsample size, or the initial size for the adaptive sampler.
    pub subsample_r: usize,
    pub size_rule: SizeRule,
}

impl ChainConfig {
    pub fn new(num_iters: usize, seed: u64) -> Self {
        Self {
            num_iters,
            init_theta: None,
            seed,
            subsample_r: 100,
            size_rule: SizeRule::default(),
        }
    }

    pub fn with_init(mut self, theta: Vec<f64>) -> Self {
        self.init_theta = Some(theta);
        self
    }

    pub fn with_subsample(mut self, r: usize) -> Self {
        self.subsample_r = r;
        self
    }

    pub fn with_size_rule(mut self, rule: SizeRule) -> Self {
        self.size_rule = rule;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.num_iters == 0 {
            return Err(Error::InvalidArgument("num_iters must be at least 1".into()));
        }
        if self.subsample_r == 0 {
            return Err(Error::InvalidArgument("subsample_r must be at least 1".into()));
        }
        if self.subsample_r > self.size_rule.r_max() {
            return Err(Error::InvalidArgument(format!(
                "initial subsample size {} exceeds r_max {}",
                self.subsample_r,
                self.size_rule.r_max()
            )));
        }
        Ok(())
    }
}

/// Output of one chain.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainRun {
    /// `θ_1, …, θ_N` (the initial state is not included).
    pub draws: Vec<Vec<f64>>,
    pub accepted: Vec<bool>,
    /// Data points evaluated per iteration: `n` for full-data MH, the final
    /// subsample size otherwise, 0 when the prior alone rejected the proposal.
    pub subsample_sizes: Vec<usize>,
}

impl ChainRun {
    pub fn len(&self) -> usize {
        self.draws.len()
    }

    pub fn is_empty(&self) -> bool {
        self.draws.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.draws.first().map_or(0, Vec::len)
    }

    pub fn acceptance_rate(&self) -> f64 {
        self.accepted.iter().filter(|a| **a).count() as f64 / self.accepted.len().max(1) as f64
    }

    /// Mean and median of `subsample_size / n` over iterations.
    pub fn subsample_fraction(&self, n: usize) -> (f64, f64) {
        if self.subsample_sizes.is_empty() {
            return (0.0, 0.0);
        }
        let n = n as f64;
        let mut f: Vec<f64> = self.subsample_sizes.iter().map(|&s| s as f64 / n).collect();
        let mean = f.iter().sum::<f64>() / f.len() as f64;
        f.sort_by(f64::total_cmp);
        let m = f.len();
        let median = if m % 2 == 1 {
            f[m / 2]
        } else {
            0.5 * (f[m / 2 - 1] + f[m / 2])
        };
        (mean, median)
    }
}

/// The per-chain random streams.
pub struct ChainRng {
    pub proposal: ChaCha8Rng,
    pub subsample: ChaCha8Rng,
}

impl ChainRng {
    pub fn new(seed: u64) -> Self {
        let mut proposal = ChaCha8Rng::seed_from_u64(seed);
        proposal.set_stream(0);
        let mut subsample = ChaCha8Rng::seed_from_u64(seed);
        subsample.set_stream(1);
        Self { proposal, subsample }
    }
}

/// Outcome of one accept/reject decision.
struct Decision {
    accept: bool,
    size: usize,
}

/// Shared MH loop. `decide(θ, θ', ψ, rng)` returns whether `θ'` is accepted.
fn drive<M, F>(
    model: &M,
    data: &DataMatrix,
    proposal: &RandomWalkProposal,
    cfg: &ChainConfig,
    mut decide: F,
) -> Result<ChainRun>
where
    M: Model + ?Sized,
    F: FnMut(&[f64], &[f64], f64, &mut ChaCha8Rng) -> Decision,
{
    cfg.validate()?;
    model.check_data(data)?;
    let p = model.param_dim();
    if proposal.dim() != p {
        return Err(Error::DimensionMismatch {
            expected: p,
            found: proposal.dim(),
        });
    }
    let init = match &cfg.init_theta {
        Some(t) => t.clone(),
        None => model.mle(data)?,
    };
    if init.len() != p {
        return Err(Error::DimensionMismatch {
            expected: p,
            found: init.len(),
        });
    }
    if init.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidArgument("initial parameter must be finite".into()));
    }

    let n = data.n();
    let mut rng = ChainRng::new(cfg.seed);
    let mut theta = init;
    let mut run = ChainRun {
        draws: Vec::with_capacity(cfg.num_iters),
        accepted: Vec::with_capacity(cfg.num_iters),
        subsample_sizes: Vec::with_capacity(cfg.num_iters),
    };

    for _ in 0..cfg.num_iters {
        let theta_prime = proposal.propose(&theta, &mut rng.proposal);
        let u = 1.0 - rng.proposal.random::<f64>();
        let decision = match psi_threshold(u, model, proposal, &theta, &theta_prime, n) {
            Ok(psi) => decide(&theta, &theta_prime, psi, &mut rng.subsample),
            Err(Error::PriorZero) => Decision {
                accept: false,
                size: 0,
            },
            Err(e) => return Err(e),
        };
        if decision.accept {
            theta = theta_prime;
        }
        run.draws.push(theta.clone());
        run.accepted.push(decision.accept);
        run.subsample_sizes.push(decision.size);
    }
    Ok(run)
}

/// Full-data Metropolis–Hastings: accept iff `Λ_n(θ, θ') > ψ(u, θ, θ')`.
pub fn standard_mh<M: Model + ?Sized>(
    model: &M,
    data: &DataMatrix,
    proposal: &RandomWalkProposal,
    cfg: &ChainConfig,
) -> Result<ChainRun> {
    let n = data.n();
    // ℓ_n at the current state, refreshed on acceptance.
    let mut cached: Option<(Vec<f64>, f64)> = None;
    drive(model, data, proposal, cfg, |theta, theta_prime, psi, _| {
        let current = match &cached {
            Some((t, v)) if t.as_slice() == theta => *v,
            _ => full_loglik(model, data, theta),
        };
        let proposed = full_loglik(model, data, theta_prime);
        let accept = proposed - current > psi;
        cached = Some(if accept {
            (theta_prime.to_vec(), proposed)
        } else {
            (theta.to_vec(), current)
        });
        Decision { accept, size: n }
    })
}

/// Weighted sums `Σ w_i log p(x_i|θ)`, `Σ w_i log p(x_i|θ')` and
/// `Σ (w_i d_i)²` over `count` fresh draws.
#[derive(Default, Clone, Copy)]
struct BlockSums {
    at_theta: f64,
    at_prime: f64,
    diff_sq: f64,
}

fn draw_block<M: Model + ?Sized>(
    model: &M,
    data: &DataMatrix,
    weights: &SubsampleWeights,
    theta: &[f64],
    theta_prime: &[f64],
    count: usize,
    rng: &mut ChaCha8Rng,
) -> BlockSums {
    let table = weights.alias_table();
    let mut sums = BlockSums::default();
    for _ in 0..count {
        let i = table.draw(rng);
        let x = data.row(i);
        let w = weights.inv_n_eta(i);
        let a = w * model.log_density(x, theta);
        let b = w * model.log_density(x, theta_prime);
        sums.at_theta += a;
        sums.at_prime += b;
        sums.diff_sq += (a - b) * (a - b);
    }
    sums
}

fn check_weights(weights: &SubsampleWeights, data: &DataMatrix) -> Result<()> {
    if weights.n() != data.n() {
        return Err(Error::DimensionMismatch {
            expected: data.n(),
            found: weights.n(),
        });
    }
    Ok(())
}

/// Fixed-size subsampled MH. One subsample of size `cfg.subsample_r` per
/// iteration serves both `ℓ*_r(θ)` and `ℓ*_r(θ')`; accept iff `Λ* > ψ`.
///
/// The weights are fixed for the whole run, normally MLO weights at the MLE.
pub fn mlo_subsampled_mh<M: Model + ?Sized>(
    model: &M,
    data: &DataMatrix,
    proposal: &RandomWalkProposal,
    weights: &SubsampleWeights,
    cfg: &ChainConfig,
) -> Result<ChainRun> {
    check_weights(weights, data)?;
    let r = cfg.subsample_r;
    drive(model, data, proposal, cfg, |theta, theta_prime, psi, rng| {
        let s = draw_block(model, data, weights, theta, theta_prime, r, rng);
        let lambda = s.at_prime / r as f64 - s.at_theta / r as f64;
        Decision {
            accept: lambda > psi,
            size: r,
        }
    })
}

/// Uniform-probability baseline: [`mlo_subsampled_mh`] with `η_i = 1/n`.
pub fn uniform_subsampled_mh<M: Model + ?Sized>(
    model: &M,
    data: &DataMatrix,
    proposal: &RandomWalkProposal,
    cfg: &ChainConfig,
) -> Result<ChainRun> {
    let weights = uniform_weights(data.n())?;
    mlo_subsampled_mh(model, data, proposal, &weights, cfg)
}

/// Pooled mean after appending a block: `(S_new + r_old · m_old) / r_total`.
///
/// `new_block_sum_weighted` is the sum of the weighted terms of the new block,
/// so the result equals the mean over the union of both blocks.
pub fn merge_block_estimates(
    old_mean: f64,
    old_size: usize,
    new_block_sum_weighted: f64,
    new_total: usize,
) -> Result<f64> {
    if new_total <= old_size {
        return Err(Error::InvalidArgument(format!(
            "merged size {new_total} must exceed the old block size {old_size}"
        )));
    }
    let total = new_total as f64;
    Ok(new_block_sum_weighted / total + (old_size as f64 / total) * old_mean)
}

/// Subsample size the adaptive sampler tops up to, given the pilot's `Λ*`,
/// the threshold `ψ` and the pilot's mean squared weighted difference.
/// A zero margin `|Λ* − ψ|` saturates at `r_max`.
fn adaptive_target(lambda: f64, psi: f64, second_moment: f64, rule: &SizeRule) -> usize {
    let c_r = (lambda - psi).abs() / 2.0;
    let raw = if second_moment == 0.0 {
        0.0
    } else if c_r == 0.0 {
        f64::INFINITY
    } else {
        (rule.z_crit() / c_r).powi(2) * second_moment
    };
    size_from_raw(raw).min(rule.r_max())
}

/// Adaptive MLO subsampled MH.
///
/// Each iteration starts from a pilot subsample of size `cfg.subsample_r`,
/// sets `c_r = |Λ* − ψ|/2`, estimates the required size `r^{a*}` and, when
/// the pilot is smaller than `min(r^{a*}, r_max)`, tops the subsample up to
/// that size from the same weights before deciding.
pub fn adaptive_mlo_mh<M: Model + ?Sized>(
    model: &M,
    data: &DataMatrix,
    proposal: &RandomWalkProposal,
    weights: &SubsampleWeights,
    cfg: &ChainConfig,
) -> Result<ChainRun> {
    check_weights(weights, data)?;
    let r = cfg.subsample_r;
    let rule = cfg.size_rule;
    drive(model, data, proposal, cfg, |theta, theta_prime, psi, rng| {
        let pilot = draw_block(model, data, weights, theta, theta_prime, r, rng);
        let mut l_theta = pilot.at_theta / r as f64;
        let mut l_prime = pilot.at_prime / r as f64;
        let mut lambda = l_prime - l_theta;

        let target = adaptive_target(lambda, psi, pilot.diff_sq / r as f64, &rule);

        let mut size = r;
        if r < target {
            let extra = draw_block(model, data, weights, theta, theta_prime, target - r, rng);
            l_theta = merge_block_estimates(l_theta, r, extra.at_theta, target)
                .expect("target exceeds pilot size");
            l_prime = merge_block_estimates(l_prime, r, extra.at_prime, target)
                .expect("target exceeds pilot size");
            lambda = l_prime - l_theta;
            size = target;
        }
        Decision {
            accept: lambda > psi,
            size,
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimators::lambda_full;
    use crate::model::{GaussianMeanModel, GaussianPrecisionModel};
    use crate::weights::mlo_weights;
    use rand_distr::{Distribution, Normal};

    fn gaussian_data(n: usize, mu: f64, seed: u64) -> DataMatrix {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dist = Normal::new(mu, 1.0).unwrap();
        let xs: Vec<f64> = (0..n).map(|_| dist.sample(&mut rng)).collect();
        DataMatrix::from_scalars(&xs).unwrap()
    }

    #[test]
    fn proposal_is_symmetric() {
        let q = RandomWalkProposal::new(vec![0.5, 2.0]).unwrap();
        let a = [0.1, -1.0];
        let b = [0.7, 2.5];
        assert_eq!(q.log_density(&a, &b), q.log_density(&b, &a));
        assert!(RandomWalkProposal::new(vec![0.0]).is_err());
    }

    #[test]
    fn degenerate_proposal_always_accepts() {
        let m = GaussianMeanModel::new(0.0, 3.0).unwrap();
        let d = gaussian_data(50, 1.0, 1);
        let q = RandomWalkProposal::isotropic(1, 1e-300).unwrap();
        let cfg = ChainConfig::new(200, 4).with_init(vec![0.5]);
        let run = standard_mh(&m, &d, &q, &cfg).unwrap();
        assert!(run.accepted.iter().all(|a| *a));
        assert!(run.draws.iter().all(|t| t[0] == 0.5));
    }

    #[test]
    fn runs_are_reproducible() {
        let m = GaussianMeanModel::new(0.0, 3.0).unwrap();
        let d = gaussian_data(200, 1.0, 2);
        let q = RandomWalkProposal::isotropic(1, 0.1).unwrap();
        let w = mlo_weights(&m, &d, &m.mle(&d).unwrap()).unwrap();
        let cfg = ChainConfig::new(300, 17).with_subsample(10).with_size_rule(SizeRule::new(0.05, 100).unwrap());
        assert_eq!(standard_mh(&m, &d, &q, &cfg).unwrap(), standard_mh(&m, &d, &q, &cfg).unwrap());
        assert_eq!(
            mlo_subsampled_mh(&m, &d, &q, &w, &cfg).unwrap(),
            mlo_subsampled_mh(&m, &d, &q, &w, &cfg).unwrap()
        );
        assert_eq!(
            uniform_subsampled_mh(&m, &d, &q, &cfg).unwrap(),
            uniform_subsampled_mh(&m, &d, &q, &cfg).unwrap()
        );
        assert_eq!(
            adaptive_mlo_mh(&m, &d, &q, &w, &cfg).unwrap(),
            adaptive_mlo_mh(&m, &d, &q, &w, &cfg).unwrap()
        );
        let other = ChainConfig { seed: 18, ..cfg.clone() };
        assert_ne!(standard_mh(&m, &d, &q, &other).unwrap(), standard_mh(&m, &d, &q, &cfg).unwrap());
    }

    #[test]
    fn rejected_steps_repeat_previous_draw() {
        let m = GaussianPrecisionModel::new(0.01, 0.01).unwrap();
        let d = gaussian_data(300, 0.0, 3);
        let q = RandomWalkProposal::isotropic(1, 0.3).unwrap();
        let w = mlo_weights(&m, &d, &m.mle(&d).unwrap()).unwrap();
        let cfg = ChainConfig::new(500, 5).with_subsample(10);
        for run in [
            standard_mh(&m, &d, &q, &cfg).unwrap(),
            mlo_subsampled_mh(&m, &d, &q, &w, &cfg).unwrap(),
            adaptive_mlo_mh(&m, &d, &q, &w, &cfg).unwrap(),
        ] {
            assert!(run.accepted.iter().any(|a| !*a));
            for k in 1..run.len() {
                if !run.accepted[k] {
                    assert_eq!(run.draws[k], run.draws[k - 1]);
                } else {
                    assert_ne!(run.draws[k], run.draws[k - 1]);
                }
            }
        }
    }

    #[test]
    fn single_point_data_makes_all_samplers_agree() {
        let m = GaussianMeanModel::new(0.0, 3.0).unwrap();
        let d = DataMatrix::from_scalars(&[0.8]).unwrap();
        let q = RandomWalkProposal::isotropic(1, 0.7).unwrap();
        let w = mlo_weights(&m, &d, &[0.8]).unwrap();
        let cfg = ChainConfig::new(400, 23).with_subsample(1).with_size_rule(SizeRule::new(0.05, 3).unwrap());
        let full = standard_mh(&m, &d, &q, &cfg).unwrap();
        for run in [
            mlo_subsampled_mh(&m, &d, &q, &w, &cfg).unwrap(),
            uniform_subsampled_mh(&m, &d, &q, &cfg).unwrap(),
            adaptive_mlo_mh(&m, &d, &q, &w, &cfg).unwrap(),
        ] {
            assert_eq!(run.draws, full.draws);
            assert_eq!(run.accepted, full.accepted);
        }
    }

    #[test]
    fn injected_uniform_weights_reproduce_uniform_baseline() {
        let m = GaussianMeanModel::new(0.0, 3.0).unwrap();
        let d = gaussian_data(100, 1.0, 9);
        let q = RandomWalkProposal::isotropic(1, 0.2).unwrap();
        let cfg = ChainConfig::new(300, 31).with_subsample(7);
        let w = uniform_weights(100).unwrap();
        assert_eq!(
            mlo_subsampled_mh(&m, &d, &q, &w, &cfg).unwrap(),
            uniform_subsampled_mh(&m, &d, &q, &cfg).unwrap()
        );
    }

    #[test]
    fn adaptive_sizes_stay_within_bounds() {
        let m = GaussianMeanModel::new(0.0, 3.0).unwrap();
        let d = gaussian_data(2000, 1.0, 12);
        let q = RandomWalkProposal::isotropic(1, 0.05).unwrap();
        let w = mlo_weights(&m, &d, &m.mle(&d).unwrap()).unwrap();
        let cfg = ChainConfig::new(400, 2).with_subsample(20).with_size_rule(SizeRule::new(0.05, 300).unwrap());
        let run = adaptive_mlo_mh(&m, &d, &q, &w, &cfg).unwrap();
        assert!(run.subsample_sizes.iter().all(|&s| (20..=300).contains(&s)));
        assert!(run.subsample_sizes.iter().any(|&s| s > 20));
    }

    #[test]
    fn adaptive_target_edge_cases() {
        let rule = SizeRule::new(0.05, 5000).unwrap();
        // Identical points: no spread, so the pilot is never augmented.
        assert_eq!(adaptive_target(0.0, -0.01, 0.0, &rule), 1);
        // Zero margin saturates.
        assert_eq!(adaptive_target(0.3, 0.3, 1e-6, &rule), 5000);
        let z = rule.z_crit();
        assert_eq!(adaptive_target(0.02, 0.0, 1e-4, &rule), ((z / 0.01).powi(2) * 1e-4).ceil() as usize);
    }

    #[test]
    fn merge_blocks() {
        assert_eq!(merge_block_estimates(2.0, 1, 4.0, 2).unwrap(), 3.0);
        assert_eq!(merge_block_estimates(1.5, 1, 1.5, 2).unwrap(), 1.5);
        assert!(merge_block_estimates(1.0, 3, 1.0, 3).is_err());
    }

    #[test]
    fn merge_matches_recomputation() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..200 {
            let old: Vec<f64> = (0..rng.random_range(1..20)).map(|_| rng.random_range(-5.0..5.0)).collect();
            let new: Vec<f64> = (0..rng.random_range(1..20)).map(|_| rng.random_range(-5.0..5.0)).collect();
            let old_mean = old.iter().sum::<f64>() / old.len() as f64;
            let total = old.len() + new.len();
            let merged = merge_block_estimates(old_mean, old.len(), new.iter().sum(), total).unwrap();
            let direct = old.iter().chain(&new).sum::<f64>() / total as f64;
            assert!((merged - direct).abs() < 1e-14, "{merged} vs {direct}");
        }
    }

    #[test]
    fn accepted_steps_match_log_form_decisions() {
        // Re-derive every decision of a full-data chain from its recorded states.
        let m = GaussianMeanModel::new(0.0, 3.0).unwrap();
        let d = gaussian_data(30, 1.0, 4);
        let q = RandomWalkProposal::isotropic(1, 0.4).unwrap();
        let cfg = ChainConfig::new(100, 8).with_init(vec![0.0]);
        let run = standard_mh(&m, &d, &q, &cfg).unwrap();
        let mut rng = ChainRng::new(8);
        let mut theta = vec![0.0];
        for k in 0..run.len() {
            let tp = q.propose(&theta, &mut rng.proposal);
            let u = 1.0 - rng.proposal.random::<f64>();
            let psi = psi_threshold(u, &m, &q, &theta, &tp, d.n()).unwrap();
            let accept = lambda_full(&m, &d, &theta, &tp) > psi;
            assert_eq!(accept, run.accepted[k]);
            if accept {
                theta = tp;
            }
        }
    }

    #[test]
    fn rejects_invalid_configs() {
        let m = GaussianMeanModel::new(0.0, 3.0).unwrap();
        let d = gaussian_data(10, 1.0, 4);
        let q = RandomWalkProposal::isotropic(1, 0.4).unwrap();
        assert!(standard_mh(&m, &d, &q, &ChainConfig::new(0, 1)).is_err());
        let cfg = ChainConfig::new(10, 1).with_subsample(10).with_size_rule(SizeRule::new(0.05, 5).unwrap());
        assert!(adaptive_mlo_mh(&m, &d, &q, &uniform_weights(10).unwrap(), &cfg).is_err());
        let cfg = ChainConfig::new(10, 1).with_subsample(2);
        assert!(mlo_subsampled_mh(&m, &d, &q, &uniform_weights(9).unwrap(), &cfg).is_err());
        let q2 = RandomWalkProposal::isotropic(2, 0.4).unwrap();
        assert!(standard_mh(&m, &d, &q2, &cfg).is_err());
    }

    #[test]
    fn subsample_fraction_mean_and_median() {
        let run = ChainRun {
            draws: vec![vec![0.0]; 4],
            accepted: vec![true; 4],
            subsample_sizes: vec![10, 20, 30, 100],
        };
        let (mean, median) = run.subsample_fraction(100);
        assert!((mean - 0.4).abs() < 1e-15);
        assert!((median - 0.25).abs() < 1e-15);
    }
}
