//! Monte Carlo estimation of end-to-end error rates.
//!
//! Each sample draws the pair of radio-leg outcomes (from correlated
//! shadowing variables or directly from the joint outcome law) plus an
//! independent failure flag for every other component, then applies the
//! architecture's survival predicate. Sampling is split into batches;
//! batch `b` owns the ChaCha stream `b` of the configured seed, so the
//! failure count is bit-identical for a fixed `(seed, n_samples,
//! batch_size)` no matter how many batches run concurrently.
//!
//! Draw order within a sample is fixed: radio pair, UE, UPF, master node,
//! secondary node, backhaul, per-path gNB, then each path's nodes and
//! links in chain order. Every flag is drawn even when the predicate
//! ignores it, so estimates are reproducible across architectures sharing
//! a scenario.

use crate::gauss;
use crate::model::{Architecture, Correlation, ModelError, RanPairSpec, Scenario};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

/// Sampling budget and reproducibility knobs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub n_samples: u64,
    pub seed: u64,
    /// Samples per independent random stream.
    pub batch_size: u64,
}

impl McConfig {
    pub fn new(n_samples: u64, seed: u64, batch_size: u64) -> Result<Self, ModelError> {
        if n_samples == 0 {
            return Err(ModelError::ZeroCount { field: "n_samples" });
        }
        if batch_size == 0 {
            return Err(ModelError::ZeroCount { field: "batch_size" });
        }
        Ok(Self { n_samples, seed, batch_size })
    }
}

/// Frequency estimate of an end-to-end error rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub error_rate_hat: f64,
    /// Binomial standard error `sqrt(p (1 - p) / n)`.
    pub std_error: f64,
    pub n_samples: u64,
    pub n_failures: u64,
    pub seed: u64,
}

impl McEstimate {
    /// Fewer than ten observed failures: the normal approximation behind
    /// `std_error` is not trustworthy.
    pub fn low_confidence(&self) -> bool {
        self.n_failures < 10
    }
}

enum RanSampler {
    /// Correlated standard normals against per-leg thresholds.
    Shadowing { beta1: f64, beta2: f64, rho_h: f64, ortho: f64 },
    /// One categorical draw over the joint outcome law; thresholds are the
    /// cumulative sums of (ff, fs, sf).
    Event { up_to_ff: f64, up_to_fs: f64, up_to_sf: f64 },
}

impl RanSampler {
    fn new(pair: &RanPairSpec) -> Result<Self, ModelError> {
        match pair.correlation {
            Correlation::Shadowing(rho_h) => {
                let rho = rho_h.value();
                Ok(Self::Shadowing {
                    beta1: threshold(pair.eps_ran_1)?,
                    beta2: threshold(pair.eps_ran_2)?,
                    rho_h: rho,
                    ortho: (1.0 - rho * rho).sqrt(),
                })
            }
            Correlation::Event(_) => {
                let jo = crate::model::joint_outcomes(pair)?;
                Ok(Self::Event {
                    up_to_ff: jo.p_ff,
                    up_to_fs: jo.p_ff + jo.p_fs,
                    up_to_sf: jo.p_ff + jo.p_fs + jo.p_sf,
                })
            }
        }
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> (bool, bool) {
        match *self {
            Self::Shadowing { beta1, beta2, rho_h, ortho } => {
                let x1: f64 = rng.sample(StandardNormal);
                let z: f64 = rng.sample(StandardNormal);
                let x2 = rho_h * x1 + ortho * z;
                (x1 > beta1, x2 > beta2)
            }
            Self::Event { up_to_ff, up_to_fs, up_to_sf } => {
                let u: f64 = rng.random();
                if u < up_to_ff {
                    (true, true)
                } else if u < up_to_fs {
                    (true, false)
                } else if u < up_to_sf {
                    (false, true)
                } else {
                    (false, false)
                }
            }
        }
    }
}

// A deterministic leg maps to an infinite threshold the shadowing draw can
// never (rate 0) or always (rate 1) cross.
fn threshold(eps: f64) -> Result<f64, ModelError> {
    if eps == 0.0 {
        Ok(f64::INFINITY)
    } else if eps == 1.0 {
        Ok(f64::NEG_INFINITY)
    } else {
        Ok(gauss::inverse_q(eps)?)
    }
}

/// Draw one joint radio-leg outcome: `(leg1_failed, leg2_failed)`.
pub fn sample_ran_pair<R: Rng>(
    pair: &RanPairSpec,
    rng: &mut R,
) -> Result<(bool, bool), ModelError> {
    Ok(RanSampler::new(pair)?.sample(rng))
}

struct ScenarioSampler {
    architecture: Architecture,
    ran: RanSampler,
    eps_ue: f64,
    eps_upf: f64,
    eps_mgnb: f64,
    eps_sgnb: f64,
    eps_xn: f64,
    eps_gnb: Vec<f64>,
    /// Per path: node errors then link errors, in chain order.
    path_elements: Vec<Vec<f64>>,
}

impl ScenarioSampler {
    fn new(scenario: &Scenario) -> Result<Self, ModelError> {
        scenario.validate_shape()?;
        let path_elements = scenario
            .cn_paths
            .iter()
            .map(|p| {
                let mut elems = p.node_errors.clone();
                elems.extend_from_slice(&p.link_errors);
                elems
            })
            .collect();
        Ok(Self {
            architecture: scenario.architecture,
            ran: RanSampler::new(&scenario.ran)?,
            eps_ue: scenario.points.eps_ue,
            eps_upf: scenario.points.eps_upf,
            eps_mgnb: scenario.points.eps_mgnb,
            eps_sgnb: scenario.points.eps_sgnb,
            eps_xn: scenario.points.eps_xn,
            eps_gnb: scenario.points.eps_gnb_per_path.clone(),
            path_elements,
        })
    }

    /// One packet; `true` means the packet was lost.
    fn sample_failure<R: Rng>(&self, rng: &mut R) -> bool {
        let fails = |rng: &mut R, eps: f64| rng.random::<f64>() < eps;

        let (leg1_failed, leg2_failed) = self.ran.sample(rng);
        let ue_failed = fails(rng, self.eps_ue);
        let upf_failed = fails(rng, self.eps_upf);
        let mgnb_failed = fails(rng, self.eps_mgnb);
        let sgnb_failed = fails(rng, self.eps_sgnb);
        let xn_failed = fails(rng, self.eps_xn);
        let mut gnb_failed = [false; 2];
        for (flag, &eps) in gnb_failed.iter_mut().zip(&self.eps_gnb) {
            *flag = fails(rng, eps);
        }
        let mut path_failed = Vec::with_capacity(self.path_elements.len());
        for elems in &self.path_elements {
            let mut failed = false;
            for &eps in elems {
                // Keep drawing so the stream layout is independent of the
                // failures seen so far.
                failed |= fails(rng, eps);
            }
            path_failed.push(failed);
        }

        let delivered = match self.architecture {
            Architecture::RanSplit => {
                let reaches_master =
                    !leg1_failed || (!leg2_failed && !sgnb_failed && !xn_failed);
                let core_ok = path_failed.iter().any(|f| !f);
                !ue_failed && reaches_master && !mgnb_failed && core_ok && !upf_failed
            }
            Architecture::CnSplit => {
                let chain1 = !leg1_failed && !gnb_failed[0] && !path_failed[0];
                let chain2 = !leg2_failed && !gnb_failed[1] && !path_failed[1];
                !ue_failed && !upf_failed && (chain1 || chain2)
            }
        };
        !delivered
    }
}

/// Estimate the end-to-end error rate of a scenario by simulation.
///
/// Deterministic for a fixed config: batches own independent ChaCha
/// streams and the integer failure counts add in any order.
pub fn estimate_e2e(scenario: &Scenario, config: &McConfig) -> Result<McEstimate, ModelError> {
    let sampler = ScenarioSampler::new(scenario)?;
    let n_batches = config.n_samples.div_ceil(config.batch_size);

    let n_failures: u64 = (0..n_batches)
        .into_par_iter()
        .map(|batch| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(batch);
            let start = batch * config.batch_size;
            let len = config.batch_size.min(config.n_samples - start);
            let mut failures = 0u64;
            for _ in 0..len {
                failures += sampler.sample_failure(&mut rng) as u64;
            }
            failures
        })
        .sum();

    let p_hat = n_failures as f64 / config.n_samples as f64;
    Ok(McEstimate {
        error_rate_hat: p_hat,
        std_error: (p_hat * (1.0 - p_hat) / config.n_samples as f64).sqrt(),
        n_samples: config.n_samples,
        n_failures,
        seed: config.seed,
    })
}
