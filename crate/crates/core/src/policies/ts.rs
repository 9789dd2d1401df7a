use rand_distr::{Beta, Distribution};

use super::Policy;
use crate::env::Observation;
use crate::model::Ordering;
use crate::rng::RngStream;

/// Thompson sampling on per-arm Beta posteriors over the error probability.
///
/// Each slot draws `θ_i ~ Beta(α_i, β_i)` in arm order and proposes the arms
/// by ascending `θ_i` (ties by index). Posteriors start at `Beta(1, 1)`; an
/// observed failure bumps `α`, a success bumps `β`.
///
/// Draws come from `rand_distr::Beta` driven by the policy's own stream.
#[derive(Debug, Clone)]
pub struct ThompsonSampling {
    alpha: Vec<u64>,
    beta: Vec<u64>,
    rng: RngStream,
}

impl ThompsonSampling {
    pub fn new(k: usize, rng: RngStream) -> Self {
        ThompsonSampling {
            alpha: vec![1; k],
            beta: vec![1; k],
            rng,
        }
    }

    /// `(α_i, β_i)`.
    pub fn posterior(&self, arm: usize) -> (u64, u64) {
        (self.alpha[arm], self.beta[arm])
    }

    pub fn posterior_mean(&self, arm: usize) -> f64 {
        self.alpha[arm] as f64 / (self.alpha[arm] + self.beta[arm]) as f64
    }

    pub fn sample(&mut self) -> Vec<f64> {
        (0..self.alpha.len())
            .map(|i| {
                Beta::new(self.alpha[i] as f64, self.beta[i] as f64)
                    .expect("posterior parameters are positive")
                    .sample(&mut self.rng)
            })
            .collect()
    }
}

impl Policy for ThompsonSampling {
    fn propose(&mut self, _t: u64) -> Ordering {
        let theta = self.sample();
        super::ascending_by(&theta)
    }

    fn observe(&mut self, _t: u64, obs: Observation) {
        if let Some((arm, feedback)) = obs.get() {
            if feedback {
                self.beta[arm] += 1;
            } else {
                self.alpha[arm] += 1;
            }
        }
    }
}
