use super::{ascending_by, random_ordering, CountingStats, Policy};
use crate::env::Observation;
use crate::error::{Error, Result};
use crate::model::{neighbor_gaps, ArmParams, Ordering};
use crate::rng::RngStream;

/// Per-arm exploration budget `N = max_i ⌈16 ln T / (Δ_i² μ_i)⌉`.
///
/// `delta` holds the `K − 1` neighbour gaps `Δ_2..Δ_K` and `mu` the `K`
/// trigger probabilities, both in ascending-`p` arm order; `delta[j]` pairs
/// with `mu[j + 1]`. `Δ_1` does not exist, so the max runs over ranks 2..K
/// only. A single arm needs no exploration.
pub fn exploration_budget(delta: &[f64], mu: &[f64], horizon: u64) -> Result<u64> {
    if horizon == 0 {
        return Err(Error::invalid("horizon T must be at least 1"));
    }
    if mu.is_empty() || delta.len() + 1 != mu.len() {
        return Err(Error::invalid(format!(
            "expected K - 1 gaps for K trigger probabilities, got {} and {}",
            delta.len(),
            mu.len()
        )));
    }
    if let Some((i, m)) = mu.iter().enumerate().find(|(_, &m)| m.is_nan() || m <= 0.0) {
        return Err(Error::invalid(format!(
            "mu[{i}] must be positive (got {m})"
        )));
    }
    if let Some((j, d)) = delta
        .iter()
        .enumerate()
        .find(|(_, &d)| d.is_nan() || d <= 0.0)
    {
        return Err(Error::invalid(format!(
            "gap between ranks {} and {} must be positive (got {d})",
            j + 1,
            j + 2
        )));
    }
    let log_t = (horizon as f64).ln();
    let budget = delta
        .iter()
        .zip(&mu[1..])
        .map(|(&d, &m)| (16.0 * log_t / (d * d * m)).ceil())
        .fold(0.0, f64::max);
    // Saturating float-to-int cast.
    Ok(budget as u64)
}

/// Explore-then-commit: round-robin rotation for `N·K` slots, then a frozen
/// ordering by ascending lower confidence bound.
#[derive(Debug, Clone)]
pub struct ExploreThenCommit {
    stats: CountingStats,
    log_horizon: f64,
    budget: u64,
    explore_slots: u64,
    current: Ordering,
    proposed_once: bool,
    committed: Option<Ordering>,
}

impl ExploreThenCommit {
    /// `delta`/`mu` as in [`exploration_budget`].
    pub fn new(delta: &[f64], mu: &[f64], horizon: u64, mut rng: RngStream) -> Result<Self> {
        let budget = exploration_budget(delta, mu, horizon)?;
        let k = mu.len();
        Ok(ExploreThenCommit {
            stats: CountingStats::new(k),
            log_horizon: (horizon as f64).ln(),
            budget,
            explore_slots: budget.saturating_mul(k as u64),
            current: random_ordering(k, &mut rng),
            proposed_once: false,
            committed: None,
        })
    }

    /// Builds the policy with the true gaps and trigger probabilities.
    pub fn from_params(params: &ArmParams, horizon: u64, rng: RngStream) -> Result<Self> {
        let gaps = neighbor_gaps(params);
        let mu: Vec<f64> = gaps.sorted_arms.iter().map(|&a| params.mu()[a]).collect();
        Self::new(&gaps.delta, &mu, horizon, rng)
    }

    /// `N`.
    pub fn budget(&self) -> u64 {
        self.budget
    }

    /// `N·K`: the last exploration slot.
    pub fn explore_slots(&self) -> u64 {
        self.explore_slots
    }

    pub fn committed(&self) -> Option<&Ordering> {
        self.committed.as_ref()
    }

    pub fn stats(&self) -> &CountingStats {
        &self.stats
    }
}

impl Policy for ExploreThenCommit {
    fn propose(&mut self, t: u64) -> Ordering {
        if t <= self.explore_slots {
            if std::mem::replace(&mut self.proposed_once, true) {
                self.current = self.current.rotated();
            }
            return self.current.clone();
        }
        self.committed
            .get_or_insert_with(|| ascending_by(&self.stats.lower_bounds(self.log_horizon)))
            .clone()
    }

    fn observe(&mut self, t: u64, obs: Observation) {
        if t <= self.explore_slots {
            self.stats.record(obs);
        }
    }
}
