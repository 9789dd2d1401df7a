use crate::env::Observation;

/// Per-arm observation counts and empirical error rates.
#[derive(Debug, Clone, PartialEq)]
pub struct CountingStats {
    counts: Vec<u64>,
    failures: Vec<u64>,
}

impl CountingStats {
    pub fn new(k: usize) -> Self {
        CountingStats {
            counts: vec![0; k],
            failures: vec![0; k],
        }
    }

    pub fn record(&mut self, obs: Observation) {
        if let Some((arm, feedback)) = obs.get() {
            self.counts[arm] += 1;
            self.failures[arm] += u64::from(!feedback);
        }
    }

    pub fn num_arms(&self) -> usize {
        self.counts.len()
    }

    /// `S_i`.
    pub fn count(&self, arm: usize) -> u64 {
        self.counts[arm]
    }

    pub fn total_count(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Mean of `1 − Y` over the arm's observations; `None` before the first.
    ///
    /// Computed as a count ratio, which equals the running-mean recursion
    /// `p̂ ← p̂ + (1 − Y − p̂)/S` in exact arithmetic and avoids its rounding drift.
    pub fn error_estimate(&self, arm: usize) -> Option<f64> {
        (self.counts[arm] > 0).then(|| self.failures[arm] as f64 / self.counts[arm] as f64)
    }

    /// `sqrt(2 · log_term / S_i)`, infinite when `S_i = 0`.
    pub fn width(&self, arm: usize, log_term: f64) -> f64 {
        match self.counts[arm] {
            0 => f64::INFINITY,
            s => (2.0 * log_term / s as f64).sqrt(),
        }
    }

    /// `p̂_i − width`; `−∞` for an unobserved arm.
    pub fn lower(&self, arm: usize, log_term: f64) -> f64 {
        match self.error_estimate(arm) {
            Some(p) => p - self.width(arm, log_term),
            None => f64::NEG_INFINITY,
        }
    }

    /// `p̂_i + width`; `+∞` for an unobserved arm.
    pub fn upper(&self, arm: usize, log_term: f64) -> f64 {
        match self.error_estimate(arm) {
            Some(p) => p + self.width(arm, log_term),
            None => f64::INFINITY,
        }
    }

    pub fn lower_bounds(&self, log_term: f64) -> Vec<f64> {
        (0..self.num_arms())
            .map(|i| self.lower(i, log_term))
            .collect()
    }
}
