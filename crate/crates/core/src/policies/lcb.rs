use super::{CountingStats, Policy};
use crate::env::Observation;
use crate::model::Ordering;
use crate::rng::RngStream;

/// Anytime lower-confidence-bound ordering.
///
/// Slot `t` sorts arms ascending by `p̂_i − sqrt(2 ln t / S_i)`. Arms not yet
/// observed go first, in a fresh random order each slot; observed arms tie
/// by index.
#[derive(Debug, Clone)]
pub struct LowerConfidenceBound {
    stats: CountingStats,
    rng: RngStream,
}

impl LowerConfidenceBound {
    pub fn new(k: usize, rng: RngStream) -> Self {
        LowerConfidenceBound {
            stats: CountingStats::new(k),
            rng,
        }
    }

    pub fn stats(&self) -> &CountingStats {
        &self.stats
    }

    /// Lower bounds as used by `propose(t)`.
    pub fn lower_bounds(&self, t: u64) -> Vec<f64> {
        self.stats.lower_bounds(log_slot(t))
    }
}

fn log_slot(t: u64) -> f64 {
    (t as f64).ln().max(0.0)
}

impl Policy for LowerConfidenceBound {
    fn propose(&mut self, t: u64) -> Ordering {
        let lower = self.lower_bounds(t);
        let (mut unseen, mut seen): (Vec<usize>, Vec<usize>) =
            (0..lower.len()).partition(|&i| self.stats.count(i) == 0);
        self.rng.shuffle(&mut unseen);
        seen.sort_by(|&a, &b| lower[a].total_cmp(&lower[b]));
        unseen.extend(seen);
        Ordering::from_permutation(unseen)
    }

    fn observe(&mut self, _t: u64, obs: Observation) {
        self.stats.record(obs);
    }
}
