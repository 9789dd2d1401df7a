use super::{ascending_by, random_ordering, CountingStats, Policy};
use crate::env::Observation;
use crate::error::{Error, Result};
use crate::model::Ordering;
use crate::rng::RngStream;

/// Action elimination over confidence intervals of width `sqrt(2 ln T / S_i)`.
///
/// While more than one arm is active, the proposal is the active list
/// (rotated by one each slot) followed by the inactive arms in ascending
/// lower-bound order. An active arm whose interval is disjoint from every
/// other active arm's interval becomes inactive for good. Once at most one
/// arm is active, every slot proposes all arms by ascending lower bound.
#[derive(Debug, Clone)]
pub struct ActionElimination {
    stats: CountingStats,
    log_horizon: f64,
    active: Vec<usize>,
    inactive: Vec<usize>,
    next: Ordering,
    active_phase_end: Option<u64>,
}

impl ActionElimination {
    pub fn new(k: usize, horizon: u64, mut rng: RngStream) -> Result<Self> {
        if horizon == 0 {
            return Err(Error::invalid("horizon T must be at least 1"));
        }
        if k == 0 {
            return Err(Error::invalid("at least one arm is required"));
        }
        let first = random_ordering(k, &mut rng);
        let mut ae = ActionElimination {
            stats: CountingStats::new(k),
            log_horizon: (horizon as f64).ln(),
            active: first.slots().to_vec(),
            inactive: Vec::new(),
            next: first,
            active_phase_end: None,
        };
        if k == 1 {
            ae.active_phase_end = Some(0);
        }
        Ok(ae)
    }

    /// Active arms in their current rotation order.
    pub fn active_arms(&self) -> &[usize] {
        &self.active
    }

    /// Eliminated arms, in elimination order.
    pub fn inactive_arms(&self) -> &[usize] {
        &self.inactive
    }

    pub fn in_active_phase(&self) -> bool {
        self.active.len() > 1
    }

    /// Slot after whose observation the active phase ended, if it has.
    pub fn active_phase_end(&self) -> Option<u64> {
        self.active_phase_end
    }

    pub fn stats(&self) -> &CountingStats {
        &self.stats
    }

    pub fn interval(&self, arm: usize) -> (f64, f64) {
        (
            self.stats.lower(arm, self.log_horizon),
            self.stats.upper(arm, self.log_horizon),
        )
    }

    /// Removes, until nothing changes, every active arm separated from all
    /// other active arms. Arms qualifying in the same pass leave together.
    fn eliminate(&mut self) {
        while self.active.len() > 1 {
            let intervals: Vec<(f64, f64)> =
                self.active.iter().map(|&a| self.interval(a)).collect();
            let separated: Vec<bool> = (0..intervals.len())
                .map(|j| {
                    let (lj, uj) = intervals[j];
                    intervals
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != j)
                        .all(|(_, &(li, ui))| ui < lj || uj < li)
                })
                .collect();
            if !separated.contains(&true) {
                break;
            }
            let mut keep = Vec::with_capacity(self.active.len());
            for (&arm, gone) in self.active.iter().zip(separated) {
                if gone {
                    self.inactive.push(arm);
                } else {
                    keep.push(arm);
                }
            }
            self.active = keep;
        }
    }
}

impl Policy for ActionElimination {
    fn propose(&mut self, _t: u64) -> Ordering {
        self.next.clone()
    }

    fn observe(&mut self, t: u64, obs: Observation) {
        self.stats.record(obs);
        let lower = self.stats.lower_bounds(self.log_horizon);
        if self.in_active_phase() {
            self.eliminate();
        }
        if self.in_active_phase() {
            self.active.rotate_left(1);
            let mut tail = self.inactive.clone();
            tail.sort_by(|&a, &b| lower[a].total_cmp(&lower[b]).then(a.cmp(&b)));
            let mut slots = self.active.clone();
            slots.extend(tail);
            self.next = Ordering::from_permutation(slots);
        } else {
            self.active_phase_end.get_or_insert(t);
            self.next = ascending_by(&lower);
        }
    }
}
