//! Online ordering policies.
//!
//! Each policy proposes an [`Ordering`] at the start of a slot and then sees
//! the slot's censored [`Observation`]. `propose(t)` is called exactly once
//! per slot, before `observe(t, ..)`, with `t = 1, 2, ...`.

mod ae;
mod ec;
mod lcb;
mod stats;
mod ts;

use std::fmt;
use std::str::FromStr;

pub use ae::ActionElimination;
pub use ec::{exploration_budget, ExploreThenCommit};
pub use lcb::LowerConfidenceBound;
pub use stats::CountingStats;
pub use ts::ThompsonSampling;

use crate::env::Observation;
use crate::error::{Error, Result};
use crate::model::{ArmParams, Ordering};
use crate::rng::RngStream;

pub trait Policy: Send {
    fn propose(&mut self, t: u64) -> Ordering;
    fn observe(&mut self, t: u64, obs: Observation);
}

impl<P: Policy + ?Sized> Policy for Box<P> {
    fn propose(&mut self, t: u64) -> Ordering {
        (**self).propose(t)
    }

    fn observe(&mut self, t: u64, obs: Observation) {
        (**self).observe(t, obs)
    }
}

/// The registered policies, selectable by their lowercase names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolicyKind {
    ExploreThenCommit,
    ActionElimination,
    Lcb,
    Thompson,
}

impl PolicyKind {
    pub const ALL: [PolicyKind; 4] = [
        PolicyKind::ExploreThenCommit,
        PolicyKind::ActionElimination,
        PolicyKind::Lcb,
        PolicyKind::Thompson,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PolicyKind::ExploreThenCommit => "ec",
            PolicyKind::ActionElimination => "ae",
            PolicyKind::Lcb => "lcb",
            PolicyKind::Thompson => "ts",
        }
    }

    /// Builds a fresh instance for a run of length `horizon`.
    ///
    /// EC is clairvoyant: it receives the true gaps and trigger
    /// probabilities from `params`. The other policies ignore `params`
    /// beyond the arm count.
    pub fn build(
        self,
        params: &ArmParams,
        horizon: u64,
        rng: RngStream,
    ) -> Result<Box<dyn Policy>> {
        let k = params.num_arms();
        Ok(match self {
            PolicyKind::ExploreThenCommit => {
                Box::new(ExploreThenCommit::from_params(params, horizon, rng)?)
            }
            PolicyKind::ActionElimination => Box::new(ActionElimination::new(k, horizon, rng)?),
            PolicyKind::Lcb => Box::new(LowerConfidenceBound::new(k, rng)),
            PolicyKind::Thompson => Box::new(ThompsonSampling::new(k, rng)),
        })
    }
}

impl fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PolicyKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PolicyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                Error::config(format!(
                    "unknown policy `{s}` (expected one of: ec, ae, lcb, ts)"
                ))
            })
    }
}

/// Arms sorted ascending by `key`, ties by ascending arm index.
pub(crate) fn ascending_by(keys: &[f64]) -> Ordering {
    let mut slots: Vec<usize> = (0..keys.len()).collect();
    slots.sort_by(|&a, &b| keys[a].total_cmp(&keys[b]));
    Ordering::from_permutation(slots)
}

pub(crate) fn random_ordering(k: usize, rng: &mut RngStream) -> Ordering {
    let mut slots: Vec<usize> = (0..k).collect();
    rng.shuffle(&mut slots);
    Ordering::from_permutation(slots)
}
