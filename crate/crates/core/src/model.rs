//! Cascade reward model.
//!
//! Arms are identified by 0-based indices. An [`Ordering`] places arm
//! `slots[j]` at cascade position `j`; a slot's reward is the feedback of the
//! first arm (in ordering position) whose trigger fires.
//!
//! Everything here is a pure function of immutable inputs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest arm count for which [`gap_stats`] will enumerate all `K!` orderings.
pub const GAP_ENUMERATION_LIMIT: usize = 8;

/// A problem instance: per-arm trigger probabilities `mu` and error
/// probabilities `p`.
///
/// No ordering of `p` is assumed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawArmParams", into = "RawArmParams")]
pub struct ArmParams {
    mu: Vec<f64>,
    p: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawArmParams {
    mu: Vec<f64>,
    p: Vec<f64>,
}

impl TryFrom<RawArmParams> for ArmParams {
    type Error = Error;

    fn try_from(raw: RawArmParams) -> Result<Self> {
        ArmParams::new(raw.mu, raw.p)
    }
}

impl From<ArmParams> for RawArmParams {
    fn from(params: ArmParams) -> Self {
        RawArmParams {
            mu: params.mu,
            p: params.p,
        }
    }
}

impl ArmParams {
    pub fn new(mu: Vec<f64>, p: Vec<f64>) -> Result<Self> {
        if mu.is_empty() {
            return Err(Error::invalid("mu must contain at least one arm"));
        }
        if mu.len() != p.len() {
            return Err(Error::invalid(format!(
                "mu has {} entries but p has {}",
                mu.len(),
                p.len()
            )));
        }
        for (name, values) in [("mu", &mu), ("p", &p)] {
            for (i, &v) in values.iter().enumerate() {
                if !(0.0..=1.0).contains(&v) {
                    return Err(Error::invalid(format!("{name}[{i}] ∉ [0,1] (got {v})")));
                }
            }
        }
        Ok(ArmParams { mu, p })
    }

    pub fn num_arms(&self) -> usize {
        self.mu.len()
    }

    pub fn mu(&self) -> &[f64] {
        &self.mu
    }

    pub fn p(&self) -> &[f64] {
        &self.p
    }
}

/// A permutation of arm indices; position `j` of the cascade holds `slots[j]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Ordering {
    slots: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Ordering {
    type Error = Error;

    fn try_from(slots: Vec<usize>) -> Result<Self> {
        Ordering::new(slots)
    }
}

impl From<Ordering> for Vec<usize> {
    fn from(ordering: Ordering) -> Self {
        ordering.slots
    }
}

impl Ordering {
    /// Validates that `slots` is a bijection on `0..slots.len()`.
    pub fn new(slots: Vec<usize>) -> Result<Self> {
        let k = slots.len();
        let mut seen = vec![false; k];
        for &arm in &slots {
            if arm >= k {
                return Err(Error::invalid(format!(
                    "ordering refers to arm {arm} but has only {k} slots"
                )));
            }
            if std::mem::replace(&mut seen[arm], true) {
                return Err(Error::invalid(format!(
                    "arm {arm} appears twice in ordering"
                )));
            }
        }
        Ok(Ordering { slots })
    }

    pub(crate) fn from_permutation(slots: Vec<usize>) -> Self {
        debug_assert!(Ordering::new(slots.clone()).is_ok());
        Ordering { slots }
    }

    pub fn identity(k: usize) -> Self {
        Ordering {
            slots: (0..k).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.slots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slots.is_empty()
    }

    pub fn slots(&self) -> &[usize] {
        &self.slots
    }

    /// The arm at cascade position `position`.
    pub fn arm_at(&self, position: usize) -> usize {
        self.slots[position]
    }

    /// Cascade position of `arm`.
    pub fn position_of(&self, arm: usize) -> Option<usize> {
        self.slots.iter().position(|&a| a == arm)
    }

    /// Ordering with the arms at positions `position` and `position + 1` exchanged.
    pub fn swapped(&self, position: usize) -> Result<Self> {
        if position + 1 >= self.slots.len() {
            return Err(Error::invalid(format!(
                "swap position {position} out of range for {} slots",
                self.slots.len()
            )));
        }
        let mut slots = self.slots.clone();
        slots.swap(position, position + 1);
        Ok(Ordering { slots })
    }

    /// `(l_1, ..., l_K)` becomes `(l_2, ..., l_K, l_1)`.
    pub fn rotated(&self) -> Self {
        let mut slots = self.slots.clone();
        if !slots.is_empty() {
            slots.rotate_left(1);
        }
        Ordering { slots }
    }

    fn check_against(&self, params: &ArmParams) -> Result<()> {
        if self.slots.len() != params.num_arms() {
            return Err(Error::invalid(format!(
                "ordering has {} slots but the instance has {} arms",
                self.slots.len(),
                params.num_arms()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (j, arm) in self.slots.iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{arm}")?;
        }
        f.write_str(")")
    }
}

/// Expected slot reward `Σ_j (1 − p_{l_j}) μ_{l_j} Π_{m<j} (1 − μ_{l_m})`.
pub fn expected_reward(params: &ArmParams, ordering: &Ordering) -> Result<f64> {
    ordering.check_against(params)?;
    Ok(reward_unchecked(params, ordering.slots()))
}

pub(crate) fn reward_unchecked(params: &ArmParams, slots: &[usize]) -> f64 {
    let mut reward = 0.0;
    let mut none_fired = 1.0;
    for &arm in slots {
        let mu = params.mu[arm];
        reward += none_fired * mu * (1.0 - params.p[arm]);
        none_fired *= 1.0 - mu;
    }
    reward
}

/// Arms sorted by ascending error probability, ties by ascending index.
pub fn optimal_ordering(params: &ArmParams) -> Ordering {
    let mut slots: Vec<usize> = (0..params.num_arms()).collect();
    // Stable sort keeps index order among equal p.
    slots.sort_by(|&a, &b| params.p[a].total_cmp(&params.p[b]));
    Ordering { slots }
}

/// `r(L) − r(swap(L, position))` in closed form, where the swap exchanges the
/// arms at positions `position` and `position + 1`.
///
/// Positive iff the earlier arm has the strictly smaller error probability
/// (and both trigger probabilities are nonzero).
pub fn adjacent_swap_delta(
    params: &ArmParams,
    ordering: &Ordering,
    position: usize,
) -> Result<f64> {
    ordering.check_against(params)?;
    if position + 1 >= ordering.len() {
        return Err(Error::invalid(format!(
            "swap position {position} out of range for {} arms",
            ordering.len()
        )));
    }
    let prefix: f64 = ordering.slots[..position]
        .iter()
        .map(|&arm| 1.0 - params.mu[arm])
        .product();
    let first = ordering.slots[position];
    let second = ordering.slots[position + 1];
    Ok(prefix * params.mu[first] * params.mu[second] * (params.p[second] - params.p[first]))
}

/// `r(L*) − r(L)`; zero exactly when `ordering` is optimal.
///
/// Rounding can make the raw difference a hair negative for orderings that
/// differ from `L*` only among equal-`p` arms, so the result is clamped at 0.
pub fn suboptimality_gap(params: &ArmParams, ordering: &Ordering) -> Result<f64> {
    let reward = expected_reward(params, ordering)?;
    let best = reward_unchecked(params, optimal_ordering(params).slots());
    Ok((best - reward).max(0.0))
}

/// Per-slot expected regret of playing `ordering`. Same contract as
/// [`suboptimality_gap`].
pub fn per_slot_regret(params: &ArmParams, ordering: &Ordering) -> Result<f64> {
    suboptimality_gap(params, ordering)
}

/// Enumerated gap statistics of an instance.
#[derive(Debug, Clone, PartialEq)]
pub struct GapStats {
    /// For each arm, the largest gap among orderings that start with it.
    pub per_arm: Vec<f64>,
    pub max: f64,
    /// Smallest strictly positive gap over all orderings.
    pub min: f64,
    /// Set when no ordering has a positive gap, in which case `min` is 0.
    pub degenerate: bool,
}

pub fn gap_stats(params: &ArmParams) -> Result<GapStats> {
    gap_stats_with_limit(params, GAP_ENUMERATION_LIMIT)
}

pub fn gap_stats_with_limit(params: &ArmParams, limit: usize) -> Result<GapStats> {
    let k = params.num_arms();
    if k > limit {
        return Err(Error::UnsupportedSize { k, limit });
    }
    let best = reward_unchecked(params, optimal_ordering(params).slots());
    let mut per_arm = vec![0.0f64; k];
    let mut min = f64::INFINITY;
    for_each_permutation(k, |slots| {
        let gap = (best - reward_unchecked(params, slots)).max(0.0);
        let first = slots[0];
        per_arm[first] = per_arm[first].max(gap);
        if gap > 0.0 {
            min = min.min(gap);
        }
    });
    let max = per_arm.iter().copied().fold(0.0, f64::max);
    let degenerate = !min.is_finite();
    Ok(GapStats {
        per_arm,
        max,
        min: if degenerate { 0.0 } else { min },
        degenerate,
    })
}

/// Error-probability gaps between neighbours once arms are sorted by `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct NeighborGaps {
    /// Arms in ascending `p` order (the canonical indexing).
    pub sorted_arms: Vec<usize>,
    /// `delta[r] = p(sorted_arms[r + 1]) − p(sorted_arms[r])`; `K − 1` entries.
    pub delta: Vec<f64>,
    /// Per sorted rank, the smaller of the gaps to its two neighbours;
    /// one-sided at both ends. `K` entries, or empty when `K = 1`.
    pub delta_prime: Vec<f64>,
}

pub fn neighbor_gaps(params: &ArmParams) -> NeighborGaps {
    let sorted_arms = optimal_ordering(params).slots;
    let delta: Vec<f64> = sorted_arms
        .windows(2)
        .map(|w| params.p[w[1]] - params.p[w[0]])
        .collect();
    let delta_prime = if delta.is_empty() {
        Vec::new()
    } else {
        (0..sorted_arms.len())
            .map(|r| {
                let below = r.checked_sub(1).map(|i| delta[i]);
                let above = delta.get(r).copied();
                match (below, above) {
                    (Some(b), Some(a)) => b.min(a),
                    (Some(g), None) | (None, Some(g)) => g,
                    (None, None) => unreachable!("K >= 2 here"),
                }
            })
            .collect()
    };
    NeighborGaps {
        sorted_arms,
        delta,
        delta_prime,
    }
}

/// Calls `f` on every permutation of `0..k`, in lexicographic order.
pub(crate) fn for_each_permutation(k: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        f(&perm);
        // Standard next-permutation step.
        let Some(i) = (1..k).rev().find(|&i| perm[i - 1] < perm[i]) else {
            return;
        };
        let j = (i..k).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}
