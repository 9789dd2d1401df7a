//! Ground-truth computations for tests and acceptance runs.
//!
//! These deliberately avoid the closed-form reward and the sort-based
//! optimum so they can check them.

use crate::env;
use crate::error::{Error, Result};
use crate::model::{ArmParams, Ordering};
use crate::rng::RngStream;

/// Arm-count cap for `K!` enumeration.
pub const PERMUTATION_LIMIT: usize = 8;
/// Arm-count cap for `2^K` trigger-vector enumeration.
pub const OUTCOME_LIMIT: usize = 20;

/// Reward by summing over all `2^K` trigger vectors: each contributes its
/// probability times `1 − p` of the first triggering arm in `ordering`.
pub fn exhaustive_reward(params: &ArmParams, ordering: &Ordering) -> Result<f64> {
    let k = params.num_arms();
    if k > OUTCOME_LIMIT {
        return Err(Error::UnsupportedSize {
            k,
            limit: OUTCOME_LIMIT,
        });
    }
    if ordering.len() != k {
        return Err(Error::invalid(format!(
            "ordering has {} slots but the instance has {k} arms",
            ordering.len()
        )));
    }
    let (mu, p) = (params.mu(), params.p());
    let mut total = 0.0;
    for mask in 1u32..(1u32 << k) {
        let prob: f64 = (0..k)
            .map(|i| {
                if mask >> i & 1 == 1 {
                    mu[i]
                } else {
                    1.0 - mu[i]
                }
            })
            .product();
        if prob == 0.0 {
            continue;
        }
        let first = ordering
            .slots()
            .iter()
            .find(|&&arm| mask >> arm & 1 == 1)
            .expect("mask is nonzero");
        total += prob * (1.0 - p[*first]);
    }
    Ok(total)
}

/// Argmax of [`exhaustive_reward`] over all `K!` orderings; ties resolve to
/// the lexicographically smallest ordering.
pub fn brute_force_optimal(params: &ArmParams) -> Result<Ordering> {
    let k = params.num_arms();
    if k > PERMUTATION_LIMIT {
        return Err(Error::UnsupportedSize {
            k,
            limit: PERMUTATION_LIMIT,
        });
    }
    let mut best: Option<(f64, Ordering)> = None;
    let mut prefix = Vec::with_capacity(k);
    let mut used = vec![false; k];
    search(params, &mut prefix, &mut used, &mut best)?;
    Ok(best.expect("at least one ordering").1)
}

// Depth-first in lexicographic order, so a strict `>` keeps the smallest tie.
fn search(
    params: &ArmParams,
    prefix: &mut Vec<usize>,
    used: &mut [bool],
    best: &mut Option<(f64, Ordering)>,
) -> Result<()> {
    if prefix.len() == used.len() {
        let ordering = Ordering::new(prefix.clone())?;
        let reward = exhaustive_reward(params, &ordering)?;
        if best.as_ref().is_none_or(|(b, _)| reward > *b) {
            *best = Some((reward, ordering));
        }
        return Ok(());
    }
    for arm in 0..used.len() {
        if !used[arm] {
            used[arm] = true;
            prefix.push(arm);
            search(params, prefix, used, best)?;
            prefix.pop();
            used[arm] = false;
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    /// Sample standard deviation over `sqrt(n)`.
    pub stderr: f64,
    pub n: u64,
}

/// Mean realized reward of `n` simulated slots under a fixed ordering.
pub fn monte_carlo_reward(
    params: &ArmParams,
    ordering: &Ordering,
    n: u64,
    rng: &mut RngStream,
) -> Result<McEstimate> {
    if n < 2 {
        return Err(Error::invalid("Monte-Carlo estimate needs n >= 2"));
    }
    if ordering.len() != params.num_arms() {
        return Err(Error::invalid("ordering does not match the instance"));
    }
    let hits: u64 = (0..n)
        .map(|_| u64::from(env::step(params, ordering, rng).reward()))
        .sum();
    // Rewards are 0/1, so the sample variance follows from the hit count.
    let nf = n as f64;
    let mean = hits as f64 / nf;
    let variance =
        (hits as f64 * (1.0 - mean) * (1.0 - mean) + (nf - hits as f64) * mean * mean) / (nf - 1.0);
    Ok(McEstimate {
        mean,
        stderr: (variance / nf).sqrt(),
        n,
    })
}
