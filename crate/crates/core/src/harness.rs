//! Regret experiments.
//!
//! Regret is charged analytically: slot `t` costs `r(L*) − r(L_t)` for the
//! proposed ordering `L_t`, computed from the true parameters. Realized
//! rewards only drive what the policy observes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::env;
use crate::error::{Error, Result};
use crate::model::{optimal_ordering, reward_unchecked, ArmParams, Ordering};
use crate::policies::{Policy, PolicyKind};
use crate::rng::{derive_seeds, RngStream, RunSeeds};

/// Growth ratio of the geometric checkpoint grid.
pub const LOG_GRID_RATIO: f64 = 1.2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum CheckpointSchedule {
    /// Every `step` slots, plus `T`.
    Linear(u64),
    /// `1, ⌈1.2⌉, ...` growing by [`LOG_GRID_RATIO`], plus `T`.
    #[default]
    Log,
}

impl CheckpointSchedule {
    /// Checkpoint slots for a run of length `horizon`; strictly increasing
    /// and ending at `horizon`.
    pub fn slots(self, horizon: u64) -> Vec<u64> {
        let mut out = Vec::new();
        match self {
            CheckpointSchedule::Linear(step) => {
                out.extend((1..).map(|i| i * step).take_while(|&t| t < horizon));
            }
            CheckpointSchedule::Log => {
                let mut t = 1u64;
                while t < horizon {
                    out.push(t);
                    t = (t + 1).max((t as f64 * LOG_GRID_RATIO).ceil() as u64);
                }
            }
        }
        out.push(horizon);
        out
    }
}

impl fmt::Display for CheckpointSchedule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckpointSchedule::Linear(step) => write!(f, "linear:{step}"),
            CheckpointSchedule::Log => f.write_str("log"),
        }
    }
}

impl FromStr for CheckpointSchedule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "log" {
            return Ok(CheckpointSchedule::Log);
        }
        s.strip_prefix("linear:")
            .and_then(|step| step.parse::<u64>().ok())
            .filter(|&step| step > 0)
            .map(CheckpointSchedule::Linear)
            .ok_or_else(|| {
                Error::config(format!(
                    "checkpoint_schedule `{s}` must be \"log\" or \"linear:<positive step>\""
                ))
            })
    }
}

impl TryFrom<String> for CheckpointSchedule {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<CheckpointSchedule> for String {
    fn from(s: CheckpointSchedule) -> Self {
        s.to_string()
    }
}

/// Per-slot regret against a precomputed optimum. Produces exactly the
/// values of [`crate::model::per_slot_regret`].
#[derive(Debug, Clone)]
pub struct RegretMeter<'a> {
    params: &'a ArmParams,
    best: f64,
}

impl<'a> RegretMeter<'a> {
    pub fn new(params: &'a ArmParams) -> Self {
        let best = reward_unchecked(params, optimal_ordering(params).slots());
        RegretMeter { params, best }
    }

    pub fn regret(&self, ordering: &Ordering) -> f64 {
        (self.best - reward_unchecked(self.params, ordering.slots())).max(0.0)
    }
}

/// Cumulative expected regret of one run at its checkpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct RegretTrajectory {
    pub checkpoints: Vec<(u64, f64)>,
}

impl RegretTrajectory {
    pub fn final_regret(&self) -> f64 {
        self.checkpoints.last().map_or(0.0, |&(_, r)| r)
    }

    /// Cumulative regret recorded at slot `t`, if `t` is a checkpoint.
    pub fn at(&self, t: u64) -> Option<f64> {
        self.checkpoints
            .binary_search_by_key(&t, |&(c, _)| c)
            .ok()
            .map(|i| self.checkpoints[i].1)
    }
}

/// Drives `policy` for `horizon` slots against an environment stream.
///
/// `checkpoints` must be strictly increasing. When `record` is given, every
/// proposed ordering is appended to it.
pub fn run_policy_episode<P: Policy + ?Sized>(
    policy: &mut P,
    params: &ArmParams,
    horizon: u64,
    env_rng: &mut RngStream,
    checkpoints: &[u64],
    mut record: Option<&mut Vec<Ordering>>,
) -> Result<RegretTrajectory> {
    let k = params.num_arms();
    let meter = RegretMeter::new(params);
    let mut pending = checkpoints
        .iter()
        .copied()
        .filter(|&c| c <= horizon)
        .peekable();
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut total = 0.0;
    for t in 1..=horizon {
        let ordering = policy.propose(t);
        if ordering.len() != k {
            return Err(Error::invalid(format!(
                "policy proposed {} slots at t = {t} for {k} arms",
                ordering.len()
            )));
        }
        total += meter.regret(&ordering);
        let outcome = env::step(params, &ordering, env_rng);
        policy.observe(t, env::censor(&outcome));
        if pending.next_if_eq(&t).is_some() {
            out.push((t, total));
        }
        if let Some(rec) = record.as_deref_mut() {
            rec.push(ordering);
        }
    }
    Ok(RegretTrajectory { checkpoints: out })
}

/// One run of a registered policy.
pub fn run_episode(
    kind: PolicyKind,
    params: &ArmParams,
    horizon: u64,
    seeds: RunSeeds,
    schedule: CheckpointSchedule,
) -> Result<RegretTrajectory> {
    if horizon == 0 {
        return Err(Error::config("horizon must be at least 1"));
    }
    let mut policy = kind.build(params, horizon, RngStream::from_seed(seeds.policy))?;
    let mut env_rng = RngStream::from_seed(seeds.env);
    run_policy_episode(
        &mut policy,
        params,
        horizon,
        &mut env_rng,
        &schedule.slots(horizon),
        None,
    )
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub params: ArmParams,
    pub horizons: Vec<u64>,
    pub runs: u32,
    pub master_seed: u64,
    pub policies: Vec<PolicyKind>,
    #[serde(default)]
    pub checkpoint_schedule: CheckpointSchedule,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.runs < 1 {
            return Err(Error::config("runs must be at least 1"));
        }
        if self.horizons.is_empty() {
            return Err(Error::config("horizons must not be empty"));
        }
        if let Some(i) = self.horizons.iter().position(|&h| h < 1) {
            return Err(Error::config(format!("horizons[{i}] must be at least 1")));
        }
        if self.policies.is_empty() {
            return Err(Error::config("policies must not be empty"));
        }
        for (i, p) in self.policies.iter().enumerate() {
            if self.policies[..i].contains(p) {
                return Err(Error::config(format!("policies[{i}]: `{p}` listed twice")));
            }
        }
        for (i, h) in self.horizons.iter().enumerate() {
            if self.horizons[..i].contains(h) {
                return Err(Error::config(format!("horizons[{i}]: {h} listed twice")));
            }
        }
        Ok(())
    }
}

impl Serialize for PolicyKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for PolicyKind {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let name = String::deserialize(d)?;
        name.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    /// Runs spread over the rayon thread pool.
    #[default]
    Parallel,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub t: u64,
    pub mean: f64,
    pub stderr: f64,
}

/// Mean ± standard error of cumulative regret across runs, per checkpoint.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateCurve {
    pub points: Vec<CurvePoint>,
    pub runs: u32,
    /// Set when `runs == 1`; the standard error is then reported as 0.
    pub degenerate: bool,
}

impl AggregateCurve {
    /// Aggregates trajectories that share one checkpoint grid, in the order
    /// given.
    pub fn from_runs(runs: &[RegretTrajectory]) -> Result<Self> {
        let first = runs
            .first()
            .ok_or_else(|| Error::invalid("cannot aggregate zero runs"))?;
        let n = runs.len();
        let mut points = Vec::with_capacity(first.checkpoints.len());
        for (c, &(t, _)) in first.checkpoints.iter().enumerate() {
            let mut sum = 0.0;
            for run in runs {
                match run.checkpoints.get(c) {
                    Some(&(rt, r)) if rt == t => sum += r,
                    _ => return Err(Error::invalid("runs have different checkpoint grids")),
                }
            }
            let mean = sum / n as f64;
            let stderr = if n > 1 {
                let ss: f64 = runs
                    .iter()
                    .map(|r| (r.checkpoints[c].1 - mean).powi(2))
                    .sum();
                (ss / (n - 1) as f64).sqrt() / (n as f64).sqrt()
            } else {
                0.0
            };
            points.push(CurvePoint { t, mean, stderr });
        }
        Ok(AggregateCurve {
            points,
            runs: n as u32,
            degenerate: n == 1,
        })
    }

    pub fn final_point(&self) -> CurvePoint {
        *self.points.last().expect("curves end at T")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellKey {
    pub policy: PolicyKind,
    pub horizon: u64,
}

pub type ExperimentResults = BTreeMap<CellKey, AggregateCurve>;

/// Index of a policy in the registry; feeds seed derivation so a policy's
/// streams do not depend on which other policies are configured.
fn registry_index(kind: PolicyKind) -> u64 {
    PolicyKind::ALL.iter().position(|&k| k == kind).unwrap() as u64
}

/// Runs every (policy, horizon) cell `config.runs` times.
///
/// Run `r` of horizon `h` uses `derive_seeds(master_seed, policy, h, r)`.
/// Output is identical for either [`Execution`] mode.
pub fn run_experiment(
    config: &ExperimentConfig,
    execution: Execution,
) -> Result<ExperimentResults> {
    config.validate()?;
    let jobs: Vec<(CellKey, u64, u32)> = config
        .policies
        .iter()
        .flat_map(|&policy| {
            config
                .horizons
                .iter()
                .enumerate()
                .flat_map(move |(h_idx, &horizon)| {
                    (0..config.runs)
                        .map(move |run| (CellKey { policy, horizon }, h_idx as u64, run))
                })
        })
        .collect();
    let job = |&(key, h_idx, run): &(CellKey, u64, u32)| {
        let seeds = derive_seeds(
            config.master_seed,
            registry_index(key.policy),
            h_idx,
            run as u64,
        );
        run_episode(
            key.policy,
            &config.params,
            key.horizon,
            seeds,
            config.checkpoint_schedule,
        )
        .map_err(|e| Error::Cell {
            policy: key.policy.name().to_string(),
            horizon: key.horizon,
            source: Box::new(e),
        })
    };
    let trajectories: Vec<RegretTrajectory> = match execution {
        Execution::Serial => jobs.iter().map(job).collect::<Result<_>>()?,
        Execution::Parallel => jobs.par_iter().map(job).collect::<Result<_>>()?,
    };

    let mut results = ExperimentResults::new();
    let runs = config.runs as usize;
    for (cell_jobs, cell_runs) in jobs.chunks(runs).zip(trajectories.chunks(runs)) {
        results.insert(cell_jobs[0].0, AggregateCurve::from_runs(cell_runs)?);
    }
    Ok(results)
}
