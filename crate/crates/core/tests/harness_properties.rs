mod common;

use std::fs;

use cascade_core::harness::{
    run_episode, run_experiment, run_policy_episode, CheckpointSchedule, Execution,
    ExperimentConfig,
};
use cascade_core::model::per_slot_regret;
use cascade_core::policies::PolicyKind;
use cascade_core::report::{cumulative_csv_name, emit, format_decimal, HORIZON_CSV};
use cascade_core::rng::{derive_seeds, RngStream};
use proptest::prelude::*;

fn small_config(runs: u32) -> ExperimentConfig {
    ExperimentConfig {
        params: common::benchmark(),
        horizons: vec![300, 1_000],
        runs,
        master_seed: 99,
        policies: PolicyKind::ALL.to_vec(),
        checkpoint_schedule: CheckpointSchedule::Log,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn replaying_recorded_orderings_reproduces_the_trajectory(
        seed in any::<u64>(),
        which in 0usize..4,
        k in 2usize..6,
    ) {
        let mut setup = RngStream::from_seed(seed);
        let params = common::random_instance(k, &mut setup);
        let horizon = 800;
        let kind = PolicyKind::ALL[which];
        let seeds = derive_seeds(seed, which as u64, 0, 0);
        let mut policy = kind.build(&params, horizon, RngStream::from_seed(seeds.policy)).unwrap();
        let checkpoints = CheckpointSchedule::Log.slots(horizon);
        let mut recorded = Vec::new();
        let traj = run_policy_episode(
            &mut policy,
            &params,
            horizon,
            &mut RngStream::from_seed(seeds.env),
            &checkpoints,
            Some(&mut recorded),
        )
        .unwrap();
        prop_assert_eq!(recorded.len() as u64, horizon);

        let mut total = 0.0;
        let mut replay = Vec::new();
        for (i, o) in recorded.iter().enumerate() {
            total += per_slot_regret(&params, o).unwrap();
            let t = i as u64 + 1;
            if checkpoints.contains(&t) {
                replay.push((t, total));
            }
        }
        prop_assert_eq!(&traj.checkpoints, &replay);

        // run_episode consumes the same streams.
        let again = run_episode(kind, &params, horizon, seeds, CheckpointSchedule::Log).unwrap();
        prop_assert_eq!(again, traj);
    }

    #[test]
    fn trajectories_are_nonnegative_and_nondecreasing(seed in any::<u64>(), which in 0usize..4) {
        let params = common::benchmark();
        let seeds = derive_seeds(seed, which as u64, 0, 0);
        let traj = run_episode(PolicyKind::ALL[which], &params, 2_000, seeds, CheckpointSchedule::Linear(100)).unwrap();
        prop_assert_eq!(traj.checkpoints.len(), 20);
        prop_assert!(traj.checkpoints[0].1 >= 0.0);
        prop_assert!(traj.checkpoints.windows(2).all(|w| w[0].1 <= w[1].1));
    }
}

#[test]
fn same_seed_gives_identical_results_and_seed_matters() {
    let config = small_config(3);
    let a = run_experiment(&config, Execution::Serial).unwrap();
    let b = run_experiment(&config, Execution::Parallel).unwrap();
    assert_eq!(a, b);
    let mut other = config.clone();
    other.master_seed += 1;
    assert_ne!(a, run_experiment(&other, Execution::Serial).unwrap());
}

#[test]
fn a_policy_cell_does_not_depend_on_the_other_policies() {
    let full = run_experiment(&small_config(2), Execution::Serial).unwrap();
    let mut only_ts = small_config(2);
    only_ts.policies = vec![PolicyKind::Thompson];
    let alone = run_experiment(&only_ts, Execution::Serial).unwrap();
    for (key, curve) in &alone {
        assert_eq!(full.get(key), Some(curve));
    }
}

#[test]
fn single_run_cells_are_degenerate() {
    let results = run_experiment(&small_config(1), Execution::Serial).unwrap();
    for curve in results.values() {
        assert!(curve.degenerate);
        assert!(curve.points.iter().all(|p| p.stderr == 0.0));
    }
}

#[test]
fn unknown_policy_is_a_config_error() {
    let err = "ucb".parse::<PolicyKind>().unwrap_err();
    assert!(err.is_config_error());
    let err = run_episode(
        PolicyKind::Lcb,
        &common::benchmark(),
        0,
        derive_seeds(0, 0, 0, 0),
        CheckpointSchedule::Log,
    )
    .unwrap_err();
    assert!(err.is_config_error());
}

#[test]
fn csv_round_trip() {
    let results = run_experiment(&small_config(4), Execution::Serial).unwrap();
    let dir = tempfile::tempdir().unwrap();
    emit(&results, dir.path(), false).unwrap();

    let close = |text: &str, value: f64| {
        let parsed: f64 = text.parse().unwrap();
        assert_eq!(text, format_decimal(value));
        assert!(
            (parsed - value).abs() <= 1e-9 * value.abs().max(1e-300),
            "{text} vs {value}"
        );
    };

    let horizon_csv = fs::read_to_string(dir.path().join(HORIZON_CSV)).unwrap();
    let mut rows = 0;
    for line in horizon_csv.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        let key = cascade_core::harness::CellKey {
            policy: f[0].parse().unwrap(),
            horizon: f[1].parse().unwrap(),
        };
        let fin = results[&key].final_point();
        close(f[2], fin.mean);
        close(f[3], fin.stderr);
        assert_eq!(f[4], "4");
        rows += 1;
    }
    assert_eq!(rows, results.len());

    for horizon in [300, 1_000] {
        let text = fs::read_to_string(dir.path().join(cumulative_csv_name(horizon))).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("policy,t,mean_cum_regret,stderr,runs"));
        let mut count = 0;
        for line in lines {
            let f: Vec<&str> = line.split(',').collect();
            let key = cascade_core::harness::CellKey {
                policy: f[0].parse().unwrap(),
                horizon,
            };
            let t: u64 = f[1].parse().unwrap();
            let pt = results[&key].points.iter().find(|p| p.t == t).unwrap();
            close(f[2], pt.mean);
            close(f[3], pt.stderr);
            count += 1;
        }
        let expected: usize = results
            .iter()
            .filter(|(k, _)| k.horizon == horizon)
            .map(|(_, c)| c.points.len())
            .sum();
        assert_eq!(count, expected);
    }
}

#[test]
fn lcb_regret_grows_slowly_late_in_the_run() {
    // Mean cumulative regret at T = 5·10⁴ vs at T/10, same 20 runs.
    let params = common::benchmark();
    let horizon = 50_000;
    let schedule = CheckpointSchedule::Linear(5_000);
    let (mut early, mut late) = (0.0, 0.0);
    for run in 0..20 {
        let seeds = derive_seeds(20251017, 2, 0, run);
        let traj = run_episode(PolicyKind::Lcb, &params, horizon, seeds, schedule).unwrap();
        early += traj.at(horizon / 10).unwrap();
        late += traj.final_regret();
    }
    let growth = late / early;
    println!("lcb R(T)/R(T/10) = {growth:.3}");
    assert!(growth < 1.5, "mean R(T) is {growth:.3}x mean R(T/10)");
}
