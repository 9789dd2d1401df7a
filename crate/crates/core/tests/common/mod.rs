#![allow(dead_code)]

use cascade_core::rng::RngStream;
use cascade_core::{ArmParams, Ordering};

pub const BENCH_MU: [f64; 5] = [0.85, 0.9, 0.95, 0.92, 0.87];
pub const BENCH_P: [f64; 5] = [0.1, 0.25, 0.4, 0.55, 0.7];

pub fn benchmark() -> ArmParams {
    ArmParams::new(BENCH_MU.to_vec(), BENCH_P.to_vec()).unwrap()
}

/// Random instance with `k` arms and pairwise distinct error probabilities.
pub fn random_instance(k: usize, rng: &mut RngStream) -> ArmParams {
    loop {
        let mu: Vec<f64> = (0..k).map(|_| rng.uniform()).collect();
        let p: Vec<f64> = (0..k).map(|_| rng.uniform()).collect();
        let distinct = (0..k).all(|i| (0..i).all(|j| p[i] != p[j]));
        if distinct {
            return ArmParams::new(mu, p).unwrap();
        }
    }
}

pub fn random_ordering(k: usize, rng: &mut RngStream) -> Ordering {
    let mut slots: Vec<usize> = (0..k).collect();
    rng.shuffle(&mut slots);
    Ordering::new(slots).unwrap()
}

pub fn benchmark_config_path() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs/benchmark.json")
}
